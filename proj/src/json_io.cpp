#include "vallab/json_io.hpp"

namespace vallab {

json group_to_json(const GroupSpec& g) {
    switch (g.kind()) {
        case GroupSpec::Kind::PPrimeDenom:
            return json{{"kind", "p-prime"}, {"p", g.p()}};
        case GroupSpec::Kind::FinGen: {
            json gens = json::array();
            for (const auto& e : g.gens()) gens.push_back(exp_str(e));
            return json{{"kind", "fingen"}, {"gens", gens}};
        }
        case GroupSpec::Kind::Extended: {
            json adj = json::array();
            for (const auto& e : g.gens()) adj.push_back(exp_str(e));
            return json{{"kind", "extended"}, {"base", group_to_json(g.base())}, {"adjoined", adj}};
        }
    }
    throw Error("unreachable group kind");
}

GroupSpec group_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "p-prime") return GroupSpec::p_prime_denom(j.at("p").get<unsigned long>());
    if (kind == "fingen") {
        std::vector<Exp> gens;
        for (const auto& e : j.at("gens")) gens.push_back(parse_exp(e.get<std::string>()));
        return GroupSpec::fin_gen(std::move(gens));
    }
    if (kind == "extended") {
        std::vector<Exp> adj;
        for (const auto& e : j.at("adjoined")) adj.push_back(parse_exp(e.get<std::string>()));
        return GroupSpec::extended(group_from_json(j.at("base")), std::move(adj));
    }
    throw Error("unknown group kind \"" + kind + "\"");
}

json series_to_json(const Series& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(json::array({exp_str(e), std::to_string(c.encoding())}));
    return json{{"terms", terms}, {"prec", s.prec().str()}};
}

Series series_from_json(const json& j, const FieldCtx& ctx, GroupSpec group) {
    std::string prec = j.at("prec").get<std::string>();
    ExtExp pe = (prec == "inf") ? ExtExp::infinity() : ExtExp(parse_exp(prec));
    Series s = Series::truncated_zero(ctx, std::move(group), pe);
    for (const auto& t : j.at("terms")) {
        Exp e = parse_exp(t.at(0).get<std::string>());
        Coeff c = Coeff::from_encoding(ctx, std::stoul(t.at(1).get<std::string>()));
        s.add_term(e, c);
    }
    return s;
}

json cert_to_json(const StabilizationCert& c) {
    json trace = json::array();
    for (const auto& [l, v] : c.trace) trace.push_back(json::array({l, v.str()}));
    json j{{"l0", c.l0}, {"e", c.e}, {"value", exp_str(c.value)}, {"trace", trace}};
    if (c.e_varies) j["e_varies"] = true;
    if (c.non_paper_regime) j["non_paper_regime"] = true;
    return j;
}

json qf_to_json(const QuasiFinite& y) {
    json hs = json::array();
    for (const auto& h : y.h) {
        json monos = json::array();
        for (const auto& m : h.monomials)
            monos.push_back(json::array(
                {exp_str(m.t_exp), m.w_pow, std::to_string(m.coeff.encoding())}));
        hs.push_back(monos);
    }
    json coeffs = json::object();
    for (const auto& [alpha, c] : y.g.coeffs) {
        std::string key;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (i) key += ",";
            key += std::to_string(alpha[i]);
        }
        coeffs[key] = std::to_string(c.encoding());
    }
    return json{{"gamma", exp_str(y.gamma)},
                {"h", hs},
                {"g", json{{"degree_cap", y.g.degree_cap}, {"exact", y.g.exact}, {"coeffs", coeffs}}},
                {"params", json{{"p", y.params.p},
                                {"q", y.params.q},
                                {"start", y.params.start},
                                {"depth", y.params.depth}}}};
}

QuasiFinite qf_from_json(const json& j, const FieldCtx& ctx) {
    QuasiFinite y;
    y.gamma = parse_exp(j.at("gamma").get<std::string>());
    for (const auto& hj : j.at("h")) {
        QFTermExpr h;
        for (const auto& m : hj)
            h.monomials.push_back({parse_exp(m.at(0).get<std::string>()),
                                   m.at(1).get<unsigned long>(),
                                   Coeff::from_encoding(ctx, std::stoul(m.at(2).get<std::string>()))});
        y.h.push_back(std::move(h));
    }
    y.g.degree_cap = j.at("g").at("degree_cap").get<unsigned long>();
    y.g.exact = j.at("g").value("exact", false);
    for (const auto& [key, val] : j.at("g").at("coeffs").items()) {
        std::vector<unsigned long> alpha;
        if (!key.empty()) {
            std::size_t pos = 0;
            while (pos <= key.size()) {
                std::size_t comma = key.find(',', pos);
                if (comma == std::string::npos) comma = key.size();
                alpha.push_back(std::stoul(key.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
        y.g.coeffs[alpha] = Coeff::from_encoding(ctx, std::stoul(val.get<std::string>()));
    }
    if (j.contains("params")) {
        const auto& pj = j.at("params");
        y.params.p = pj.at("p").get<unsigned long>();
        y.params.q = pj.at("q").get<unsigned long>();
        y.params.start = pj.value("start", 0ul);
        y.params.depth = pj.value("depth", 8ul);
    }
    return y;
}

json expansion_to_json(const Expansion& e) {
    json terms = json::array();
    for (const auto& t : e.terms)
        terms.push_back(json::array({exp_str(t.eps), t.j, std::to_string(t.coeff.encoding())}));
    return json{{"terms", terms},
                {"r", e.r},
                {"beta", exp_str(e.beta)},
                {"params", json{{"p", e.params.p}, {"q", e.params.q}}}};
}

Expansion expansion_from_json(const json& j, const FieldCtx& ctx) {
    Expansion e;
    e.r = j.at("r").get<unsigned long>();
    e.beta = parse_exp(j.at("beta").get<std::string>());
    if (j.contains("params")) {
        e.params.p = j.at("params").at("p").get<unsigned long>();
        e.params.q = j.at("params").at("q").get<unsigned long>();
    }
    for (const auto& t : j.at("terms"))
        e.terms.push_back({parse_exp(t.at(0).get<std::string>()), t.at(1).get<unsigned long>(),
                           Coeff::from_encoding(ctx, std::stoul(t.at(2).get<std::string>()))});
    e.validate();
    return e;
}

json report_to_json(const ExtensionReport& r) {
    json j{{"name", r.name},
           {"degree", r.degree},
           {"e", r.e},
           {"f", r.f},
           {"ostrowski_ok", r.ostrowski_ok},
           {"notes", r.notes}};
    if (r.d.get_den() == 1)
        j["d"] = static_cast<long>(r.d.get_num().get_si());
    else
        j["d"] = exp_str(r.d);
    switch (r.immediate) {
        case ExtensionReport::Immediate::Yes:
            j["immediate"] = "yes-at-precision";
            break;
        case ExtensionReport::Immediate::No:
            j["immediate"] = "no";
            break;
        case ExtensionReport::Immediate::Inconclusive:
            j["immediate"] = "inconclusive";
            break;
    }
    if (r.witness) j["witness"] = exp_str(*r.witness);
    return j;
}

}  // namespace vallab
