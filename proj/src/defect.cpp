#include "vallab/defect.hpp"

#include <algorithm>
#include <map>

namespace vallab {

ExtensionSpec ExtensionSpec::radical(unsigned long n, Series radicand, GroupSpec base,
                                     WConstructionParams params) {
    ExtensionSpec s{Kind::Radical, std::move(base), params};
    if (n < 1) throw Error("radical degree must be >= 1");
    s.n = n;
    s.radicand = std::move(radicand);
    return s;
}

ExtensionSpec ExtensionSpec::artin_schreier(Expansion b, GroupSpec base, WConstructionParams params) {
    b.validate();
    ExtensionSpec s{Kind::ArtinSchreier, std::move(base), params};
    s.b = std::move(b);
    return s;
}

ExtensionSpec ExtensionSpec::paper_tower(GroupSpec base, WConstructionParams params) {
    return ExtensionSpec{Kind::PaperTower, std::move(base), params};
}

namespace {

bool is_p_power(const Exp& d, unsigned long p) {
    if (d.get_den() != 1) return false;
    mpz_class n = d.get_num();
    if (n < 1) return false;
    while (n > 1) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
        n /= static_cast<long>(p);
    }
    return true;
}

// group index gained by adjoining one value to the base group
unsigned long value_index(const Exp& v, const GroupSpec& base) {
    return index(GroupSpec::extended(base, {v}), base);
}

}  // namespace

ExtensionReport invariants_report(const ExtensionSpec& spec, const FieldCtx& ctx) {
    spec.params.validate();
    unsigned long p = spec.params.p;
    ExtensionReport rep;
    rep.notes = "precision-limited: e and f read off finitely many generator valuations/residues";

    switch (spec.kind) {
        case ExtensionSpec::Kind::Radical: {
            const Series& rad = *spec.radicand;
            ExtExp vrad = rad.valuation();
            if (vrad.is_inf()) throw Error("radicand must be nonzero");
            rep.name = "K(rad^(1/" + std::to_string(spec.n) + "))|K";
            rep.degree = spec.n;
            Exp gen_val = vrad.finite() / Exp(static_cast<long>(spec.n));

            // materialize the root when we can; its support exposes values of
            // the extension that v(root) alone can miss (cancellation with
            // base elements)
            std::optional<Series> root;
            if (spec.n == 1) {
                root = rad;
            } else if (rad.terms().size() == 1) {
                GroupSpec big =
                    GroupSpec::extended(spec.base_group, {make_exp(1, static_cast<long>(spec.n))});
                root = Series::monomial(ctx, big, gen_val, nth_root(rad.leading_coeff(), spec.n));
            } else if (is_p_power(Exp(static_cast<long>(spec.n)), p)) {
                GroupSpec big =
                    GroupSpec::extended(spec.base_group, {make_exp(1, static_cast<long>(spec.n))});
                Series r = rad.in_group_view(big);
                for (unsigned long k = spec.n; k > 1; k /= p) r = pth_root_series(r);
                root = std::move(r);
            }

            std::vector<Exp> outside;
            if (root) {
                for (const auto& [e, c] : root->terms()) {
                    (void)c;
                    if (!in_group(e, spec.base_group)) outside.push_back(e);
                }
                rep.e = outside.empty()
                            ? 1ul
                            : index(GroupSpec::extended(spec.base_group, outside), spec.base_group);
            } else {
                rep.e = value_index(gen_val, spec.base_group);
                rep.notes += "; root not materialized, e from the generator valuation only";
            }
            rep.f = 1;  // generator residues stay inside the coefficient field k
            rep.d = Exp(static_cast<long>(spec.n)) / Exp(static_cast<long>(rep.e * rep.f));
            if (rep.d.get_den() != 1)
                throw ReduciblePolynomial("degree " + std::to_string(spec.n) +
                                          " is not a multiple of e*f; the defining polynomial "
                                          "cannot be irreducible");
            if (rep.degree == 1) {
                rep.immediate = ExtensionReport::Immediate::Yes;  // trivial extension
            } else if (rep.e == 1 && rep.f == 1) {
                rep.immediate = ExtensionReport::Immediate::Yes;
                rep.notes += "; immediate at tested precision";
            } else {
                rep.immediate = ExtensionReport::Immediate::No;
                rep.witness = outside.empty() ? gen_val : outside.front();
            }
            break;
        }
        case ExtensionSpec::Kind::PaperTower: {
            GroupSpec gamma = gamma_group(p);
            GroupSpec gamma_prime = gamma_prime_group(p);
            if (spec.base_group == gamma) {
                // L|K, degree p^2: value group grows to Gamma' through y' = y - w
                rep.name = "L|K";
                rep.degree = p * p;
                Series yp = sub(make_y(spec.params, ctx),
                                exact_copy(make_w(spec.params, ctx)).in_group_view(gamma_prime));
                Exp vyp = yp.valuation().finite();
                rep.e = value_index(vyp, gamma);
                rep.f = 1;
                rep.d = Exp(static_cast<long>(rep.degree)) / Exp(static_cast<long>(rep.e));
                rep.immediate = ExtensionReport::Immediate::No;
                rep.witness = vyp;
                rep.notes += "; defect extension per construction";
            } else if (spec.base_group == gamma_prime) {
                // L|K', degree p: v(x) already lies in Gamma'
                rep.name = "L|K'";
                rep.degree = p;
                Series x = make_x(spec.params, ctx);
                Exp vx = x.valuation().finite();
                rep.e = value_index(vx, gamma_prime);
                rep.f = 1;
                rep.d = Exp(static_cast<long>(rep.degree)) / Exp(static_cast<long>(rep.e * rep.f));
                rep.immediate = (rep.e == 1 && rep.f == 1) ? ExtensionReport::Immediate::Yes
                                                           : ExtensionReport::Immediate::No;
                rep.notes += "; defect extension per construction";
            } else {
                throw Error("the fixed tower must be read over Gamma or Gamma'");
            }
            break;
        }
        case ExtensionSpec::Kind::ArtinSchreier: {
            rep.name = "K[X]/(X^p-X-b)|K";
            rep.degree = p;
            ASVerdict v = as_classify(*spec.b, 4 * (n_of(*spec.b) + 1), ctx);
            if (v.not_immediate) {
                Exp root_val = *v.witness / Exp(static_cast<long>(p));
                rep.e = value_index(root_val, spec.base_group);
                rep.f = 1;
                rep.d = Exp(static_cast<long>(rep.degree)) / Exp(static_cast<long>(rep.e * rep.f));
                rep.immediate = ExtensionReport::Immediate::No;
                rep.witness = v.witness;
            } else {
                rep.e = 1;
                rep.f = 1;
                rep.d = Exp(static_cast<long>(p));
                rep.immediate = ExtensionReport::Immediate::Inconclusive;
                rep.notes += "; Artin-Schreier loop inconclusive: " + v.note;
            }
            break;
        }
    }
    rep.ostrowski_ok = is_p_power(rep.d, p);
    // fundamental equality e*f*d = degree, by construction of d; keep the
    // explicit check so a bad report can never be emitted silently
    if (!(Exp(static_cast<long>(rep.e * rep.f)) * rep.d == Exp(static_cast<long>(rep.degree))))
        throw Error("fundamental equality violated in report " + rep.name);
    return rep;
}

namespace {

bool pair_divisible(const Exp& eps, unsigned long j, unsigned long p, const GroupSpec& gamma) {
    return in_p_multiple(eps, p, gamma) && j % p == 0;
}

}  // namespace

DeltaSet delta_set(const Expansion& b) {
    b.validate();
    GroupSpec gamma = gamma_group(b.params.p);
    DeltaSet d;
    for (const auto& t : b.terms) {
        if (t.coeff.is_zero()) continue;
        if (!(b.term_value(t) < 0)) continue;
        if (pair_divisible(t.eps, t.j, b.params.p, gamma)) d.emplace_back(t.eps, t.j);
    }
    return d;
}

unsigned long n_of(const Expansion& b) {
    GroupSpec gamma = gamma_group(b.params.p);
    unsigned long p = b.params.p;
    unsigned long best = 0;
    for (const auto& [eps, j] : delta_set(b)) {
        unsigned long n = 0;
        Exp e = eps;
        unsigned long jj = j;
        while (in_p_multiple(e, p, gamma) && jj % p == 0) {
            e /= Exp(static_cast<long>(p));
            jj /= p;
            ++n;
        }
        best = std::max(best, n);
    }
    return best;
}

ASReduceStep as_reduce(const Expansion& b, const FieldCtx& ctx) {
    b.validate();
    unsigned long p = b.params.p;
    GroupSpec gamma = gamma_group(p);
    DeltaSet delta = delta_set(b);

    Expansion a{{}, b.r, b.beta, b.params};
    std::map<std::pair<Exp, unsigned long>, Coeff> merged;
    auto insert = [&](const Exp& eps, unsigned long j, const Coeff& c) {
        auto key = std::make_pair(eps, j);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) merged.erase(it);
        }
    };

    auto in_delta = [&](const ExpTerm& t) {
        return std::find(delta.begin(), delta.end(), std::make_pair(t.eps, t.j)) != delta.end();
    };

    for (const auto& t : b.terms) {
        if (t.coeff.is_zero()) continue;
        if (in_delta(t)) {
            Exp eps_p = t.eps / Exp(static_cast<long>(p));
            if (!in_group(eps_p, gamma))
                throw FrameMismatch("exponent " + exp_str(t.eps) + "/p leaves Gamma");
            ExpTerm at{eps_p, t.j / p, pth_root(t.coeff)};
            a.terms.push_back(at);
            insert(at.eps, at.j, at.coeff);  // the +a part; -a^p removes t itself
        } else {
            insert(t.eps, t.j, t.coeff);
        }
    }

    Expansion next{{}, b.r, b.beta, b.params};
    for (const auto& [key, c] : merged) next.terms.push_back({key.first, key.second, c});
    (void)ctx;
    return {std::move(a), std::move(next)};
}

ASVerdict as_classify(const Expansion& b, unsigned long max_iter, const FieldCtx& ctx) {
    b.validate();
    unsigned long p = b.params.p;
    GroupSpec gamma = gamma_group(p);

    Expansion cur = b;
    {
        bool neg = false;
        for (const auto& t : cur.terms)
            if (!t.coeff.is_zero() && cur.term_value(t) < 0) neg = true;
        if (!neg) throw Error("as_classify requires v(b) < 0");
    }

    ASVerdict verdict;
    for (unsigned long step = 0;; ++step) {
        if (n_of(cur) == 0) {
            // leading pair: minimal value among nonzero terms
            const ExpTerm* lead = nullptr;
            bool tie = false;
            for (const auto& t : cur.terms) {
                if (t.coeff.is_zero()) continue;
                if (!lead || cur.term_value(t) < cur.term_value(*lead)) {
                    lead = &t;
                    tie = false;
                } else if (cur.term_value(t) == cur.term_value(*lead)) {
                    tie = true;
                }
            }
            if (!lead || !(cur.term_value(*lead) < 0)) {
                verdict.note = "residual lost its negative part";
                return verdict;
            }
            if (tie) {
                verdict.note = "two frame monomials share the leading value; expansion frame "
                               "cannot separate them";
                return verdict;
            }
            Exp val = cur.term_value(*lead);
            if (pair_divisible(lead->eps, lead->j, p, gamma)) {
                verdict.note = "n = 0 residual's leading pair is still p-divisible";
                return verdict;
            }
            if (in_p_multiple(val, p, gamma)) {
                verdict.note = "leading pair is not p-divisible but its value lies in pGamma";
                return verdict;
            }
            verdict.not_immediate = true;
            verdict.witness = val;
            verdict.steps = step;
            return verdict;
        }
        if (step >= max_iter) {
            verdict.note = "iteration budget exhausted with n(b) still positive";
            return verdict;
        }
        cur = as_reduce(cur, ctx).b_next;
    }
}

std::optional<PthSubtractResult> subtract_pth_powers(const QuasiFinite& z, unsigned long max_steps,
                                                     const FieldCtx& ctx) {
    GroupSpec gamma = gamma_group(z.params.p);
    unsigned long p = z.params.p;
    for (unsigned long step = 0; step < std::max(max_steps, 1ul); ++step) {
        // linear depth growth: exponent denominators stay q^O(depth)
        Series expanded = qf_expand_at_depth(z, z.params.depth * (step + 1), ctx);
        Series a_candidate(ctx, gamma);
        std::optional<Exp> first_outside;
        for (const auto& [e, c] : expanded.terms()) {
            if (in_p_multiple(e, p, gamma))
                a_candidate.add_term(e / Exp(static_cast<long>(p)), pth_root(c));
            else if (!first_outside)
                first_outside = e;
        }
        if (first_outside) return PthSubtractResult{std::move(a_candidate), *first_outside, true};
    }
    return std::nullopt;
}

ProbeResult immediate_probe(const std::vector<Series>& fcoeffs, const WConstructionParams& params,
                            const Exp& prec, const FieldCtx& ctx) {
    params.validate();
    unsigned long p = params.p;
    if (fcoeffs.empty() || fcoeffs.size() > p)
        throw Error("probe polynomial must have between 1 and p coefficients");
    GroupSpec ambient = gamma_p2_group(p);

    // deepen w until the materialized x supports the requested precision
    WConstructionParams wp = params;
    for (int attempt = 0;; ++attempt) {
        Series x = make_x(wp, ctx);
        WSeries f(ctx, ambient);
        bool any = false;
        for (std::size_t j = 0; j < fcoeffs.size(); ++j) {
            Series c = fcoeffs[j].in_group_view(ambient);
            if (!c.is_exact_zero()) any = true;
            f.set_coeff(j, std::move(c));
        }
        if (!any) throw DegenerateZero();
        Series value = eval(f, x);
        if (value.is_exact_zero()) throw DegenerateZero();
        if (!value.terms().empty()) {
            Exp v = value.valuation().finite();
            return {v, in_group(v, gamma_prime_group(p))};
        }
        if (value.prec() >= ExtExp(prec) || attempt >= 6)
            throw IndeterminateValuation("cancellation exhausted precision " + value.prec().str());
        wp.depth *= 2;
    }
}

}  // namespace vallab
