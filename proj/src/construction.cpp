#include "vallab/construction.hpp"

#include <algorithm>

namespace vallab {

GroupSpec gamma_group(unsigned long p) { return GroupSpec::p_prime_denom(p); }

GroupSpec gamma_prime_group(unsigned long p) {
    return GroupSpec::extended(gamma_group(p), {Exp(1, static_cast<long>(p))});
}

GroupSpec gamma_p2_group(unsigned long p) {
    long p2 = static_cast<long>(p * p);
    return GroupSpec::extended(gamma_group(p), {Exp(1, p2)});
}

Series make_w(const WConstructionParams& params, const FieldCtx& ctx) {
    params.validate();
    if (ctx.p() != params.p) throw ConfigError("field characteristic differs from params.p");
    Series w = Series::truncated_zero(ctx, gamma_group(params.p),
                                      ExtExp(beta(params.start + params.depth + 1, params.q)));
    Coeff one(ctx, 1);
    for (unsigned long i = params.start + 1; i <= params.start + params.depth; ++i)
        w.add_term(beta(i, params.q), one);
    return w;
}

Series make_s(const WConstructionParams& params, const FieldCtx& ctx) {
    return pth_root_series(make_w(params, ctx).in_group_view(gamma_prime_group(params.p)));
}

Series make_x(const WConstructionParams& params, const FieldCtx& ctx) {
    Series s = make_s(params, ctx).in_group_view(gamma_p2_group(params.p));
    long p = static_cast<long>(params.p);
    Series shift_term = Series::monomial(ctx, s.group(), Exp(p + 1, p * p), Coeff(ctx, 1));
    return add(s, shift_term);
}

Series make_y(const WConstructionParams& params, const FieldCtx& ctx) {
    // the working w is a finite sum; take it exactly so that t^{p+1} survives
    // the p-th power (the truncation contract would otherwise swallow it)
    Series w = exact_copy(make_w(params, ctx));
    long p = static_cast<long>(params.p);
    Series radicand = add(pow(w, params.p),
                          Series::monomial(ctx, w.group(), Exp(p + 1), Coeff(ctx, 1)));
    return pth_root_series(radicand.in_group_view(gamma_prime_group(params.p)));
}

GOracle GOracle::geometric(const FieldCtx& ctx, unsigned long cap) {
    GOracle g;
    g.degree_cap = cap;
    Coeff sign(ctx, 1);
    Coeff minus_one(ctx, -1);
    for (unsigned long n = 0; n <= cap; ++n) {
        g.coeffs[{n}] = sign;
        sign = sign * minus_one;
    }
    return g;
}

GOracle GOracle::constant(const FieldCtx& ctx, const Coeff& c) {
    GOracle g;
    g.degree_cap = 0;
    if (!c.is_zero()) g.coeffs[{}] = c;
    (void)ctx;
    return g;
}

namespace {

Series materialize_h(const QFTermExpr& h, const Series& w, const FieldCtx& ctx) {
    Series acc(ctx, w.group());
    for (const auto& m : h.monomials) {
        Series term = Series::monomial(ctx, w.group(), m.t_exp, m.coeff);
        if (m.w_pow > 0) term = mul(term, pow(w, m.w_pow));
        acc = add(acc, term);
    }
    return acc;
}

}  // namespace

Series qf_expand_at_depth(const QuasiFinite& y, unsigned long depth, const FieldCtx& ctx) {
    if (y.gamma > 0) throw Error("quasi-finite shift gamma must be <= 0");
    const GroupSpec group = gamma_group(y.params.p);
    WConstructionParams wp = y.params;
    wp.depth = depth;
    Series w = make_w(wp, ctx);

    std::vector<Series> hs;
    Exp min_vh;
    bool have_vh = false;
    for (const auto& hi : y.h) {
        Series s = materialize_h(hi, w, ctx);
        ExtExp v = s.valuation();
        if (v.is_inf() || !(v.finite() > 0))
            throw Error("term-expression h_i must have strictly positive valuation");
        if (!have_vh || v.finite() < min_vh) {
            min_vh = v.finite();
            have_vh = true;
        }
        hs.push_back(std::move(s));
    }

    std::vector<std::vector<Series>> powers(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) powers[i].push_back(Series::one(ctx, group));

    Series acc(ctx, group);
    for (const auto& [alpha, c] : y.g.coeffs) {
        if (c.is_zero()) continue;
        unsigned long total = 0;
        for (auto a : alpha) total += a;
        if (total > y.g.degree_cap) continue;
        if (alpha.size() > hs.size()) throw Error("g multi-index wider than the h list");
        Series term = Series::monomial(ctx, group, Exp(0), c);
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            while (powers[i].size() <= alpha[i]) powers[i].push_back(mul(powers[i].back(), hs[i]));
            if (alpha[i] > 0) term = mul(term, powers[i][alpha[i]]);
        }
        acc = add(acc, term);
    }
    // beyond total degree D the g coefficients are unknown: cap the claim
    // (unless g is an exact polynomial)
    ExtExp cap_prec = ExtExp::infinity();
    if (have_vh && !y.g.exact)
        cap_prec = ExtExp(Exp(static_cast<long>(y.g.degree_cap + 1)) * min_vh);
    return shift(acc.truncated(cap_prec), y.gamma);
}

Series qf_expand(const QuasiFinite& y, const Exp& target_prec, const FieldCtx& ctx) {
    if (y.gamma > 0) throw Error("quasi-finite shift gamma must be <= 0");
    // the g cap bounds reachable precision by gamma + (D+1) min v(h_i); the
    // h valuations are depth-independent, so check that up front
    if (!y.h.empty()) {
        Series w = make_w(y.params, ctx);
        Exp min_vh;
        bool have = false;
        for (const auto& hi : y.h) {
            Series s = materialize_h(hi, w, ctx);
            Exp v = s.valuation().finite();
            if (!have || v < min_vh) {
                min_vh = v;
                have = true;
            }
        }
        Exp inner = target_prec - y.gamma;
        if (have && !y.g.exact && Exp(static_cast<long>(y.g.degree_cap + 1)) * min_vh < inner) {
            Exp ratio = inner / min_vh;
            mpz_class fl = ratio.get_num() / ratio.get_den();
            unsigned long needed = static_cast<unsigned long>(fl.get_ui());
            if (Exp(static_cast<long>(needed)) * min_vh < inner) ++needed;
            throw InsufficientDegreeCap(needed > 0 ? needed - 1 : 0);
        }
    }
    unsigned long depth = y.params.depth;
    for (int attempt = 0;; ++attempt) {
        Series result = qf_expand_at_depth(y, depth, ctx);
        if (result.prec() >= ExtExp(target_prec)) return result.truncated(ExtExp(target_prec));
        if (attempt >= 6)
            throw PrecisionTooLow("cannot materialize the expansion to precision " +
                                  exp_str(target_prec) + "; the support of w accumulates at 1");
        depth *= 2;
    }
}

Exp Expansion::term_value(const ExpTerm& t) const {
    return t.eps + Exp(static_cast<long>(t.j)) * (vallab::beta(r + 1, params.q) - beta);
}

void Expansion::validate() const {
    params.validate();
    if (r < 1) throw Error("expansion frame index r must be >= 1");
    if (beta < 0 || !(beta < vallab::beta(r + 1, params.q)))
        throw Error("expansion frame requires 0 <= beta < beta_{r+1}");
}

std::vector<ExpTerm> bounded_terms(const Expansion& e, const Exp& bound) {
    std::vector<ExpTerm> out;
    for (const auto& t : e.terms)
        if (e.term_value(t) < bound) out.push_back(t);
    return out;
}

Series expansion_series(const Expansion& e, const FieldCtx& ctx, const GroupSpec& group) {
    e.validate();
    WConstructionParams tail = e.params;
    tail.start = e.r;
    Series wr = make_w(tail, ctx).in_group_view(group);
    Series acc(ctx, group);
    std::vector<Series> powers = {Series::one(ctx, group)};
    for (const auto& t : e.terms) {
        while (powers.size() <= t.j) powers.push_back(mul(powers.back(), shift(wr, -e.beta)));
        acc = add(acc, shift(scale(powers[t.j], t.coeff), t.eps));
    }
    return acc;
}

Series hensel_lift(const WSeries& f, const Coeff& residue_root, const Exp& target_prec) {
    const FieldCtx& ctx = f.ctx();
    if (f.is_zero()) throw Error("cannot lift a root of the zero polynomial");
    // reduce f modulo the maximal ideal: keep the exponent-0 coefficients
    std::vector<Coeff> fbar(f.degree() + 1, Coeff(ctx, 0));
    for (std::size_t i = 0; i <= f.degree(); ++i) {
        const Series& a = f.coeff(i);
        for (const auto& [e, c] : a.terms()) {
            if (e < 0) throw Error("hensel_lift requires coefficients of valuation >= 0");
            if (e == 0) fbar[i] = c;
        }
    }
    Coeff val(ctx, 0), dval(ctx, 0);
    Coeff xp(ctx, 1);
    for (std::size_t i = 0; i <= f.degree(); ++i) {
        val = val + fbar[i] * xp;
        long ci = static_cast<long>((i + 1) % ctx.p());
        if (i + 1 <= f.degree()) dval = dval + Coeff(ctx, ci) * fbar[i + 1] * xp;
        xp = xp * residue_root;
    }
    if (!val.is_zero()) throw NoResidueRoot();
    if (dval.is_zero()) throw NonSimpleResidueRoot();

    Series y = Series::monomial(ctx, f.group(), Exp(0), residue_root);
    if (residue_root.is_zero()) y = Series(ctx, f.group());
    ExtExp target(target_prec);
    for (int iter = 0; iter < 200; ++iter) {
        Series fy = eval(f, y).truncated(target);
        bool done = true;
        for (const auto& [e, c] : fy.terms()) {
            (void)c;
            if (ExtExp(e) < target) {
                done = false;
                break;
            }
        }
        if (done && fy.prec() >= target) return y.truncated(target);
        if (done) return y;  // exact root below target with exact arithmetic
        Series dfy = eval(hasse(f, 1), y);
        Series correction = mul(fy, invert(dfy, target));
        y = sub(y, correction).truncated(target);
    }
    throw PrecisionTooLow("Newton iteration did not reach the target precision");
}

}  // namespace vallab
