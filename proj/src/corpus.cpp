#include "vallab/corpus.hpp"

namespace vallab {

namespace {

// exponent with denominator q^k (k <= 2) and value within [vmin, vmax]
Exp random_exp(Rng& rng, unsigned long q, long vmin, long vmax) {
    unsigned long k = rng.below(3);
    long den = 1;
    for (unsigned long i = 0; i < k; ++i) den *= static_cast<long>(q);
    return make_exp(rng.range(vmin * den, vmax * den), den);
}

Coeff random_coeff(Rng& rng, const FieldCtx& ctx, bool nonzero) {
    unsigned long e = rng.below(ctx.order());
    if (nonzero && e == 0) e = 1 + rng.below(ctx.order() - 1);
    return Coeff::from_encoding(ctx, e);
}

}  // namespace

Series random_series(Rng& rng, const FieldCtx& ctx, const GroupSpec& group, long vmin, long vmax,
                     unsigned max_terms, unsigned long q) {
    Series s(ctx, group);
    unsigned nterms = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned i = 0; i < nterms; ++i)
        s.add_term(random_exp(rng, q, vmin, vmax), random_coeff(rng, ctx, false));
    if (s.terms().empty()) s.add_term(random_exp(rng, q, vmin, vmax), Coeff(ctx, 1));
    return s;
}

WSeries random_wpoly(Rng& rng, const FieldCtx& ctx, const GroupSpec& group, unsigned max_degree,
                     unsigned long q) {
    WSeries f(ctx, group);
    unsigned deg = static_cast<unsigned>(rng.below(max_degree + 1));
    for (unsigned i = 0; i <= deg; ++i) {
        if (i < deg && rng.chance(35)) continue;  // sparse coefficients
        Series c(ctx, group);
        unsigned nterms = 1 + static_cast<unsigned>(rng.below(2));
        for (unsigned t = 0; t < nterms; ++t)
            c.add_term(random_exp(rng, q, 0, 2), random_coeff(rng, ctx, i == deg));
        if (i == deg && c.terms().empty()) c.add_term(Exp(0), Coeff(ctx, 1));
        f.set_coeff(i, std::move(c));
    }
    return f;
}

Series random_kprime_element(Rng& rng, const FieldCtx& ctx, const WConstructionParams& params) {
    const long p = static_cast<long>(params.p);
    const long q = static_cast<long>(params.q);
    const long dens[] = {1, q, q * q, p, p * q};
    Series s(ctx, gamma_prime_group(params.p));
    unsigned nterms = 1 + static_cast<unsigned>(rng.below(3));
    for (unsigned i = 0; i < nterms; ++i) {
        long den = dens[rng.below(5)];
        Exp e = make_exp(rng.range(-3 * den, 3 * den), den);
        s.add_term(e, random_coeff(rng, ctx, false));
    }
    if (s.terms().empty()) s.add_term(Exp(0), Coeff(ctx, 1));
    return s;
}

Expansion random_as_input(Rng& rng, const FieldCtx& ctx, const WConstructionParams& params,
                          unsigned n_max) {
    const unsigned long p = params.p;
    const GroupSpec gamma = gamma_group(p);
    Expansion b;
    b.r = 1;
    b.beta = 0;
    b.params = params;

    unsigned long k = rng.below(n_max + 1);
    Exp eps0;
    unsigned long j0 = 0;
    for (;;) {
        j0 = rng.below(4);
        if (j0 > 0 && j0 % p == 0) continue;
        long q = static_cast<long>(params.q);
        long den = (rng.below(2) == 0) ? 1 : q;
        long lo = -(static_cast<long>(j0) + 4) * den;
        long hi = -(static_cast<long>(j0) + 1) * den;
        eps0 = make_exp(rng.range(lo, hi), den);
        Exp value0 = eps0 + Exp(static_cast<long>(j0)) * beta(b.r + 1, params.q);
        if (in_p_multiple(value0, p, gamma)) continue;       // witness must leave pGamma
        if (j0 == 0 && in_p_multiple(eps0, p, gamma)) continue;  // pair must not be p-divisible
        break;
    }

    Exp pk(1);
    for (unsigned long i = 0; i < k; ++i) pk *= static_cast<long>(p);
    unsigned long jscaled = j0;
    for (unsigned long i = 0; i < k; ++i) jscaled *= p;
    b.terms.push_back({eps0 * pk, jscaled, random_coeff(rng, ctx, true)});

    // a couple of harmless positive-value terms, kept off the reduction chain
    unsigned extra = static_cast<unsigned>(rng.below(3));
    for (unsigned i = 0; i < extra; ++i) {
        Exp e = make_exp(rng.range(1, 9), 3);
        unsigned long j = rng.below(3);
        bool collides = false;
        Exp chain = eps0 * pk;
        unsigned long jchain = jscaled;
        for (unsigned long step = 0; step <= k; ++step) {
            if (e == chain && j == jchain) collides = true;
            chain /= static_cast<long>(p);
            jchain /= p;
        }
        for (const auto& t : b.terms)
            if (t.eps == e && t.j == j) collides = true;
        if (!collides) b.terms.push_back({e, j, random_coeff(rng, ctx, true)});
    }
    return b;
}

}  // namespace vallab
