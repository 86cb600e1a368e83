#pragma once

#include <cstdint>

#include "vallab/defect.hpp"

namespace vallab {

// splitmix64: tiny, stable across platforms, good enough for sampling
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(unsigned percent) { return below(100) < percent; }
};

// Random exact series with a handful of terms, exponents with denominators
// coprime to p, valuation within [vmin, vmax].
Series random_series(Rng& rng, const FieldCtx& ctx, const GroupSpec& group, long vmin, long vmax,
                     unsigned max_terms, unsigned long q);

// Random W-polynomial with exact monomial/binomial coefficients.
WSeries random_wpoly(Rng& rng, const FieldCtx& ctx, const GroupSpec& group, unsigned max_degree,
                     unsigned long q);

// Random K'-element (finite support, exponents in Gamma + (1/p)Z).
Series random_kprime_element(Rng& rng, const FieldCtx& ctx, const WConstructionParams& params);

// Monomial-built b for the Artin-Schreier loop: v(b) < 0, n(b) <= n_max, and
// the fully reduced leading pair has value outside pGamma.
Expansion random_as_input(Rng& rng, const FieldCtx& ctx, const WConstructionParams& params,
                          unsigned n_max);

}  // namespace vallab
