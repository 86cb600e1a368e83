#pragma once

#include "vallab/errors.hpp"

namespace vallab {

// Parameters of the w = sum of t^{beta_i} construction. start = 0 builds w
// itself, start = r builds the tail w_r; depth is the number of terms
// materialized.
struct WConstructionParams {
    unsigned long p = 2;
    unsigned long q = 3;
    unsigned long start = 0;
    unsigned long depth = 8;

    void validate() const {
        if (p == q) throw ConfigError("p and q must be distinct primes");
        if (p < 2 || q < 2) throw ConfigError("p and q must be primes");
        if (depth < 1) throw ConfigError("depth must be >= 1");
    }
};

}  // namespace vallab
