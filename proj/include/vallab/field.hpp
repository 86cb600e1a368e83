#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vallab/errors.hpp"

namespace vallab {

// The coefficient field F_{p^m}, elements represented as polynomials in a
// generator "g" modulo a monic irreducible of degree m over F_p.
class FieldCtx {
public:
    // Uses the lexicographically smallest monic irreducible of degree m.
    FieldCtx(unsigned long p, unsigned long m);
    // modulus given little-endian (length m+1, monic); verified irreducible.
    FieldCtx(unsigned long p, unsigned long m, std::vector<unsigned long> modulus);

    unsigned long p() const { return p_; }
    unsigned long m() const { return m_; }
    const std::vector<unsigned long>& modulus() const { return modulus_; }
    // p^m as unsigned long; construction rejects fields too large for this.
    unsigned long order() const { return order_; }

    bool operator==(const FieldCtx& o) const {
        return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

private:
    void check_modulus() const;
    unsigned long p_, m_, order_;
    std::vector<unsigned long> modulus_;
};

class Coeff {
public:
    Coeff() : ctx_(nullptr) {}
    // from an integer of the prime field (reduced mod p)
    Coeff(const FieldCtx& ctx, long value);
    // from an explicit representation (little-endian, length <= m)
    Coeff(const FieldCtx& ctx, std::vector<unsigned long> repr);

    // element with encoding e = sum repr[i] * p^i; the fixed total order on
    // representations is the order of encodings
    static Coeff from_encoding(const FieldCtx& ctx, unsigned long e);
    unsigned long encoding() const;

    const FieldCtx& ctx() const;
    bool is_zero() const;
    bool is_one() const;

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator-() const;
    Coeff operator*(const Coeff& o) const;
    Coeff inv() const;
    Coeff pow(unsigned long long n) const;

    bool operator==(const Coeff& o) const;
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    std::string str() const;  // polynomial in "g", e.g. "g+1"

private:
    const FieldCtx* ctx_;
    std::vector<unsigned long> repr_;  // little-endian, length m, values < p
    void require_same(const Coeff& o) const;
};

// The unique d with d^p = c (Frobenius inverse; equals c^{p^{m-1}}).
Coeff pth_root(const Coeff& c);

// Some d with d^n = c, canonically the least encoding; throws NoRootInField.
Coeff nth_root(const Coeff& c, unsigned long n);

}  // namespace vallab
