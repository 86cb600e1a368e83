#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "vallab/errors.hpp"

namespace vallab {

// Exact rational exponent. mpq_class keeps itself canonical (reduced,
// positive denominator), which is exactly the invariant we need.
using Exp = mpq_class;

inline Exp make_exp(long num, long den = 1) {
    if (den == 0) throw Error("zero denominator");
    Exp e(num, den);
    e.canonicalize();
    return e;
}

// "a/b" with b omitted when 1; also accepts "-a/b".
Exp parse_exp(const std::string& s);
std::string exp_str(const Exp& e);

// beta_i = 1 - 1/q^i, the exponent ladder of the w construction.
Exp beta(unsigned long i, unsigned long q);

// Exp extended with +infinity; used for valuations and precision bounds.
class ExtExp {
public:
    ExtExp() : inf_(true) {}  // +infinity
    ExtExp(Exp v) : inf_(false), val_(std::move(v)) {}

    static ExtExp infinity() { return ExtExp(); }

    bool is_inf() const { return inf_; }
    const Exp& finite() const {
        if (inf_) throw Error("attempted to read a finite value out of +infinity");
        return val_;
    }

    friend bool operator==(const ExtExp& a, const ExtExp& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.val_ == b.val_;
    }
    friend bool operator<(const ExtExp& a, const ExtExp& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.val_ < b.val_;
    }
    friend bool operator<=(const ExtExp& a, const ExtExp& b) { return a < b || a == b; }
    friend bool operator>(const ExtExp& a, const ExtExp& b) { return b < a; }
    friend bool operator>=(const ExtExp& a, const ExtExp& b) { return b <= a; }

    // inf + x = inf
    friend ExtExp operator+(const ExtExp& a, const ExtExp& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtExp(a.val_ + b.val_);
    }
    friend ExtExp operator*(const ExtExp& a, const Exp& s) {
        if (a.inf_) return infinity();
        return ExtExp(a.val_ * s);
    }

    std::string str() const { return inf_ ? "inf" : exp_str(val_); }

private:
    bool inf_;
    Exp val_;
};

inline ExtExp min(const ExtExp& a, const ExtExp& b) { return a < b ? a : b; }

}  // namespace vallab
