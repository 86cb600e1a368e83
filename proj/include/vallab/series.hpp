#pragma once

#include <map>
#include <string>

#include "vallab/field.hpp"
#include "vallab/groups.hpp"

namespace vallab {

// Truncated Hahn series over (F_{p^m}, G): finitely many terms t^e with
// e < prec, plus the promise that every term of the represented element
// below prec is present. prec = +infinity marks an exactly represented
// element with finite support.
class Series {
public:
    // exact zero
    Series(const FieldCtx& ctx, GroupSpec group);
    // O(t^prec): no known terms below prec
    static Series truncated_zero(const FieldCtx& ctx, GroupSpec group, ExtExp prec);
    static Series monomial(const FieldCtx& ctx, GroupSpec group, const Exp& e, const Coeff& c);
    static Series one(const FieldCtx& ctx, GroupSpec group);

    const FieldCtx& ctx() const { return *ctx_; }
    const GroupSpec& group() const { return group_; }
    const std::map<Exp, Coeff>& terms() const { return terms_; }
    const ExtExp& prec() const { return prec_; }

    bool is_exact() const { return prec_.is_inf(); }
    bool is_exact_zero() const { return is_exact() && terms_.empty(); }

    // checks membership in the group and e < prec; drops zero coefficients,
    // adds to an existing coefficient at the same exponent
    void add_term(const Exp& e, const Coeff& c);

    // forget terms at or beyond new_prec
    Series truncated(const ExtExp& new_prec) const;

    // same element viewed in a (larger) group; every exponent is rechecked
    Series in_group_view(GroupSpec g) const;

    // least exponent, +infinity for exact zero; throws IndeterminateValuation
    // when no term is known and prec is finite
    ExtExp valuation() const;

    Coeff leading_coeff() const;

    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    std::string str() const;  // "t^(2/3) + t^(8/9) + O(t^(26/27))"

private:
    const FieldCtx* ctx_;
    GroupSpec group_;
    std::map<Exp, Coeff> terms_;
    ExtExp prec_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
Series scale(const Series& a, const Coeff& c);
Series shift(const Series& a, const Exp& e);  // multiply by t^e
Series pow(const Series& a, unsigned long n);

// 1/S to output precision prec(S) - 2 v(S). Exact monomials invert exactly;
// inverting an exact series with several terms requires out_prec.
Series invert(const Series& s);
Series invert(const Series& s, const ExtExp& out_prec);

// exponents * p, coefficients ^p, prec * p
Series frobenius(const Series& s);

// exponents / p, coefficients to their p-th roots; requires supp(S) in
// p * group, else SupportNotDivisible
Series pth_root_series(const Series& s);

// the same terms with the precision bound dropped: the finite sum itself,
// taken as an exactly known element
Series exact_copy(const Series& s);

// true iff a and b carry the same terms strictly below min(prec, bound)
bool agree_below(const Series& a, const Series& b, const ExtExp& bound);

// a == b up to the common contract precision min(prec_a, prec_b)
inline bool agree(const Series& a, const Series& b) {
    return agree_below(a, b, min(a.prec(), b.prec()));
}

}  // namespace vallab
