#pragma once

#include <map>
#include <vector>

#include "vallab/wseries.hpp"

namespace vallab {

// The three value groups of the tower: Gamma, Gamma' = Gamma + (1/p)Z and
// the ambient Gamma + (1/p^2)Z.
GroupSpec gamma_group(unsigned long p);
GroupSpec gamma_prime_group(unsigned long p);
GroupSpec gamma_p2_group(unsigned long p);

// w = sum t^{beta_i}, i = start+1 .. start+depth, prec = beta_{start+depth+1},
// in the group Gamma.
Series make_w(const WConstructionParams& params, const FieldCtx& ctx);

// s = w^{1/p}, materialized in Gamma'.
Series make_s(const WConstructionParams& params, const FieldCtx& ctx);

// x = s + t^{(p+1)/p^2}, materialized in Gamma + (1/p^2)Z.
Series make_x(const WConstructionParams& params, const FieldCtx& ctx);

// y = (t^{p+1} + w^p)^{1/p}, the generator of K', in Gamma'.
Series make_y(const WConstructionParams& params, const FieldCtx& ctx);

// One monomial coeff * t^{t_exp} * w^{w_pow} of a term-expression h_i.
struct QFMonomial {
    Exp t_exp;
    unsigned long w_pow = 0;
    Coeff coeff;
};

// A finite sum of such monomials; must have strictly positive valuation.
struct QFTermExpr {
    std::vector<QFMonomial> monomials;
};

// Formal power series g in n variables over k, given as a coefficient table
// capped at total degree <= degree_cap.
struct GOracle {
    unsigned long degree_cap = 0;
    bool exact = false;  // true: g is the listed polynomial, nothing beyond the cap
    std::map<std::vector<unsigned long>, Coeff> coeffs;  // multi-index -> coefficient

    // one-variable sum of (-1)^n X^n up to the cap
    static GOracle geometric(const FieldCtx& ctx, unsigned long cap);
    static GOracle constant(const FieldCtx& ctx, const Coeff& c);
};

// t^gamma * g(h_1,...,h_n), the finite shift-plus-power-series description of
// elements of K.
struct QuasiFinite {
    Exp gamma;  // <= 0 shift
    std::vector<QFTermExpr> h;
    GOracle g;
    WConstructionParams params;
};

// The series of y, exact below target_prec. Throws InsufficientDegreeCap when
// the g cap cannot reach target_prec, PrecisionTooLow when no materialization
// depth can (the support of w accumulates at 1).
Series qf_expand(const QuasiFinite& y, const Exp& target_prec, const FieldCtx& ctx);

// One expansion pass at a fixed materialization depth; the precision is
// whatever the truncated w and the g cap support.
Series qf_expand_at_depth(const QuasiFinite& y, unsigned long depth, const FieldCtx& ctx);

// A finite chunk of the expansion sum c_ij t^{eps_i} (w_r / t^beta)^j.
struct ExpTerm {
    Exp eps;
    unsigned long j = 0;
    Coeff coeff;
};

struct Expansion {
    std::vector<ExpTerm> terms;
    unsigned long r = 1;
    Exp beta;  // 0 <= beta < beta_{r+1}
    WConstructionParams params;

    // v(t^eps (w_r/t^beta)^j) = eps + j (beta_{r+1} - beta)
    Exp term_value(const ExpTerm& t) const;
    void validate() const;
};

// All stored terms of value strictly below the bound.
std::vector<ExpTerm> bounded_terms(const Expansion& e, const Exp& bound);

// Materialize the expansion as a Series (the frame's w_r built to the
// params' depth).
Series expansion_series(const Expansion& e, const FieldCtx& ctx, const GroupSpec& group);

// Hensel/Newton lifting of a simple residue root to a root of f modulo
// t^{target_prec}.
Series hensel_lift(const WSeries& f, const Coeff& residue_root, const Exp& target_prec);

}  // namespace vallab
