#pragma once

#include <utility>
#include <vector>

#include "vallab/params.hpp"
#include "vallab/series.hpp"

namespace vallab {

// Polynomial in an indeterminate W with Series coefficients; carrier of
// Hasse derivatives. Finite W-degree throughout.
class WSeries {
public:
    WSeries(const FieldCtx& ctx, GroupSpec group);

    const FieldCtx& ctx() const { return *ctx_; }
    const GroupSpec& group() const { return group_; }

    // degree of the zero polynomial is reported as 0
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const Series& coeff(std::size_t i) const;
    void set_coeff(std::size_t i, Series s);

    bool operator==(const WSeries& o) const;

    std::string str() const;

private:
    const FieldCtx* ctx_;
    GroupSpec group_;
    std::vector<Series> coeffs_;  // index = power of W, trailing zeros trimmed
    Series zero_;
    void trim();
};

// b-th Hasse derivative: W^i -> C(i,b) W^{i-b} with the binomial reduced mod p.
WSeries hasse(const WSeries& f, unsigned long b);

Series eval(const WSeries& f, const Series& s);

// eval(f, w0 + delta) == sum_i eval(hasse(f,i), w0) * delta^i, compared up to
// the common contract precision.
bool taylor_check(const WSeries& f, const Series& w0, const Series& delta);

struct SlopeLine {
    Exp intercept;        // v(d_i f(w_{0l}))
    unsigned long slope;  // the derivative index i
};

// A point beta inside the open interval beyond which all line values are
// pairwise distinct: strictly greater than every crossing inside the
// interval. With no crossings the interval's lower bound is echoed.
Exp slope_threshold(const std::vector<SlopeLine>& lines, const Exp& lo, const Exp& hi);

struct StabilizationCert {
    unsigned long l0 = 0;
    unsigned long e = 0;
    Exp value;
    std::vector<std::pair<unsigned long, ExtExp>> trace;  // (l, v(f(w_{0l})))
    bool e_varies = false;         // e changed inside the certified window
    bool non_paper_regime = false;  // beta < 1 was allowed
};

// Certified truncation-stabilization search over the window [l_min, l_max]:
// finds the smallest l0 such that for every tested l >= l0
//   (1) v(f(w_{0l})) is finite and constant,
//   (2) v(f(w_{0l})) < min_{i>=1} { v(d_i f(w_{0l})) + i beta_{l+1} },
//   (3) that minimum is attained at a unique index p^e.
// Throws ZeroFunction / Inconclusive. Never extrapolates beyond the window.
StabilizationCert stabilize(const WSeries& f, const WConstructionParams& wspec, const Coeff& c,
                            const Exp& beta_shift, unsigned long l_min, unsigned long l_max);

}  // namespace vallab
