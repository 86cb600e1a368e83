#include "vallab/wseries.hpp"

#include <optional>

#include "vallab/construction.hpp"

namespace vallab {

WSeries::WSeries(const FieldCtx& ctx, GroupSpec group)
    : ctx_(&ctx), group_(std::move(group)), zero_(ctx, group_) {}

const Series& WSeries::coeff(std::size_t i) const {
    if (i < coeffs_.size()) return coeffs_[i];
    return zero_;
}

void WSeries::set_coeff(std::size_t i, Series s) {
    if (!(s.group() == group_) || !(s.ctx() == *ctx_))
        throw GroupMismatch("W-coefficient lives in a different group or field");
    if (i >= coeffs_.size()) coeffs_.resize(i + 1, zero_);
    coeffs_[i] = std::move(s);
    trim();
}

void WSeries::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

bool WSeries::operator==(const WSeries& o) const {
    return group_ == o.group_ && coeffs_ == o.coeffs_;
}

std::string WSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_exact_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string c = coeffs_[i].str();
        if (i == 0) {
            s += c;
        } else {
            std::string w = (i == 1) ? "W" : "W^" + std::to_string(i);
            if (c == "1")
                s += w;
            else
                s += "(" + c + ")*" + w;
        }
    }
    return s.empty() ? "0" : s;
}

WSeries hasse(const WSeries& f, unsigned long b) {
    WSeries d(f.ctx(), f.group());
    if (f.is_zero()) return d;
    unsigned long p = f.ctx().p();
    for (std::size_t i = b; i <= f.degree(); ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i), b);
        long r = mpz_fdiv_ui(binom.get_mpz_t(), p);
        if (r == 0) continue;
        d.set_coeff(i - b, scale(f.coeff(i), Coeff(f.ctx(), r)));
    }
    return d;
}

Series eval(const WSeries& f, const Series& s) {
    Series acc(f.ctx(), f.group());
    if (f.is_zero()) return acc;
    Series power = Series::one(f.ctx(), f.group());
    for (std::size_t i = 0; i <= f.degree(); ++i) {
        if (i > 0) power = mul(power, s);
        if (f.coeff(i).is_exact_zero()) continue;
        if (f.coeff(i).terms().empty()) {
            // O(t^prec) coefficient: contributes a precision cap, no terms
            acc = add(acc, Series::truncated_zero(f.ctx(), f.group(),
                                                  f.coeff(i).prec() + power.valuation()));
            continue;
        }
        acc = add(acc, mul(f.coeff(i), power));
    }
    return acc;
}

bool taylor_check(const WSeries& f, const Series& w0, const Series& delta) {
    Series lhs = eval(f, add(w0, delta));
    Series rhs(f.ctx(), f.group());
    Series dpow = Series::one(f.ctx(), f.group());
    for (std::size_t i = 0; i <= f.degree() + 1; ++i) {
        WSeries di = hasse(f, static_cast<unsigned long>(i));
        if (!di.is_zero()) {
            Series ci = eval(di, w0);
            if (ci.terms().empty() && !ci.is_exact()) {
                // the coefficient cancelled below its precision: the term
                // contributes no known monomial, only a precision cap
                rhs = add(rhs, Series::truncated_zero(f.ctx(), f.group(),
                                                      ci.prec() + dpow.valuation()));
            } else if (!ci.is_exact_zero()) {
                rhs = add(rhs, mul(ci, dpow));
            }
        }
        if (delta.is_exact_zero()) break;
        dpow = mul(dpow, delta);
    }
    return agree(lhs, rhs);
}

Exp slope_threshold(const std::vector<SlopeLine>& lines, const Exp& lo, const Exp& hi) {
    if (!(lo < hi)) throw Error("slope_threshold needs a nonempty open interval");
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i].slope == lines[j].slope) throw DuplicateSlopes();
    std::optional<Exp> last_crossing;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            // a_i + b_i e = a_j + b_j e
            Exp num = lines[j].intercept - lines[i].intercept;
            Exp den = Exp(static_cast<long>(lines[i].slope)) - Exp(static_cast<long>(lines[j].slope));
            Exp cross = num / den;
            if (lo < cross && cross < hi && (!last_crossing || *last_crossing < cross))
                last_crossing = cross;
        }
    }
    if (!last_crossing) return lo;
    return (*last_crossing + hi) / 2;
}

namespace {

struct LevelCheck {
    ExtExp value;       // v(f(w_{0l}))
    bool ok = false;    // conditions (1)-(3) hold at this l
    unsigned long e = 0;
};

// w_{0l} relative to the start index: sum_{j=start+1}^{l} t^{beta_j}, exact.
Series head_series(const WConstructionParams& ws, const FieldCtx& ctx, const GroupSpec& g,
                   unsigned long l) {
    Series s(ctx, g);
    Coeff one(ctx, 1);
    for (unsigned long j = ws.start + 1; j <= l; ++j) s.add_term(beta(j, ws.q), one);
    return s;
}

bool is_power_of(unsigned long n, unsigned long p, unsigned long& e_out) {
    unsigned long e = 0;
    while (n > 1) {
        if (n % p) return false;
        n /= p;
        ++e;
    }
    e_out = e;
    return n == 1;
}

}  // namespace

StabilizationCert stabilize(const WSeries& f, const WConstructionParams& wspec, const Coeff& c,
                            const Exp& beta_shift, unsigned long l_min, unsigned long l_max) {
    wspec.validate();
    if (f.is_zero()) throw ZeroFunction();
    if (!c.is_zero() && beta_shift <= 0)
        throw Error("the perturbation exponent must be positive");
    if (l_min < wspec.start || l_min > l_max) throw Error("bad stabilization window");
    if (l_min == 0) l_min = 1;

    std::vector<LevelCheck> checks;
    std::vector<std::pair<unsigned long, ExtExp>> trace;
    bool all_zero = true;

    for (unsigned long l = l_min; l <= l_max; ++l) {
        Series w0l = head_series(wspec, f.ctx(), f.group(), l);
        Series flw = eval(f, w0l);
        LevelCheck lc{flw.valuation(), false, 0};
        trace.emplace_back(l, lc.value);
        if (!flw.is_exact_zero()) all_zero = false;
        if (!lc.value.is_inf()) {
            // min over i >= 1 of v(d_i f(w_{0l})) + i beta_{l+1}
            Exp bl1 = beta(l + 1, wspec.q);
            ExtExp best = ExtExp::infinity();
            unsigned long best_i = 0;
            bool tie = false;
            for (unsigned long i = 1; i <= f.degree(); ++i) {
                WSeries di = hasse(f, i);
                if (di.is_zero()) continue;
                Series dil = eval(di, w0l);
                if (dil.is_exact_zero()) continue;
                ExtExp cand = dil.valuation() + ExtExp(Exp(static_cast<long>(i)) * bl1);
                if (cand < best) {
                    best = cand;
                    best_i = i;
                    tie = false;
                } else if (cand == best) {
                    tie = true;
                }
            }
            if (best.is_inf()) {
                // constant polynomial: (2) and (3) are vacuous
                lc.ok = true;
            } else if (!tie && lc.value < best) {
                unsigned long e;
                if (is_power_of(best_i, wspec.p, e)) {
                    lc.ok = true;
                    lc.e = e;
                }
            }
        }
        checks.push_back(std::move(lc));
    }

    if (all_zero) throw ZeroFunction();

    // smallest l0 whose whole suffix passes with one constant value
    for (std::size_t k = 0; k < checks.size(); ++k) {
        bool good = true;
        for (std::size_t j = k; j < checks.size(); ++j) {
            if (!checks[j].ok || !(checks[j].value == checks[k].value)) {
                good = false;
                break;
            }
        }
        if (good) {
            StabilizationCert cert;
            cert.l0 = l_min + static_cast<unsigned long>(k);
            cert.e = checks[k].e;
            cert.value = checks[k].value.finite();
            cert.trace = std::move(trace);
            cert.non_paper_regime = !c.is_zero() && beta_shift < 1;
            for (std::size_t j = k; j < checks.size(); ++j)
                if (checks[j].e != cert.e) cert.e_varies = true;
            return cert;
        }
    }
    throw Inconclusive(l_max, "no stabilization level certified within the window up to l_max = " +
                                  std::to_string(l_max));
}

}  // namespace vallab
