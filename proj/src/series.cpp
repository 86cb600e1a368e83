#include "vallab/series.hpp"

namespace vallab {

Series::Series(const FieldCtx& ctx, GroupSpec group)
    : ctx_(&ctx), group_(std::move(group)), prec_(ExtExp::infinity()) {}

Series Series::truncated_zero(const FieldCtx& ctx, GroupSpec group, ExtExp prec) {
    Series s(ctx, std::move(group));
    s.prec_ = std::move(prec);
    return s;
}

Series Series::monomial(const FieldCtx& ctx, GroupSpec group, const Exp& e, const Coeff& c) {
    Series s(ctx, std::move(group));
    s.add_term(e, c);
    return s;
}

Series Series::one(const FieldCtx& ctx, GroupSpec group) {
    return monomial(ctx, std::move(group), Exp(0), Coeff(ctx, 1));
}

void Series::add_term(const Exp& e, const Coeff& c) {
    if (c.is_zero()) return;
    if (!(ExtExp(e) < prec_)) return;  // beyond the exactness bound: unknown
    if (!in_group(e, group_)) throw GroupMismatch("exponent " + exp_str(e) + " not in group " + group_.str());
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Series Series::truncated(const ExtExp& new_prec) const {
    Series s(*ctx_, group_);
    s.prec_ = min(prec_, new_prec);
    for (const auto& [e, c] : terms_)
        if (ExtExp(e) < s.prec_) s.terms_.emplace(e, c);
    return s;
}

Series Series::in_group_view(GroupSpec g) const {
    Series s(*ctx_, std::move(g));
    s.prec_ = prec_;
    for (const auto& [e, c] : terms_) {
        if (!in_group(e, s.group_))
            throw GroupMismatch("exponent " + exp_str(e) + " not in group " + s.group_.str());
        s.terms_.emplace(e, c);
    }
    return s;
}

ExtExp Series::valuation() const {
    if (!terms_.empty()) return ExtExp(terms_.begin()->first);
    if (prec_.is_inf()) return ExtExp::infinity();
    throw IndeterminateValuation("series is O(t^" + prec_.str() + ") with no known term");
}

Coeff Series::leading_coeff() const {
    ExtExp v = valuation();
    if (v.is_inf()) return Coeff(*ctx_, 0);
    return terms_.begin()->second;
}

bool Series::operator==(const Series& o) const {
    return group_ == o.group_ && prec_ == o.prec_ && terms_ == o.terms_;
}

std::string Series::str() const {
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string coeff = c.str();
        if (e == 0) {
            s += coeff;
        } else {
            std::string mono = "t^(" + exp_str(e) + ")";
            if (c.is_one())
                s += mono;
            else if (coeff.find('+') != std::string::npos)
                s += "(" + coeff + ")*" + mono;
            else
                s += coeff + "*" + mono;
        }
    }
    if (!prec_.is_inf()) {
        if (!s.empty()) s += " + ";
        s += "O(t^(" + prec_.str() + "))";
    }
    if (s.empty()) s = "0";
    return s;
}

namespace {

void require_compatible(const Series& a, const Series& b) {
    if (!(a.group() == b.group())) throw GroupMismatch();
    if (!(a.ctx() == b.ctx())) throw Error("series over different coefficient fields");
}

}  // namespace

Series add(const Series& a, const Series& b) {
    require_compatible(a, b);
    Series s = Series::truncated_zero(a.ctx(), a.group(), min(a.prec(), b.prec()));
    for (const auto& [e, c] : a.terms()) s.add_term(e, c);
    for (const auto& [e, c] : b.terms()) s.add_term(e, c);
    return s;
}

Series sub(const Series& a, const Series& b) {
    require_compatible(a, b);
    Series s = Series::truncated_zero(a.ctx(), a.group(), min(a.prec(), b.prec()));
    for (const auto& [e, c] : a.terms()) s.add_term(e, c);
    for (const auto& [e, c] : b.terms()) s.add_term(e, -c);
    return s;
}

Series mul(const Series& a, const Series& b) {
    require_compatible(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return Series(a.ctx(), a.group());
    // prec = min(prec_a + v(b), prec_b + v(a)); IndeterminateValuation propagates
    ExtExp prec = min(a.prec() + b.valuation(), b.prec() + a.valuation());
    Series s = Series::truncated_zero(a.ctx(), a.group(), prec);
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) s.add_term(ea + eb, ca * cb);
    return s;
}

Series scale(const Series& a, const Coeff& c) {
    Series s = Series::truncated_zero(a.ctx(), a.group(), a.prec());
    for (const auto& [e, ac] : a.terms()) s.add_term(e, ac * c);
    return s;
}

Series shift(const Series& a, const Exp& e) {
    Series s = Series::truncated_zero(a.ctx(), a.group(), a.prec() + ExtExp(e));
    for (const auto& [ea, c] : a.terms()) s.add_term(ea + e, c);
    return s;
}

Series pow(const Series& a, unsigned long n) {
    Series r = Series::one(a.ctx(), a.group());
    for (unsigned long i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

Series invert(const Series& s) {
    ExtExp v = s.valuation();
    if (v.is_inf()) throw Error("cannot invert the zero series");
    if (s.is_exact() && s.terms().size() > 1)
        throw PrecisionTooLow(
            "inverting an exact series with several terms yields an infinite expansion; "
            "truncate it or pass an output precision");
    ExtExp out = s.is_exact() ? ExtExp::infinity() : ExtExp(s.prec().finite() - 2 * v.finite());
    return invert(s, out);
}

Series invert(const Series& s, const ExtExp& out_prec) {
    ExtExp vv = s.valuation();
    if (vv.is_inf()) throw Error("cannot invert the zero series");
    Exp v = vv.finite();
    Coeff c = s.leading_coeff();
    // s = c t^v (1 + z), v(z) > 0
    Series unit = scale(shift(s, -v), c.inv());
    Series z = sub(unit, Series::one(s.ctx(), s.group()));
    // sum over n of (-z)^n until the tail valuation clears out_prec + v
    ExtExp needed = out_prec + ExtExp(v);
    Series geo = Series::one(s.ctx(), s.group());
    if (!z.is_exact_zero()) {
        if (needed.is_inf())
            throw PrecisionTooLow("geometric inversion of a non-monomial needs a finite output precision");
        Series neg_z = scale(z, -Coeff(s.ctx(), 1));
        Series zn = Series::one(s.ctx(), s.group());
        Exp vz = z.valuation().finite();
        if (vz <= 0) throw Error("unit normalization failed: v(z) <= 0");
        Exp acc = vz;
        while (true) {
            zn = mul(zn, neg_z);
            geo = add(geo, zn);
            if (ExtExp(acc) >= needed) break;
            acc += vz;
        }
    }
    return scale(shift(geo, -v), c.inv()).truncated(out_prec);
}

Series frobenius(const Series& s) {
    unsigned long p = s.ctx().p();
    Exp pe(static_cast<long>(p));
    Series r = Series::truncated_zero(s.ctx(), s.group(), s.prec() * pe);
    for (const auto& [e, c] : s.terms()) r.add_term(e * pe, c.pow(p));
    return r;
}

Series pth_root_series(const Series& s) {
    unsigned long p = s.ctx().p();
    Exp pe(static_cast<long>(p));
    Series r = Series::truncated_zero(s.ctx(), s.group(), s.prec() * (Exp(1) / pe));
    for (const auto& [e, c] : s.terms()) {
        Exp down = e / pe;
        if (!in_group(down, s.group())) throw SupportNotDivisible(exp_str(e));
        r.add_term(down, pth_root(c));
    }
    return r;
}

Series exact_copy(const Series& s) {
    Series out(s.ctx(), s.group());
    for (const auto& [e, c] : s.terms()) out.add_term(e, c);
    return out;
}

bool agree_below(const Series& a, const Series& b, const ExtExp& bound) {
    ExtExp cut = min(bound, min(a.prec(), b.prec()));
    Series d = sub(a, b);
    for (const auto& [e, c] : d.terms()) {
        (void)c;
        if (ExtExp(e) < cut) return false;
    }
    return true;
}

}  // namespace vallab
