#include "vallab/field.hpp"

#include <algorithm>

namespace vallab {

namespace {

constexpr unsigned long kMaxOrder = 1ul << 20;

using Poly = std::vector<unsigned long>;  // little-endian over F_p

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& mod, unsigned long p) {
    // mod is monic
    trim(a);
    while (a.size() >= mod.size()) {
        unsigned long lead = a.back();
        std::size_t shift = a.size() - mod.size();
        for (std::size_t i = 0; i < mod.size(); ++i) {
            unsigned long sub = (lead * mod[i]) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, const Poly& mod, unsigned long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(c), mod, p);
}

Poly poly_add(Poly a, const Poly& b, unsigned long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
}

Poly poly_pow_x(unsigned long long e, const Poly& mod, unsigned long p) {
    // x^e mod mod
    Poly result = {1};
    Poly base = poly_mod({0, 1}, mod, p);
    while (e) {
        if (e & 1) result = poly_mul(result, base, mod, p);
        base = poly_mul(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, unsigned long p) {
    trim(a);
    trim(b);
    auto inv_mod_p = [p](unsigned long x) {
        unsigned long r = 1;
        unsigned long e = p - 2;
        unsigned long base = x % p;
        while (e) {
            if (e & 1) r = (r * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b, with b made monic on the fly
        unsigned long lead_inv = inv_mod_p(b.back());
        Poly bm = b;
        for (auto& c : bm) c = (c * lead_inv) % p;
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Poly& modulus, unsigned long p, unsigned long m) {
    if (m == 1) return true;
    // x^{p^m} == x mod modulus
    unsigned long long pm = 1;
    for (unsigned long i = 0; i < m; ++i) pm *= p;
    Poly xpm = poly_pow_x(pm, modulus, p);
    Poly x = poly_mod({0, 1}, modulus, p);
    Poly diff = poly_add(xpm, [&] {
        Poly neg = x;
        for (auto& c : neg) c = (p - c) % p;
        return neg;
    }(), p);
    if (!diff.empty()) return false;
    // for every prime divisor l of m: gcd(x^{p^{m/l}} - x, modulus) constant
    std::vector<unsigned long> prime_divs;
    unsigned long mm = m;
    for (unsigned long l = 2; l <= mm; ++l) {
        if (mm % l) continue;
        prime_divs.push_back(l);
        while (mm % l == 0) mm /= l;
    }
    for (unsigned long l : prime_divs) {
        unsigned long long pk = 1;
        for (unsigned long i = 0; i < m / l; ++i) pk *= p;
        Poly xpk = poly_pow_x(pk, modulus, p);
        Poly neg = x;
        for (auto& c : neg) c = (p - c) % p;
        Poly d = poly_add(xpk, neg, p);
        Poly g = poly_gcd(modulus, d, p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace

FieldCtx::FieldCtx(unsigned long p, unsigned long m) : p_(p), m_(m) {
    if (p < 2 || m < 1) throw Error("bad field parameters");
    order_ = 1;
    for (unsigned long i = 0; i < m; ++i) {
        if (order_ > kMaxOrder / p) throw Error("field order too large");
        order_ *= p;
    }
    // smallest monic irreducible of degree m, ordering by encoding of the
    // non-leading coefficients
    modulus_.assign(m + 1, 0);
    modulus_[m] = 1;
    for (unsigned long e = 0;; ++e) {
        if (e >= order_) throw Error("no irreducible modulus found");
        unsigned long x = e;
        for (unsigned long i = 0; i < m; ++i) {
            modulus_[i] = x % p;
            x /= p;
        }
        if (is_irreducible(modulus_, p_, m_)) break;
    }
}

FieldCtx::FieldCtx(unsigned long p, unsigned long m, std::vector<unsigned long> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (p < 2 || m < 1) throw Error("bad field parameters");
    order_ = 1;
    for (unsigned long i = 0; i < m; ++i) {
        if (order_ > kMaxOrder / p) throw Error("field order too large");
        order_ *= p;
    }
    check_modulus();
}

void FieldCtx::check_modulus() const {
    if (modulus_.size() != m_ + 1 || modulus_.back() != 1)
        throw Error("modulus must be monic of degree m");
    for (auto c : modulus_)
        if (c >= p_) throw Error("modulus coefficient out of range");
    if (!is_irreducible(modulus_, p_, m_)) throw Error("modulus is reducible");
}

Coeff::Coeff(const FieldCtx& ctx, long value) : ctx_(&ctx), repr_(ctx.m(), 0) {
    long p = static_cast<long>(ctx.p());
    long v = ((value % p) + p) % p;
    repr_[0] = static_cast<unsigned long>(v);
}

Coeff::Coeff(const FieldCtx& ctx, std::vector<unsigned long> repr) : ctx_(&ctx), repr_(std::move(repr)) {
    if (repr_.size() > ctx.m()) throw Error("representation longer than field degree");
    repr_.resize(ctx.m(), 0);
    for (auto c : repr_)
        if (c >= ctx.p()) throw Error("coefficient out of range");
}

Coeff Coeff::from_encoding(const FieldCtx& ctx, unsigned long e) {
    std::vector<unsigned long> r(ctx.m(), 0);
    for (unsigned long i = 0; i < ctx.m(); ++i) {
        r[i] = e % ctx.p();
        e /= ctx.p();
    }
    if (e) throw Error("encoding out of range");
    return Coeff(ctx, std::move(r));
}

unsigned long Coeff::encoding() const {
    unsigned long e = 0;
    for (std::size_t i = repr_.size(); i-- > 0;) e = e * ctx_->p() + repr_[i];
    return e;
}

const FieldCtx& Coeff::ctx() const {
    if (!ctx_) throw Error("default-constructed coefficient has no field");
    return *ctx_;
}

bool Coeff::is_zero() const {
    return std::all_of(repr_.begin(), repr_.end(), [](unsigned long c) { return c == 0; });
}

bool Coeff::is_one() const { return encoding() == 1; }

void Coeff::require_same(const Coeff& o) const {
    if (!ctx_ || !o.ctx_ || !(*ctx_ == *o.ctx_)) throw Error("coefficients from different fields");
}

Coeff Coeff::operator+(const Coeff& o) const {
    require_same(o);
    Coeff r = *this;
    for (std::size_t i = 0; i < repr_.size(); ++i) r.repr_[i] = (repr_[i] + o.repr_[i]) % ctx_->p();
    return r;
}

Coeff Coeff::operator-() const {
    Coeff r = *this;
    for (auto& c : r.repr_) c = (ctx_->p() - c) % ctx_->p();
    return r;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
    require_same(o);
    Poly c = poly_mul(repr_, o.repr_, ctx_->modulus(), ctx_->p());
    c.resize(ctx_->m(), 0);
    Coeff r = *this;
    r.repr_ = std::move(c);
    return r;
}

Coeff Coeff::pow(unsigned long long n) const {
    Coeff result(*ctx_, 1);
    Coeff base = *this;
    while (n) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

Coeff Coeff::inv() const {
    if (is_zero()) throw Error("inverse of zero");
    return pow(ctx_->order() - 2);
}

bool Coeff::operator==(const Coeff& o) const {
    if (!ctx_ || !o.ctx_) return ctx_ == o.ctx_;
    return *ctx_ == *o.ctx_ && repr_ == o.repr_;
}

std::string Coeff::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = repr_.size(); i-- > 0;) {
        if (repr_[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(repr_[i]);
        } else {
            if (repr_[i] != 1) s += std::to_string(repr_[i]) + "*";
            s += (i == 1) ? "g" : "g^" + std::to_string(i);
        }
    }
    return s;
}

Coeff pth_root(const Coeff& c) {
    const FieldCtx& f = c.ctx();
    unsigned long long e = 1;
    for (unsigned long i = 0; i + 1 < f.m(); ++i) e *= f.p();
    return c.pow(e);  // c^{p^{m-1}}
}

Coeff nth_root(const Coeff& c, unsigned long n) {
    if (n == 0) throw Error("0th root undefined");
    const FieldCtx& f = c.ctx();
    for (unsigned long e = 0; e < f.order(); ++e) {
        Coeff d = Coeff::from_encoding(f, e);
        if (d.pow(n) == c) return d;
    }
    throw NoRootInField("no " + std::to_string(n) + "-th root of " + c.str() + " in F_" +
                        std::to_string(f.order()) + "; enlarge m");
}

}  // namespace vallab
