#include "vallab/groups.hpp"

#include <set>

namespace vallab {

namespace {

// Smallest n >= 1 with n*a in base, searched up to a fixed bound.
constexpr unsigned long kOrderSearchBound = 1u << 16;

unsigned long order_mod(const Exp& a, const GroupSpec& base) {
    Exp acc = 0;
    for (unsigned long n = 1; n <= kOrderSearchBound; ++n) {
        acc += a;
        if (in_group(acc, base)) return n;
    }
    throw InfiniteIndex("adjoined element " + exp_str(a) +
                        " has no finite order modulo the base group");
}

}  // namespace

GroupSpec GroupSpec::p_prime_denom(unsigned long p) {
    GroupSpec g;
    g.kind_ = Kind::PPrimeDenom;
    g.p_ = p;
    return g;
}

GroupSpec GroupSpec::fin_gen(std::vector<Exp> gens) {
    GroupSpec g;
    g.kind_ = Kind::FinGen;
    g.gens_ = std::move(gens);
    return g;
}

GroupSpec GroupSpec::extended(GroupSpec base, std::vector<Exp> adjoined) {
    GroupSpec g;
    g.kind_ = Kind::Extended;
    g.base_ = std::make_shared<const GroupSpec>(std::move(base));
    g.gens_ = std::move(adjoined);
    return g;
}

bool GroupSpec::operator==(const GroupSpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::PPrimeDenom:
            return p_ == other.p_;
        case Kind::FinGen:
            return gens_ == other.gens_;
        case Kind::Extended:
            return gens_ == other.gens_ && *base_ == *other.base_;
    }
    return false;
}

std::string GroupSpec::str() const {
    switch (kind_) {
        case Kind::PPrimeDenom:
            return "Gamma(p=" + std::to_string(p_) + ")";
        case Kind::FinGen: {
            std::string s = "(";
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                if (i) s += ",";
                s += exp_str(gens_[i]);
            }
            return s + ")";
        }
        case Kind::Extended: {
            std::string s = base_->str();
            for (const auto& a : gens_) s += " + Z*" + exp_str(a);
            return s;
        }
    }
    return "?";
}

bool in_group(const Exp& gamma, const GroupSpec& g) {
    switch (g.kind()) {
        case GroupSpec::Kind::PPrimeDenom: {
            // denominator coprime to p <=> p does not divide the reduced denominator
            return !mpz_divisible_ui_p(gamma.get_den().get_mpz_t(), g.p());
        }
        case GroupSpec::Kind::FinGen: {
            // On a common denominator d the group is gcd(a_1..a_n)/d * Z.
            mpz_class d = 1;
            for (const auto& e : g.gens()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den().get_mpz_t());
            mpz_class gcd = 0;
            for (const auto& e : g.gens()) {
                mpz_class a = e.get_num() * (d / e.get_den());
                mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), a.get_mpz_t());
            }
            Exp x = gamma * Exp(d);
            if (x.get_den() != 1) return false;
            if (gcd == 0) return x == 0;
            return mpz_divisible_p(x.get_num().get_mpz_t(), gcd.get_mpz_t());
        }
        case GroupSpec::Kind::Extended: {
            // Coset enumeration over the adjoined generators' finite orders.
            std::vector<unsigned long> orders;
            orders.reserve(g.gens().size());
            for (const auto& a : g.gens()) orders.push_back(order_mod(a, g.base()));
            std::vector<unsigned long> k(g.gens().size(), 0);
            while (true) {
                Exp shift = 0;
                for (std::size_t i = 0; i < k.size(); ++i) shift += Exp(static_cast<long>(k[i])) * g.gens()[i];
                if (in_group(gamma - shift, g.base())) return true;
                std::size_t i = 0;
                for (; i < k.size(); ++i) {
                    if (++k[i] < orders[i]) break;
                    k[i] = 0;
                }
                if (i == k.size()) return false;
            }
        }
    }
    return false;
}

bool in_p_multiple(const Exp& gamma, unsigned long p, const GroupSpec& g) {
    Exp scaled = gamma / Exp(static_cast<long>(p));
    return in_group(scaled, g);
}

unsigned long index(const GroupSpec& ext, const GroupSpec& base) {
    if (ext == base) return 1;
    if (ext.kind() != GroupSpec::Kind::Extended || !(ext.base() == base))
        throw Error("index requires ext = Extended(base, ...)");
    // Collect all shifts sum k_i * a_i, k_i < ord(a_i), and count distinct
    // cosets modulo base.
    std::vector<unsigned long> orders;
    for (const auto& a : ext.gens()) orders.push_back(order_mod(a, base));
    std::vector<Exp> reps;
    std::vector<unsigned long> k(ext.gens().size(), 0);
    while (true) {
        Exp shift = 0;
        for (std::size_t i = 0; i < k.size(); ++i) shift += Exp(static_cast<long>(k[i])) * ext.gens()[i];
        bool seen = false;
        for (const auto& r : reps) {
            if (in_group(shift - r, base)) {
                seen = true;
                break;
            }
        }
        if (!seen) reps.push_back(shift);
        std::size_t i = 0;
        for (; i < k.size(); ++i) {
            if (++k[i] < orders[i]) break;
            k[i] = 0;
        }
        if (i == k.size()) break;
    }
    return static_cast<unsigned long>(reps.size());
}

}  // namespace vallab
