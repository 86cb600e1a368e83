#pragma once

#include <memory>
#include <vector>

#include "vallab/exp.hpp"

namespace vallab {

// A rational value group given by one of three membership rules:
//   PPrimeDenom(p): all rationals whose reduced denominator is coprime to p
//                   (the group called Gamma below)
//   FinGen(g1..gn): the subgroup of Q generated by finitely many rationals
//   Extended(base, a1..an): base + Z*a1 + ... + Z*an, each a_i of finite
//                   order modulo base
class GroupSpec {
public:
    enum class Kind { PPrimeDenom, FinGen, Extended };

    static GroupSpec p_prime_denom(unsigned long p);
    static GroupSpec fin_gen(std::vector<Exp> gens);
    static GroupSpec extended(GroupSpec base, std::vector<Exp> adjoined);

    Kind kind() const { return kind_; }
    unsigned long p() const { return p_; }
    const std::vector<Exp>& gens() const { return gens_; }
    const GroupSpec& base() const { return *base_; }

    bool operator==(const GroupSpec& other) const;

    std::string str() const;

private:
    GroupSpec() = default;
    Kind kind_ = Kind::PPrimeDenom;
    unsigned long p_ = 2;                  // PPrimeDenom
    std::vector<Exp> gens_;                // FinGen generators / Extended adjoined
    std::shared_ptr<const GroupSpec> base_;  // Extended
};

bool in_group(const Exp& gamma, const GroupSpec& g);

// gamma in p*G, i.e. gamma/p in G.
bool in_p_multiple(const Exp& gamma, unsigned long p, const GroupSpec& g);

// Group index [ext : base] by coset enumeration over the adjoined
// generators. Requires ext = Extended(base', ...) with base' == base, or
// ext == base (index 1). Throws InfiniteIndex when an adjoined element has
// infinite order modulo base.
unsigned long index(const GroupSpec& ext, const GroupSpec& base);

}  // namespace vallab
