#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vallab/construction.hpp"

namespace vallab {

struct ExtensionSpec {
    enum class Kind { Radical, ArtinSchreier, PaperTower };
    Kind kind;
    GroupSpec base_group;
    WConstructionParams params;
    // Radical
    unsigned long n = 1;
    std::optional<Series> radicand;
    // ArtinSchreier
    std::optional<Expansion> b;

    static ExtensionSpec radical(unsigned long n, Series radicand, GroupSpec base,
                                 WConstructionParams params);
    static ExtensionSpec artin_schreier(Expansion b, GroupSpec base, WConstructionParams params);
    // the fixed L = K[X]/(X^{p^2} - t^{p+1} - w^p); base Gamma reads the
    // tower over K, base Gamma' reads it over K'
    static ExtensionSpec paper_tower(GroupSpec base, WConstructionParams params);
};

struct ExtensionReport {
    std::string name;
    unsigned long degree = 1;
    unsigned long e = 1;
    unsigned long f = 1;
    Exp d = 1;
    enum class Immediate { Yes, No, Inconclusive } immediate = Immediate::Inconclusive;
    std::optional<Exp> witness;  // a value in vL outside the base group, when No
    bool ostrowski_ok = false;
    std::string notes;
};

ExtensionReport invariants_report(const ExtensionSpec& spec, const FieldCtx& ctx);

// Delta(b): the p-divisible pairs of negative value in the expansion frame.
using DeltaSet = std::vector<std::pair<Exp, unsigned long>>;

DeltaSet delta_set(const Expansion& b);

// largest n such that some pair of Delta(b) is p^n-divisible; 0 when empty
unsigned long n_of(const Expansion& b);

struct ASReduceStep {
    Expansion a;       // the subtracted p-th-root chunk
    Expansion b_next;  // b - a^p + a in the same frame
};

ASReduceStep as_reduce(const Expansion& b, const FieldCtx& ctx);

struct ASVerdict {
    bool not_immediate = false;
    std::optional<Exp> witness;  // valuation outside pGamma
    unsigned long steps = 0;
    std::string note;  // filled for Inconclusive
};

ASVerdict as_classify(const Expansion& b, unsigned long max_iter, const FieldCtx& ctx);

struct PthSubtractResult {
    Series a;  // finite-support element whose p-th power was subtracted
    Exp value;
    bool outside_pGamma = false;
};

// Constructive p-th-power subtraction; nullopt when every residual valuation
// within the step budget stays inside pGamma.
std::optional<PthSubtractResult> subtract_pth_powers(const QuasiFinite& z, unsigned long max_steps,
                                                     const FieldCtx& ctx);

struct ProbeResult {
    Exp value;
    bool in_base_group = false;
};

// v(f(x)) for f = sum b_j X^j with K'-coefficients, tested for membership in
// Gamma' = Gamma + (1/p)Z.
ProbeResult immediate_probe(const std::vector<Series>& fcoeffs, const WConstructionParams& params,
                            const Exp& prec, const FieldCtx& ctx);

}  // namespace vallab
