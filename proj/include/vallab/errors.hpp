#pragma once

#include <stdexcept>
#include <string>

namespace vallab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroupMismatch : Error {
    GroupMismatch() : Error("series operands live in different value groups") {}
    explicit GroupMismatch(const std::string& what) : Error(what) {}
};

struct IndeterminateValuation : Error {
    IndeterminateValuation()
        : Error("valuation indeterminate: all terms below the precision bound vanished") {}
    explicit IndeterminateValuation(const std::string& what) : Error(what) {}
};

struct SupportNotDivisible : Error {
    std::string offending;
    explicit SupportNotDivisible(const std::string& exp)
        : Error("exponent " + exp + " does not divide back into the value group"), offending(exp) {}
};

struct NoRootInField : Error {
    explicit NoRootInField(const std::string& what) : Error(what) {}
};

struct InfiniteIndex : Error {
    explicit InfiniteIndex(const std::string& what) : Error(what) {}
};

struct DuplicateSlopes : Error {
    DuplicateSlopes() : Error("slope lines must have pairwise distinct slopes") {}
};

struct ZeroFunction : Error {
    ZeroFunction() : Error("polynomial evaluates to exact zero at every tested truncation") {}
};

struct Inconclusive : Error {
    unsigned long budget;
    explicit Inconclusive(unsigned long budget_, const std::string& what)
        : Error(what), budget(budget_) {}
};

struct InsufficientDegreeCap : Error {
    unsigned long needed;
    explicit InsufficientDegreeCap(unsigned long needed_)
        : Error("g-oracle degree cap too small, need at least " + std::to_string(needed_)),
          needed(needed_) {}
};

struct NonSimpleResidueRoot : Error {
    NonSimpleResidueRoot() : Error("residue root is not simple: reduced derivative vanishes") {}
};

struct NoResidueRoot : Error {
    NoResidueRoot() : Error("given residue is not a root of the reduced polynomial") {}
};

struct PrecisionTooLow : Error {
    explicit PrecisionTooLow(const std::string& what) : Error(what) {}
};

struct ReduciblePolynomial : Error {
    explicit ReduciblePolynomial(const std::string& what) : Error(what) {}
};

struct FrameMismatch : Error {
    explicit FrameMismatch(const std::string& what) : Error(what) {}
};

struct DegenerateZero : Error {
    DegenerateZero() : Error("expression collapsed to exact zero") {}
};

struct ParseError : Error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace vallab
