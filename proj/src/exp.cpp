#include "vallab/exp.hpp"

namespace vallab {

Exp parse_exp(const std::string& s) {
    if (s == "inf") throw Error("infinite exponent not allowed here");
    if (s.empty()) throw Error("empty exponent string");
    try {
        Exp e(s);
        e.canonicalize();
        return e;
    } catch (const std::invalid_argument&) {
        throw Error("bad exponent literal: \"" + s + "\"");
    }
}

std::string exp_str(const Exp& e) {
    if (e.get_den() == 1) return e.get_num().get_str();
    return e.get_num().get_str() + "/" + e.get_den().get_str();
}

Exp beta(unsigned long i, unsigned long q) {
    if (i == 0) throw Error("beta index must be >= 1");
    mpz_class qi;
    mpz_ui_pow_ui(qi.get_mpz_t(), q, static_cast<unsigned long>(i));
    Exp e(qi - 1, qi);
    e.canonicalize();
    return e;
}

}  // namespace vallab
