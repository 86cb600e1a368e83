#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vallab/construction.hpp"
#include "vallab/corpus.hpp"

using namespace vallab;

namespace {

FieldCtx& f2() {
    static FieldCtx ctx(2, 1);
    return ctx;
}

Series neg(const Series& s) {
    return scale(s, -Coeff(s.ctx(), 1));
}

}  // namespace

TEST_CASE("make_w") {
    Series w = make_w({2, 3, 0, 3}, f2());
    REQUIRE(w.terms().size() == 3);
    auto it = w.terms().begin();
    CHECK(it->first == make_exp(2, 3));
    ++it;
    CHECK(it->first == make_exp(8, 9));
    ++it;
    CHECK(it->first == make_exp(26, 27));
    CHECK(w.prec() == ExtExp(make_exp(80, 81)));

    Series w1 = make_w({2, 3, 1, 2}, f2());
    REQUIRE(w1.terms().size() == 2);
    CHECK(w1.terms().begin()->first == make_exp(8, 9));
    CHECK(w1.valuation() == ExtExp(make_exp(8, 9)));
}

TEST_CASE("make_w head/tail partition") {
    for (unsigned long l : {1ul, 2ul, 3ul}) {
        for (unsigned long d : {1ul, 2ul}) {
            Series head = exact_copy(make_w({2, 3, 0, l}, f2()));
            Series tail = exact_copy(make_w({2, 3, l, d}, f2()));
            Series whole = exact_copy(make_w({2, 3, 0, l + d}, f2()));
            CHECK(add(head, tail) == whole);
        }
    }
}

TEST_CASE("make_s and make_x") {
    Series s = make_s({2, 3, 0, 3}, f2());
    auto it = s.terms().begin();
    CHECK(it->first == make_exp(1, 3));
    ++it;
    CHECK(it->first == make_exp(4, 9));
    ++it;
    CHECK(it->first == make_exp(13, 27));

    // frobenius(s) recovers w at the matching precision (s lives in Gamma')
    CHECK(frobenius(s) == make_w({2, 3, 0, 3}, f2()).in_group_view(gamma_prime_group(2)));

    Series x = make_x({2, 3, 0, 3}, f2());
    CHECK(x.valuation() == ExtExp(make_exp(1, 3)));  // min(1/3, 3/4)
    // the t^(3/4) shift sits beyond prec(s) = beta_4/2 and is absorbed in the
    // O-term; its group is nonetheless the (1/4)-extension
    CHECK(in_group(make_exp(3, 4), x.group()));
    CHECK(x.prec() == make_s({2, 3, 0, 3}, f2()).prec());
}

TEST_CASE("x satisfies the defining equation exactly on exact truncations") {
    for (auto [p, q] : std::vector<std::pair<unsigned long, unsigned long>>{{2, 3}, {3, 2}}) {
        FieldCtx ctx(p, 1);
        WConstructionParams params{p, q, 0, 4};
        GroupSpec amb = gamma_p2_group(p);
        // the exact finite analogue of x: the shift monomial is re-added since
        // the truncated x absorbs it into its O-term
        Series x = add(exact_copy(make_s(params, ctx)).in_group_view(amb),
                       Series::monomial(ctx, amb, make_exp((long)p + 1, (long)(p * p)),
                                        Coeff(ctx, 1)));
        Series w = exact_copy(make_w(params, ctx)).in_group_view(amb);
        Series tp1 = Series::monomial(ctx, amb, Exp((long)p + 1), Coeff(ctx, 1));

        WSeries f(ctx, amb);
        f.set_coeff(p * p, Series::one(ctx, amb));
        f.set_coeff(0, neg(add(tp1, pow(w, p))));
        CHECK(eval(f, x).is_exact_zero());
    }
}

TEST_CASE("x satisfies the defining equation to working precision") {
    WConstructionParams params{2, 3, 0, 4};
    GroupSpec amb = gamma_p2_group(2);
    Series x = make_x(params, f2());
    Series w = make_w(params, f2()).in_group_view(amb);
    Series tp1 = Series::monomial(f2(), amb, Exp(3), Coeff(f2(), 1));

    WSeries f(f2(), amb);
    f.set_coeff(4, Series::one(f2(), amb));
    f.set_coeff(0, neg(add(tp1, pow(w, 2))));
    Series val = eval(f, x);
    CHECK(val.terms().empty());
    CHECK_FALSE(val.prec().is_inf());  // O(t^something), not exact zero
}

TEST_CASE("v(y - w) = (p+1)/p") {
    for (auto [p, q] : std::vector<std::pair<unsigned long, unsigned long>>{{2, 3}, {3, 2}}) {
        FieldCtx ctx(p, 1);
        WConstructionParams params{p, q, 0, 5};
        Series y = make_y(params, ctx);
        Series w = exact_copy(make_w(params, ctx)).in_group_view(gamma_prime_group(p));
        Series diff = add(y, neg(w));
        CHECK(diff.valuation() == ExtExp(make_exp((long)p + 1, (long)p)));
    }
}

namespace {

// the standard quasi-finite description of w^{-1}:
// t^{-2/3} g(h), h = t^{-2/3} w - 1, g geometric
QuasiFinite winv_rep(const FieldCtx& ctx, unsigned long cap, unsigned long depth = 8) {
    QuasiFinite z;
    z.gamma = make_exp(-2, 3);
    z.params = {2, 3, 0, depth};
    z.h.push_back({{QFMonomial{make_exp(-2, 3), 1, Coeff(ctx, 1)},
                    QFMonomial{Exp(0), 0, -Coeff(ctx, 1)}}});
    z.g = GOracle::geometric(ctx, cap);
    return z;
}

}  // namespace

TEST_CASE("qf_expand") {
    // target below -1/3: anything higher needs h = t^{-2/3} w - 1 exact at or
    // beyond 1/3, where the support of w accumulates
    Series winv = qf_expand(winv_rep(f2(), 12), make_exp(-10, 27), f2());
    auto it = winv.terms().begin();
    CHECK(it->first == make_exp(-2, 3));
    CHECK(it->second.is_one());
    ++it;
    CHECK(it->first == make_exp(-4, 9));

    // qf_expand(w^{-1}) * w = 1 up to precision
    Series prod = mul(winv, make_w({2, 3, 0, 8}, f2()));
    CHECK(agree(prod, Series::one(f2(), winv.group())));

    // gamma = 0, g = 1 -> the constant 1
    QuasiFinite one;
    one.gamma = 0;
    one.params = {2, 3, 0, 4};
    one.g = GOracle::constant(f2(), Coeff(f2(), 1));
    Series expanded_one = qf_expand(one, Exp(5), f2());
    CHECK(agree_below(expanded_one, Series::one(f2(), expanded_one.group()), ExtExp(Exp(5))));

    // h = t, geometric g -> 1 + t + t^2 + ... below the target
    QuasiFinite geo;
    geo.gamma = 0;
    geo.params = {2, 3, 0, 4};
    geo.h.push_back({{QFMonomial{Exp(1), 0, Coeff(f2(), 1)}}});
    geo.g = GOracle::geometric(f2(), 8);
    Series g = qf_expand(geo, Exp(4), f2());
    for (long n = 0; n < 4; ++n) {
        REQUIRE(g.terms().count(Exp(n)) == 1);
        CHECK(g.terms().at(Exp(n)).is_one());
    }
}

TEST_CASE("qf_expand degree cap accounting") {
    try {
        qf_expand(winv_rep(f2(), 1), Exp(0), f2());
        FAIL("expected InsufficientDegreeCap");
    } catch (const InsufficientDegreeCap& e) {
        CHECK(e.needed == 2);  // target 0 > gamma + (D+1) min v(h) forces D >= 2
    }
}

TEST_CASE("bounded_terms") {
    // frame r = 2, beta = beta_1: v(w_2/t^beta) = 26/27 - 2/3 = 8/27
    Expansion e;
    e.r = 2;
    e.beta = make_exp(2, 3);
    e.params = {2, 3, 0, 8};
    e.terms = {{make_exp(-2, 3), 0, Coeff(f2(), 1)},
               {make_exp(-4, 9), 0, Coeff(f2(), 1)},
               {Exp(0), 1, Coeff(f2(), 1)}};
    e.validate();
    CHECK(e.term_value(e.terms[2]) == make_exp(8, 27));

    auto below = bounded_terms(e, make_exp(-4, 9));
    REQUIRE(below.size() == 1);
    CHECK(below[0].eps == make_exp(-2, 3));

    CHECK(bounded_terms(e, make_exp(-2, 3)).empty());  // strict at the leading value
    CHECK(bounded_terms(e, Exp(1)).size() == 3);
}

TEST_CASE("hensel_lift") {
    GroupSpec g = gamma_group(2);
    Series t = Series::monomial(f2(), g, Exp(1), Coeff(f2(), 1));
    WSeries f(f2(), g);
    f.set_coeff(0, t);
    f.set_coeff(1, Series::one(f2(), g));
    f.set_coeff(2, Series::one(f2(), g));

    Series root = hensel_lift(f, Coeff(f2(), 0), Exp(16));
    Series candidate(f2(), g);  // oracle: sum of t^{2^i}
    for (long e = 1; e < 16; e *= 2) candidate.add_term(Exp(e), Coeff(f2(), 1));
    CHECK(agree_below(root, candidate, ExtExp(Exp(16))));
    Series residual = eval(f, exact_copy(root));
    for (const auto& [exp, c] : residual.terms()) CHECK(Exp(16) <= exp);

    Series other = hensel_lift(f, Coeff(f2(), 1), Exp(16));
    CHECK(agree_below(other, add(candidate, Series::one(f2(), g)), ExtExp(Exp(16))));

    WSeries bad(f2(), g);
    bad.set_coeff(0, t);
    bad.set_coeff(2, Series::one(f2(), g));
    CHECK_THROWS_AS(hensel_lift(bad, Coeff(f2(), 0), Exp(8)), NonSimpleResidueRoot);

    WSeries shifted(f2(), g);
    shifted.set_coeff(0, Series::one(f2(), g));
    shifted.set_coeff(1, Series::one(f2(), g));
    CHECK_THROWS_AS(hensel_lift(shifted, Coeff(f2(), 0), Exp(8)), NoResidueRoot);
}

TEST_CASE("hensel_lift refines monotonically") {
    GroupSpec g = gamma_group(2);
    Series t = Series::monomial(f2(), g, Exp(1), Coeff(f2(), 1));
    WSeries f(f2(), g);
    f.set_coeff(0, t);
    f.set_coeff(1, Series::one(f2(), g));
    f.set_coeff(2, Series::one(f2(), g));
    Series shallow = hensel_lift(f, Coeff(f2(), 0), Exp(8));
    Series deep = hensel_lift(f, Coeff(f2(), 0), Exp(64));
    CHECK(agree_below(shallow, deep, ExtExp(Exp(8))));
}
