#include "doctest.h"
#include "oracles.hpp"

#include "drham/operators.hpp"
#include "drham/series.hpp"

using namespace drham;
using oracle::P;

namespace {

HamiltonianOperator dx1() {
    return HamiltonianOperator::standard({{Rational(1)}});
}

OperatorPoly op(std::initializer_list<std::pair<int, const char*>> parts, int n = 1) {
    OperatorPoly o(n);
    for (auto& [j, s] : parts) o.add(j, P(s, n));
    return o;
}

}  // namespace

TEST_CASE("operator composition") {
    CHECK(compose(op({{1, "1"}}), op({{0, "u"}})) == op({{1, "u"}, {0, "u_1"}}));
    CHECK(compose(op({{1, "1"}}), op({{1, "1"}})) == op({{2, "1"}}));
    CHECK(compose(op({{1, "u"}}), op({{1, "u"}})) == op({{2, "u^2"}, {1, "u*u_1"}}));

    oracle::RandomPolys rp(5);
    for (int i = 0; i < 40; ++i) {
        OperatorPoly a(1), b(1), c(1);
        for (int j = 0; j < 3; ++j) {
            a.add(rp.pick(0, 2), rp.poly(1, 2, 2, 0));
            b.add(rp.pick(0, 2), rp.poly(1, 2, 2, 0));
            c.add(rp.pick(0, 2), rp.poly(1, 2, 2, 0));
        }
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        DiffPoly f = rp.poly(1, 2, 2, 0);
        CHECK(compose(a, b).apply(f) == a.apply(b.apply(f)));
    }
}

TEST_CASE("brackets") {
    auto K = dx1();
    CHECK(bracket_ff(integrate(P("u^2/2")), integrate(P("u^2/2")), K).is_zero());
    CHECK(bracket_ff(integrate(P("u^3/6")), integrate(P("u*u_2/2")), K) == integrate(P("u_1^3/2")));
    CHECK(bracket_ff(integrate(P("u^2/2")), integrate(P("u^3/6 + eps^2*u*u_2/24")), K).is_zero());

    CHECK(bracket_df(P("u"), integrate(P("u^2/2")), K) == P("u_1"));
    CHECK(bracket_df(P("u"), integrate(P("u^3/6 + eps^2*u*u_2/24")), K) == P("u*u_1 + eps^2*u_3/12"));
    CHECK(bracket_df(P("3"), integrate(P("u^3")), K).is_zero());
}

TEST_CASE("bracket properties") {
    oracle::RandomPolys rp(31);
    RationalMatrix eta{{0, 1}, {1, 0}};
    auto K = HamiltonianOperator::standard(matrix_inverse(eta));
    for (int i = 0; i < 120; ++i) {
        DiffPoly f = rp.poly(2, 3, 2, 1), g = rp.poly(2, 3, 2, 1);
        LocalFunctional F = integrate(f), G = integrate(g);
        CHECK(bracket_ff(F, G, K) == -bracket_ff(G, F, K));
        CHECK(integrate(bracket_df(f, G, K)) == bracket_ff(F, G, K));
    }
}

TEST_CASE("Miura substitutions") {
    auto id = MiuraMap::identity(1);
    CHECK(miura_poly(P("u^3 + u_1"), id) == P("u^3 + u_1"));
    LocalFunctional kdv = integrate(P("u^3/6 + eps^2*u*u_2/24"));
    CHECK(miura_poly(kdv, id) == kdv);

    TruncationConfig t2;
    t2.eps_max = 2;
    MiuraMap s{{apply_series(PowerSeries::S(8), P("w", 1, t2))}};
    CHECK(miura_poly(integrate(P("u^2/2", 1, t2)), s) == integrate(P("w^2/2 - eps^2*w_1^2/24")));

    // inverse of a nonlinear map composes to the identity at truncation
    TruncationConfig t4;
    t4.eps_max = 4;
    MiuraMap m{{P("u + eps*u*u_1 + eps^2*u_2/3 + eps^3*u^2*u_3", 1, t4)}};
    MiuraMap inv = m.inverse();
    CHECK(substitute(m.images[0], inv.images) == P("u", 1, t4));
    CHECK(substitute(inv.images[0], m.images) == P("u", 1, t4));
}

TEST_CASE("Miura transformation of operators") {
    TruncationConfig t6;
    t6.eps_max = 6;
    auto K = HamiltonianOperator::standard({{Rational(1)}}, t6);
    CHECK(miura_operator(K, MiuraMap::identity(1, t6)) == K);

    // ILW-type map: coefficient (2^{2g-1}-1)/2^{2g-1} |B_2g|/(2g)!
    DiffPoly img = P("u", 1, t6);
    for (int g = 1; g <= 3; ++g) {
        Rational two(mpz_class(1) << (2 * g - 1));
        Rational c = (two - 1) / two * abs(bernoulli(2 * g)) / factorial(2 * g);
        img += DiffPoly::term(1, 2 * g, {{1, 2 * g, 1}}, Coefficient(c) * Coefficient::param("l", g), t6);
    }
    auto Kt = miura_operator(K, MiuraMap{{img}});
    CHECK(Kt.at(1, 1).coeff(3) == P("eps^2*l/12", 1, t6));

    // nonlinear map: transform and transform back
    TruncationConfig t3;
    t3.eps_max = 3;
    auto K3 = HamiltonianOperator::standard({{Rational(1)}}, t3);
    MiuraMap m{{P("u + eps*u*u_1 + eps^2*u^2*u_2", 1, t3)}};
    auto there = miura_operator(K3, m);
    CHECK_FALSE(there == K3);
    CHECK(miura_operator(there, m.inverse()) == K3);
}

TEST_CASE("tau symmetry") {
    auto K = dx1();
    DensityFamily single{{{1, -1}, P("u")}, {{1, 0}, P("u")}};
    CHECK(tau_symmetry_check(single, K, 0).passed());

    DensityFamily dr{{{1, -1}, P("u")}, {{1, 0}, P("u^2/2 + eps^2*u_2/24")}, {{1, 1}, P("u^3/6 + eps^2*u*u_2/24 + eps^4*u_4/1152")}};
    Report r = tau_symmetry_check(dr, K, 1);
    CHECK_FALSE(r.passed());
    // hand computation: {u, gbar_1} - {g_0, gbar_0} = eps^2 u_3 (1/12 - 1/24)
    DiffPoly lhs = dx(P("u^2/2 + eps^2*u_2/12"));
    DiffPoly rhs = P("u*u_1 + eps^2*u_3/24");
    CHECK(lhs - rhs == P("eps^2*u_3/24"));
    CHECK(r.pairs.front().residual == P("eps^2*u_3/24").str());

    FunctionalFamily gbar{{{1, 0}, integrate(P("u^2/2"))}, {{1, 1}, integrate(P("u^3/6 + eps^2*u*u_2/24"))}};
    auto h = tau_densities(gbar);
    CHECK(h.at({1, 0}) == P("u^2/2 + eps^2*u_2/12"));
    CHECK(h.at({1, -1}) == P("u"));
}

TEST_CASE("report json") {
    Report r;
    r.check = "demo";
    r.add("a", true);
    r.add("b", false, "u");
    CHECK(r.to_json() == R"({"check":"demo","pairs":[{"idx":"a","residual_zero":true},{"idx":"b","residual":"u","residual_zero":false}],"passed":false})");
}
