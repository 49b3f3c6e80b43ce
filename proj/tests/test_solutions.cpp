#include "doctest.h"
#include "oracles.hpp"

#include "drham/solutions.hpp"

using namespace drham;
using oracle::P;

namespace {

TruncationConfig cp1_trunc(int eps, int q, int udeg) {
    TruncationConfig t;
    t.eps_max = eps;
    t.q_max = q;
    t.u_deg_max = udeg;
    return t;
}

// the solution u = x with no time dependence
FormalSolution at_x(const Hierarchy& h) {
    FormalSolution u;
    u.n = h.n();
    u.times = {h.n(), h.d_max};
    u.t_max = 0;
    u.trunc = h.trunc;
    Series zero(u.times, 0, h.trunc);
    u.u.assign(static_cast<size_t>(u.n), zero);
    u.u[0] = Series::x(zero);
    return u;
}

}  // namespace

TEST_CASE("series arithmetic") {
    Series z({2, 1}, 2, {});
    Series x = Series::x(z), t = Series::time(z, 2, 1);
    Series s = x * x * t;
    CHECK(s.str() == "1*x^2*t2_1");
    CHECK(s.dx() == Series::constant(z, Coefficient(2)) * x * t);
    CHECK(s.dt(2, 1) == x * x);
    CHECK((s * t).is_zero() == false);
    CHECK((s * t * t).is_zero());  // beyond total degree 2
    CHECK(s.times_t(1, 0).times_t(1, 0).is_zero());
}

TEST_CASE("flow right-hand sides") {
    auto h = build_hierarchy(get_seed("kdv"), 2);
    auto u = at_x(h);
    auto x = Series::x(u.u[0]);
    CHECK(flow_rhs(h, 1, 0, u)[0] == Series::constant(x, Coefficient(1)));
    CHECK(flow_rhs(h, 1, 1, u)[0] == x);
    CHECK(flow_rhs(h, 1, 2, u)[0] == Coefficient(frac(1, 2)) * x * x);
    CHECK(evaluate(P("u*u_1 + eps^2*u_3/12"), u) == x);
}

TEST_CASE("kdv string solution") {
    auto h = build_hierarchy(get_seed("kdv"), 2);
    auto u = expand_string_solution(h, 3);
    CHECK(verify_string_equation(u).passed());
    CHECK(primary_slice_check(u).passed());
    CHECK(x_flow_check(h, u).passed());
    auto s = u.u[0];
    auto x = Series::x(s);
    // d u / d t_1 at t = 0 is the t_1 flow evaluated at u = x
    CHECK(s.dt(1, 1).degree_part(0) == x);
    CHECK(s.dt(1, 2).degree_part(0) == Coefficient(frac(1, 2)) * x * x);
    // t_0 t_1: second derivative from the t_0 flow of the first-order term
    CHECK(s.dt(1, 0).dt(1, 1).degree_part(0) == Series::constant(x, Coefficient(1)));
    CHECK_THROWS_AS(verify_divisor_equation(u, h.seed), std::invalid_argument);
}

TEST_CASE("cp1 string solution") {
    auto h = build_hierarchy(get_seed("cp1", cp1_trunc(2, 2, 8)), 1);
    auto u = expand_string_solution(h, 2);
    auto rs = verify_string_equation(u);
    INFO(rs.str());
    CHECK(rs.passed());
    auto rd = verify_divisor_equation(u, h.seed);
    INFO(rd.str());
    CHECK(rd.passed());
    CHECK(primary_slice_check(u).passed());
    auto rf = cp1_flow_check(h, u);
    INFO(rf.str());
    CHECK(rf.passed());
    CHECK(x_flow_check(h, u).passed());

    // t = 0 slice of the divisor operator applied to u^w
    const Series& w = u.u[1];
    Series at0 = (w.dt(2, 0) - w.q_scaled()).degree_part(0);
    CHECK(at0 == Series::constant(w, Coefficient(1)));

    // too little u-precision is refused
    auto low = build_hierarchy(get_seed("cp1", cp1_trunc(2, 2, 5)), 1);
    CHECK_THROWS_AS(expand_string_solution(low, 2), std::invalid_argument);
}

TEST_CASE("primary slice for every seed") {
    for (auto& name : seed_names()) {
        INFO(name);
        std::optional<TruncationConfig> t;
        if (name == "cp1") t = cp1_trunc(2, 1, 8);
        auto h = build_hierarchy(get_seed(name, t), 1);
        auto u = expand_string_solution(h, 2);
        CHECK(primary_slice_check(u).passed());
        CHECK(verify_string_equation(u).passed());
    }
}

TEST_CASE("order dependence is detected") {
    auto h = build_hierarchy(get_seed("kdv"), 2);
    // a flow that does not commute with the t_1 flow
    h.hamiltonians[{1, 2}] = integrate(P("u^4/24 + u*u_1^2"));
    CHECK_THROWS_AS(expand_string_solution(h, 3), OrderDependence);
}

TEST_CASE("solution json") {
    auto h = build_hierarchy(get_seed("cp1", cp1_trunc(2, 2, 8)), 1);
    auto u = expand_string_solution(h, 2);
    auto j = u.to_json();
    CHECK(j.find("\"t_monomial\"") != std::string::npos);
    CHECK(j.find("\"x_power\"") != std::string::npos);
    CHECK(j.find("\"q\"") != std::string::npos);
    CHECK(u.to_json() == j);
}
