#pragma once

#include "drham/functionals.hpp"
#include "drham/operators.hpp"
#include "drham/report.hpp"

#include <map>
#include <string>
#include <string_view>

namespace drham {

// Finite sum  sum_k a_k e^{k eps dx}  with differential polynomial coefficients in
// v^1, v^2 (rendered as u1, u2). Composition uses e^{k eps dx} o a = a(x + k eps) e^{k eps dx}.
class ShiftOperator {
public:
    explicit ShiftOperator(int nvars = 2, TruncationConfig trunc = {});
    // e^{k eps dx}
    static ShiftOperator shift(int nvars, int k, TruncationConfig trunc = {});
    static ShiftOperator multiplication(const DiffPoly& a);

    int nvars() const { return nvars_; }
    const TruncationConfig& trunc() const { return trunc_; }
    const std::map<int, DiffPoly>& coeffs() const { return coeffs_; }
    DiffPoly coeff(int k) const;
    bool is_zero() const { return coeffs_.empty(); }
    void add(int k, const DiffPoly& a);

    ShiftOperator& operator+=(const ShiftOperator& o);
    ShiftOperator& operator-=(const ShiftOperator& o);
    friend ShiftOperator operator+(ShiftOperator a, const ShiftOperator& b) { return a += b; }
    friend ShiftOperator operator-(ShiftOperator a, const ShiftOperator& b) { return a -= b; }
    friend ShiftOperator operator*(const Coefficient& c, ShiftOperator a);
    bool operator==(const ShiftOperator& o) const;

    // "(<a_k>)*E^k + ..." in increasing k
    std::string str() const;
    // {"terms":[{"k":int,"coeff":<diffpoly>}]}
    std::string to_json(int indent = -1) const;
    static ShiftOperator from_json(std::string_view text, int nvars = 2, TruncationConfig trunc = {});

private:
    int nvars_;
    TruncationConfig trunc_;
    std::map<int, DiffPoly> coeffs_;
};

// a(x + k eps) = sum_n (k eps)^n dx^n a / n!, needs a finite eps bound unless k == 0.
DiffPoly shift_by(const DiffPoly& a, int k);
ShiftOperator shift_compose(const ShiftOperator& a, const ShiftOperator& b);
ShiftOperator shift_power(const ShiftOperator& a, int n);
DiffPoly shift_residue(const ShiftOperator& a);
// Terms with even powers of eps.
DiffPoly even_part(const DiffPoly& f);

// L = e^{eps dx} + v^1 + q e^{v^2} e^{-eps dx}; needs eps_max and u_deg_max.
ShiftOperator toda_lax(TruncationConfig trunc);
// int Res(L^{p+2}) / (p+2)!
LocalFunctional toda_hamiltonian_omega(int p, TruncationConfig trunc);
// v^1 = e^{eps dx/2} u^1,  v^2 = S(eps dx) u^w.
MiuraMap toda_v_of_u(TruncationConfig trunc);
LocalFunctional toda_to_u(const LocalFunctional& h);
// Subtracts int q u^w.
LocalFunctional ancestor_omega0(const LocalFunctional& h_td);

// The extended Toda operator and its transform by w(v) followed by u(w).
HamiltonianOperator toda_operator(TruncationConfig trunc);
HamiltonianOperator toda_operator_in_u(TruncationConfig trunc);

// sum_{i=1}^k binom(k,i) (-1)^{i-1} / i
Rational harmonic_binomial_sum(int k);
Report harmonic_identity_check(int k_max);
// Res(L^{p+2}) at q = 0 equals (v^1)^{p+2}, p = 0..p_max.
Report toda_degree_zero_check(int p_max, TruncationConfig trunc);
// omega Hamiltonian at p = 0 in v, in u, and after the ancestor correction,
// the last compared with the cp1 seed.
Report toda_omega0_check(TruncationConfig trunc);
// The p = 1 logarithmic Hamiltonian at q = 0 from the first two coefficients of S^0.
Report toda_h11_check(int eps_max = 6);
Report cp1_operator_check(int eps_max);
// (D-2) dx S e^{Su} = u dx S e^{Su} + 2 sum_g eps^{2g} B_{2g}/(2g)! dx^{2g+1} S e^{Su},
// together with the form obtained after commuting D past the difference operator.
Report omega_identity_check(int u_deg_max, int eps_max);
// r_{d,g} from (d+2g-1) dx r_{d,g} = u dx r_{d-1,g} + 2 sum_{g1} B_{2g1}/(2g1)! dx^{2g1+1} r_{d,g-g1}
// against the bigraded parts of S e^{Su} - 1 (one variable u = u^w).
std::map<std::pair<int, int>, DiffPoly> omega_r_components(int d_max, int g_max);
Report omega_r_recursion(int d_max, int g_max);

}  // namespace drham
