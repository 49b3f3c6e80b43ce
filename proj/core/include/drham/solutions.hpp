#pragma once

#include "drham/recursion.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace drham {

struct OrderDependence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesKey {
    std::vector<int> t;  // exponent of each time variable, see TimeIndex
    int x = 0;
    int eps = 0;
    auto operator<=>(const SeriesKey&) const = default;
};

// Times t^beta_d, beta = 1..n, d = 0..d_max, enumerated beta-major.
struct TimeIndex {
    int n = 1;
    int d_max = 0;
    int size() const { return n * (d_max + 1); }
    int of(int beta, int d) const { return (beta - 1) * (d_max + 1) + d; }
    int beta(int i) const { return i / (d_max + 1) + 1; }
    int d(int i) const { return i % (d_max + 1); }
};

// Polynomial in the times (total degree <= t_max), x and eps (<= eps_max),
// with coefficients that may carry q (<= q_max).
class Series {
public:
    Series() = default;
    Series(TimeIndex times, int t_max, TruncationConfig trunc) : times_(times), t_max_(t_max), trunc_(trunc) {}

    static Series constant(const Series& like, const Coefficient& c, int eps = 0);
    static Series x(const Series& like);
    static Series time(const Series& like, int beta, int d);

    const TimeIndex& times() const { return times_; }
    int t_max() const { return t_max_; }
    const TruncationConfig& trunc() const { return trunc_; }
    const std::map<SeriesKey, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const SeriesKey& k, const Coefficient& c);

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Coefficient& c, const Series& a);
    bool operator==(const Series& o) const { return terms_ == o.terms_; }

    Series dx() const;
    Series dt(int beta, int d) const;
    Series times_t(int beta, int d) const;
    Series q_scaled() const;  // q d/dq
    // terms of total time degree n (or <= n)
    Series degree_part(int n) const;
    Series up_to_degree(int n) const;
    // terms containing only t^*_0
    Series primary_slice() const;

    std::string str() const;

private:
    TimeIndex times_;
    int t_max_ = 0;
    TruncationConfig trunc_;
    std::map<SeriesKey, Coefficient> terms_;
};

int time_degree(const SeriesKey& k);

struct FormalSolution {
    int n = 1;
    TimeIndex times;
    int t_max = 0;
    TruncationConfig trunc;
    std::vector<Series> u;  // u[alpha - 1]

    // lines "u^a = ..."
    std::string str() const;
    // [{"alpha","t_monomial":[[beta,d,exp],..],"x_power","eps","q","coeff"}]
    std::string to_json(int indent = -1) const;
};

// Substitutes the series for the jets of f.
Series evaluate(const DiffPoly& f, const FormalSolution& u);
// eta^{alpha mu} dx delta gbar_{beta,d} / delta u^mu evaluated on u.
std::vector<Series> flow_rhs(const Hierarchy& h, int beta, int d, const FormalSolution& u);

// Least u_deg_max for which a hierarchy determines the string solution up to
// total time degree t_max exactly.
int required_u_degree(const Hierarchy& h, int t_max);

// u^alpha|_{t=0} = delta^{alpha,1} x, integrated degree by degree in the times
// t^beta_d (d <= h.d_max). Each coefficient is obtained from every flow
// containing its variable; disagreement throws OrderDependence.
FormalSolution expand_string_solution(const Hierarchy& h, int t_max);

// (d/dt^1_0 - sum t^a_{n+1} d/dt^a_n) u^a = delta^{a,1} below the top degree.
Report verify_string_equation(const FormalSolution& u);
// d u/dt^gamma_0 - q du/dq - sum c^mu_{nu gamma} t^nu_{d+1} du/dt^mu_d = delta^{a,gamma};
// the seed must declare structure constants and a degree-2 class.
Report verify_divisor_equation(const FormalSolution& u, const CftSeed& seed);
// u^a restricted to t_{>=1} = 0 equals t^a_0 + delta^{a,1} x.
Report primary_slice_check(const FormalSolution& u);
// The t^1_0 flow equals dx, on the solution.
Report x_flow_check(const Hierarchy& h, const FormalSolution& u);
// cp1: the flow of gbar_{w,0} is (q dx (S e^{S u^w} - 1), u^1_x), as differential
// polynomials and on the solution.
Report cp1_flow_check(const Hierarchy& h, const FormalSolution& u);

}  // namespace drham
