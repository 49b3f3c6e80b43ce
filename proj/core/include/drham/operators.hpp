#pragma once

#include "drham/functionals.hpp"
#include "drham/report.hpp"

#include <map>
#include <vector>

namespace drham {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix matrix_inverse(const RationalMatrix& m);
bool is_symmetric(const RationalMatrix& m);

// sum_j a_j dx^j
class OperatorPoly {
public:
    explicit OperatorPoly(int nvars = 1, TruncationConfig trunc = {}) : nvars_(nvars), trunc_(trunc) {}

    static OperatorPoly dx_power(int nvars, int j, const Coefficient& c = Coefficient(1), TruncationConfig trunc = {});
    static OperatorPoly multiplication(const DiffPoly& a);

    int nvars() const { return nvars_; }
    const TruncationConfig& trunc() const { return trunc_; }
    const std::map<int, DiffPoly>& coeffs() const { return coeffs_; }
    DiffPoly coeff(int j) const;
    bool is_zero() const { return coeffs_.empty(); }

    void add(int j, const DiffPoly& a);
    DiffPoly apply(const DiffPoly& f) const;
    OperatorPoly map_coefficients(const std::function<DiffPoly(const DiffPoly&)>& f) const;

    OperatorPoly& operator+=(const OperatorPoly& o);
    friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
    friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b);
    friend OperatorPoly operator*(const Coefficient& c, OperatorPoly a);
    bool operator==(const OperatorPoly& o) const;

    std::string str() const;

private:
    int nvars_;
    TruncationConfig trunc_;
    std::map<int, DiffPoly> coeffs_;
};

OperatorPoly compose(const OperatorPoly& a, const OperatorPoly& b);

class HamiltonianOperator {
public:
    explicit HamiltonianOperator(int n = 1, TruncationConfig trunc = {});

    // entries eta^{mu nu} dx
    static HamiltonianOperator standard(const RationalMatrix& eta_inverse, TruncationConfig trunc = {});

    int n() const { return n_; }
    OperatorPoly& at(int mu, int nu) { return entries_[static_cast<size_t>((mu - 1) * n_ + nu - 1)]; }
    const OperatorPoly& at(int mu, int nu) const { return entries_[static_cast<size_t>((mu - 1) * n_ + nu - 1)]; }
    // (K v)^mu = sum_nu K^{mu nu} v_nu
    std::vector<DiffPoly> apply(const std::vector<DiffPoly>& v) const;
    bool operator==(const HamiltonianOperator& o) const { return entries_ == o.entries_; }

    std::string str() const;
    // {"entries":[[[{"j":int,"coeff":<diffpoly>},...],...],...]}
    std::string to_json(int indent = -1) const;

private:
    int n_;
    std::vector<OperatorPoly> entries_;
};

LocalFunctional bracket_ff(const LocalFunctional& f, const LocalFunctional& g, const HamiltonianOperator& k);
DiffPoly bracket_df(const DiffPoly& f, const LocalFunctional& g, const HamiltonianOperator& k);

// New variables as series in the old ones: new^alpha = images[alpha-1](old).
struct MiuraMap {
    std::vector<DiffPoly> images;

    int n() const { return static_cast<int>(images.size()); }
    static MiuraMap identity(int n, TruncationConfig trunc = {});
    // Order-by-order inverse, up to the eps bound of the images.
    MiuraMap inverse() const;
};

enum class MiuraDirection { forward, inverse };

// forward: f written in the new variables becomes a polynomial in the old ones;
// inverse: f in the old variables is rewritten in the new ones.
DiffPoly miura_poly(const DiffPoly& f, const MiuraMap& m, MiuraDirection dir = MiuraDirection::forward);
LocalFunctional miura_poly(const LocalFunctional& f, const MiuraMap& m, MiuraDirection dir = MiuraDirection::forward);
// The operator in the new variables.
HamiltonianOperator miura_operator(const HamiltonianOperator& k, const MiuraMap& m);

// Densities indexed by (alpha, p), p >= -1.
using DensityFamily = std::map<std::pair<int, int>, DiffPoly>;
using FunctionalFamily = std::map<std::pair<int, int>, LocalFunctional>;

// {h_{a,p-1}, hbar_{b,q}} == {h_{b,q-1}, hbar_{a,p}} for all p, q >= 0 available.
Report tau_symmetry_check(const DensityFamily& h, const HamiltonianOperator& k, int p_max);
// h_{alpha,p} = delta gbar_{alpha,p+1} / delta u^1
DensityFamily tau_densities(const FunctionalFamily& gbar);

}  // namespace drham
