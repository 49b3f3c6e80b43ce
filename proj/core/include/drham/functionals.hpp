#pragma once

#include "drham/diffpoly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace drham {

struct NotExact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeightCollision : std::runtime_error {
    WeightCollision(const std::string& msg, std::vector<Monomial> m) : std::runtime_error(msg), monomials(std::move(m)) {}
    std::vector<Monomial> monomials;
};

// Class of a differential polynomial modulo constants and total x-derivatives,
// stored through its normal form.
class LocalFunctional {
public:
    explicit LocalFunctional(int nvars = 1, TruncationConfig trunc = {}) : repr_(nvars, trunc) {}

    const DiffPoly& repr() const { return repr_; }
    int nvars() const { return repr_.nvars(); }
    bool is_zero() const { return repr_.is_zero(); }
    bool truncated() const { return repr_.truncated(); }

    LocalFunctional operator-() const;
    LocalFunctional& operator+=(const LocalFunctional& o);
    LocalFunctional& operator-=(const LocalFunctional& o);
    friend LocalFunctional operator+(LocalFunctional a, const LocalFunctional& b) { return a += b; }
    friend LocalFunctional operator-(LocalFunctional a, const LocalFunctional& b) { return a -= b; }
    friend LocalFunctional operator*(const Coefficient& c, const LocalFunctional& f);
    bool operator==(const LocalFunctional& o) const { return repr_ == o.repr_; }

    LocalFunctional with_trunc(const TruncationConfig& t) const;
    std::string str() const;

private:
    friend LocalFunctional integrate(const DiffPoly& f);
    DiffPoly repr_;
};

LocalFunctional integrate(const DiffPoly& f);
bool equals(const LocalFunctional& a, const LocalFunctional& b);
DiffPoly variational_derivative(const LocalFunctional& f, int alpha);
// {"functional": <diffpoly json>}
std::string to_json(const LocalFunctional& f, int indent = -1);

// f = dx(primitive) + remainder with the remainder in normal form
// (constants stay in the remainder).
struct DxSplit {
    DiffPoly primitive;
    DiffPoly remainder;
};
DxSplit dx_split(const DiffPoly& f);

// Normal form of f modulo total derivatives (constants kept).
DiffPoly ibp_normal_form(const DiffPoly& f);

// h with dx(h) = f and no constant term; throws NotExact.
DiffPoly dx_inverse(const DiffPoly& f);
bool is_exact(const DiffPoly& f);

// Monomial-wise division by (weight - c); throws WeightCollision.
DiffPoly d_shift_inverse(const DiffPoly& f, const Rational& c);

// Monomials with the given alphas (sorted, with multiplicity) and total derivative order.
std::vector<Monomial> slice_basis(const std::vector<int>& alphas, int order);

}  // namespace drham
