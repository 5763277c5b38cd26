#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vsslab/field.hpp"
#include "vsslab/random.hpp"

namespace vsslab {

using Point = std::pair<Fe, Fe>;

// Univariate polynomial over GF(p); coefficients low degree first, trailing zeros trimmed.
class UniPoly {
public:
    explicit UniPoly(uint64_t p = 2) : p_(p) {}
    UniPoly(uint64_t p, std::vector<Fe> coeffs);
    static UniPoly from_values(uint64_t p, const std::vector<uint64_t>& coeffs);
    static UniPoly constant(Fe c);

    uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Fe coeff(int k) const;
    const std::vector<Fe>& coeffs() const { return coeffs_; }
    // Coefficients padded or truncated to exactly count entries.
    std::vector<Fe> padded(int count) const;

    Fe eval(const Fe& x) const;

    UniPoly& operator+=(const UniPoly& rhs);
    UniPoly& operator-=(const UniPoly& rhs);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const Fe& c);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

private:
    void trim();

    uint64_t p_;
    std::vector<Fe> coeffs_;
};

// Quotient and remainder of a / b; b must be non-zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

// Unique polynomial of degree < |points| through the points.
UniPoly interpolate(std::span<const Point> points);

// Interpolates the first d+1 points and checks the rest; nullopt when they do not lie on one
// polynomial of degree <= d.
std::optional<UniPoly> fit_exact(std::span<const Point> points, int d);

// Uniformly random polynomial of degree <= d with constant term s.
UniPoly sample_sharing_poly(const Fe& s, int d, RandomSource& rng);

// Lagrange basis polynomial for xs[index] over the abscissas xs.
UniPoly lagrange_basis(std::span<const Fe> xs, size_t index);

}  // namespace vsslab
