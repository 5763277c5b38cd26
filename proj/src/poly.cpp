#include "vsslab/poly.hpp"

#include <algorithm>

#include "vsslab/errors.hpp"

namespace vsslab {

UniPoly::UniPoly(uint64_t p, std::vector<Fe> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c = Fe(c.value(), p_);
    trim();
}

UniPoly UniPoly::from_values(uint64_t p, const std::vector<uint64_t>& coeffs) {
    std::vector<Fe> out;
    for (uint64_t v : coeffs) out.emplace_back(v, p);
    return UniPoly(p, std::move(out));
}

UniPoly UniPoly::constant(Fe c) { return UniPoly(c.modulus(), {c}); }

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Fe UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Fe(0, p_);
    return coeffs_[static_cast<size_t>(k)];
}

std::vector<Fe> UniPoly::padded(int count) const {
    std::vector<Fe> out;
    out.reserve(static_cast<size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) out.push_back(coeff(k));
    return out;
}

Fe UniPoly::eval(const Fe& x) const {
    Fe acc(0, p_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Fe(0, p_));
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Fe(0, p_));
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.p_);
    std::vector<Fe> out(a.coeffs_.size() + b.coeffs_.size() - 1, Fe(0, a.p_));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(a.p_, std::move(out));
}

UniPoly operator*(const UniPoly& a, const Fe& c) {
    std::vector<Fe> out = a.coeffs_;
    for (auto& v : out) v *= c;
    return UniPoly(a.p_, std::move(out));
}

std::string UniPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Fe& c = coeffs_[static_cast<size_t>(k)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += c.to_string();
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const uint64_t p = a.modulus();
    std::vector<Fe> rem = a.coeffs();
    const int db = b.degree();
    const Fe lead_inv = b.coeff(db).inv();
    std::vector<Fe> quot(static_cast<size_t>(std::max(a.degree() - db + 1, 0)), Fe(0, p));
    for (int k = a.degree(); k >= db; --k) {
        Fe c = rem[static_cast<size_t>(k)] * lead_inv;
        if (c.is_zero()) continue;
        quot[static_cast<size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= c * b.coeff(j);
    }
    return {UniPoly(p, std::move(quot)), UniPoly(p, std::move(rem))};
}

UniPoly lagrange_basis(std::span<const Fe> xs, size_t index) {
    const uint64_t p = xs[index].modulus();
    UniPoly basis = UniPoly::constant(Fe(1, p));
    Fe denom(1, p);
    for (size_t j = 0; j < xs.size(); ++j) {
        if (j == index) continue;
        basis = basis * UniPoly(p, {-xs[j], Fe(1, p)});
        denom *= xs[index] - xs[j];
    }
    return basis * denom.inv();
}

UniPoly interpolate(std::span<const Point> points) {
    if (points.empty()) return UniPoly(2);
    const uint64_t p = points.front().first.modulus();
    std::vector<Fe> xs;
    for (const auto& [x, y] : points) {
        if (std::find(xs.begin(), xs.end(), x) != xs.end()) throw DuplicateAbscissa("repeated x");
        xs.push_back(x);
    }
    UniPoly out(p);
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].second.is_zero()) continue;
        out += lagrange_basis(xs, i) * points[i].second;
    }
    return out;
}

std::optional<UniPoly> fit_exact(std::span<const Point> points, int d) {
    if (points.empty()) return std::nullopt;
    const size_t head = std::min(points.size(), static_cast<size_t>(d + 1));
    UniPoly poly = interpolate(points.first(head));
    for (size_t i = head; i < points.size(); ++i) {
        if (poly.eval(points[i].first) != points[i].second) return std::nullopt;
    }
    return poly;
}

UniPoly sample_sharing_poly(const Fe& s, int d, RandomSource& rng) {
    const uint64_t p = s.modulus();
    std::vector<Fe> coeffs{s};
    for (int k = 1; k <= d; ++k) coeffs.push_back(rng.field(p));
    return UniPoly(p, std::move(coeffs));
}

}  // namespace vsslab
