#include "vsslab/codes.hpp"

#include <algorithm>

#include "vsslab/errors.hpp"

namespace vsslab {

bool ShareSet::insert(int party, const Fe& value) {
    if (contains(party)) return false;
    entries_.push_back({party, value});
    return true;
}

bool ShareSet::contains(int party) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const ShareEntry& e) { return e.party == party; });
}

std::vector<Point> ShareSet::points(const FieldParams& fp) const {
    std::vector<Point> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.emplace_back(fp.alpha(e.party), e.value);
    return out;
}

namespace {

// Solves A z = b over GF(p); free variables set to zero. nullopt when inconsistent.
std::optional<std::vector<Fe>> solve_linear(std::vector<std::vector<Fe>> a, std::vector<Fe> b, uint64_t p) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[row]);
        std::swap(b[pivot], b[row]);
        Fe inv = a[row][col].inv();
        for (size_t k = col; k < cols; ++k) a[row][k] *= inv;
        b[row] *= inv;
        for (size_t other = 0; other < rows; ++other) {
            if (other == row || a[other][col].is_zero()) continue;
            Fe factor = a[other][col];
            for (size_t k = col; k < cols; ++k) a[other][k] -= factor * a[row][k];
            b[other] -= factor * b[row];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t r = row; r < rows; ++r) {
        if (!b[r].is_zero()) return std::nullopt;
    }
    std::vector<Fe> z(cols, Fe(0, p));
    for (size_t r = 0; r < pivot_col_of_row.size(); ++r) z[static_cast<size_t>(pivot_col_of_row[r])] = b[r];
    return z;
}

size_t agreement(const UniPoly& q, std::span<const Point> points) {
    size_t count = 0;
    for (const auto& [x, y] : points) count += q.eval(x) == y ? 1 : 0;
    return count;
}

}  // namespace

std::optional<UniPoly> rs_decode_points(int d, int r, std::span<const Point> points) {
    if (d < 0 || r < 0) return std::nullopt;
    const size_t need = static_cast<size_t>(d + 2 * r + 1);
    if (points.size() < need) return std::nullopt;
    const uint64_t p = points.front().first.modulus();
    if (r == 0) {
        auto q = fit_exact(points, d);
        return q;
    }
    // Unknowns: E_0..E_{r-1} (E monic of degree r), Q_0..Q_{d+r}.
    // Q(x_k) - y_k E(x_k) = y_k x_k^r for every point.
    const size_t unknowns = static_cast<size_t>(r + d + r + 1);
    std::vector<std::vector<Fe>> a;
    std::vector<Fe> b;
    for (const auto& [x, y] : points) {
        std::vector<Fe> row(unknowns, Fe(0, p));
        Fe xp(1, p);
        for (int k = 0; k < r; ++k) {
            row[static_cast<size_t>(k)] = -(y * xp);
            xp *= x;
        }
        Fe xr = xp;
        Fe xq(1, p);
        for (int k = 0; k <= d + r; ++k) {
            row[static_cast<size_t>(r + k)] = xq;
            xq *= x;
        }
        a.push_back(std::move(row));
        b.push_back(y * xr);
    }
    auto z = solve_linear(std::move(a), std::move(b), p);
    if (!z) return std::nullopt;
    std::vector<Fe> e_coeffs(z->begin(), z->begin() + r);
    e_coeffs.emplace_back(1, p);
    std::vector<Fe> q_coeffs(z->begin() + r, z->end());
    UniPoly locator(p, std::move(e_coeffs));
    UniPoly numerator(p, std::move(q_coeffs));
    auto [quot, rem] = divmod(numerator, locator);
    if (!rem.is_zero() || quot.degree() > d) return std::nullopt;
    if (agreement(quot, points) + static_cast<size_t>(r) < points.size()) return std::nullopt;
    return quot;
}

std::optional<UniPoly> rs_decode(int d, int r, const ShareSet& shares, const FieldParams& fp) {
    auto pts = shares.points(fp);
    return rs_decode_points(d, r, pts);
}

OecState::OecState(PartySet sources, int d, int t, FieldParams fp)
    : sources_(sources), d_(d), t_(t), fp_(fp) {
    if (d < 0 || t < 0 || d >= static_cast<int>(sources.size()) - 2 * t) {
        throw ConfigBound("online error correction needs d < |sources| - 2t");
    }
}

void OecState::feed(int party, const Fe& share) {
    if (!sources_.contains(party)) throw ForeignParty("party outside the source set");
    if (!fed_.insert(party, share)) throw DuplicateFeed("party already fed");
    if (!result_) try_decode();
}

void OecState::try_decode() {
    const int count = static_cast<int>(fed_.size());
    if (count < d_ + t_ + 1) return;
    const int r = std::min(t_, (count - d_ - 1) / 2);
    auto pts = fed_.points(fp_);
    auto q = rs_decode_points(d_, r, pts);
    if (q && static_cast<int>(agreement(*q, pts)) >= d_ + t_ + 1) result_ = q;
}

OecState oec_feed(OecState state, int party, const Fe& share) {
    state.feed(party, share);
    return state;
}

}  // namespace vsslab
