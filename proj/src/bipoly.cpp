#include "vsslab/bipoly.hpp"

#include <algorithm>

#include "vsslab/errors.hpp"

namespace vsslab {

BiPoly::BiPoly(uint64_t p, int lx, int my, bool symmetric)
    : p_(p), lx_(lx), my_(my), symmetric_(symmetric),
      coeffs_(static_cast<size_t>((lx + 1) * (my + 1)), Fe(0, p)) {
    if (lx < 0 || my < 0) throw DegreeMismatch("negative degree");
}

Fe BiPoly::eval(const Fe& x, const Fe& y) const { return row_at(y).eval(x); }

UniPoly BiPoly::row_at(const Fe& y0) const {
    std::vector<Fe> out;
    for (int a = 0; a <= lx_; ++a) {
        Fe acc(0, p_);
        for (int b = my_; b >= 0; --b) {
            acc *= y0;
            acc += coeff(a, b);
        }
        out.push_back(acc);
    }
    return UniPoly(p_, std::move(out));
}

UniPoly BiPoly::col_at(const Fe& x0) const {
    std::vector<Fe> out;
    for (int b = 0; b <= my_; ++b) {
        Fe acc(0, p_);
        for (int a = lx_; a >= 0; --a) {
            acc *= x0;
            acc += coeff(a, b);
        }
        out.push_back(acc);
    }
    return UniPoly(p_, std::move(out));
}

namespace {

void require_degree(const UniPoly& q, int bound) {
    if (q.degree() > bound) throw DegreeMismatch("slice polynomial exceeds the bivariate degree");
}

}  // namespace

BiPoly embed_bivariate(std::span<const UniPoly> qs, EmbedMode mode, int lx, int my, RandomSource& rng,
                       std::span<const Fe> betas) {
    if (qs.empty()) throw DegreeMismatch("no polynomial to embed");
    const uint64_t p = qs.front().modulus();
    BiPoly F(p, lx, my, mode == EmbedMode::symmetric_x0);
    switch (mode) {
        case EmbedMode::at_x0: {
            require_degree(qs[0], my);
            for (int a = 0; a <= lx; ++a) {
                for (int b = 0; b <= my; ++b) F.set_coeff(a, b, a == 0 ? qs[0].coeff(b) : rng.field(p));
            }
            break;
        }
        case EmbedMode::at_y0: {
            require_degree(qs[0], lx);
            for (int a = 0; a <= lx; ++a) {
                for (int b = 0; b <= my; ++b) F.set_coeff(a, b, b == 0 ? qs[0].coeff(a) : rng.field(p));
            }
            break;
        }
        case EmbedMode::symmetric_x0: {
            if (lx != my) throw DegreeMismatch("symmetric embedding needs equal degrees");
            require_degree(qs[0], my);
            for (int b = 0; b <= my; ++b) {
                F.set_coeff(0, b, qs[0].coeff(b));
                F.set_coeff(b, 0, qs[0].coeff(b));
            }
            for (int a = 1; a <= lx; ++a) {
                for (int b = a; b <= my; ++b) {
                    Fe v = rng.field(p);
                    F.set_coeff(a, b, v);
                    F.set_coeff(b, a, v);
                }
            }
            break;
        }
        case EmbedMode::multi_beta: {
            if (betas.size() != qs.size()) throw DegreeMismatch("one beta per embedded polynomial");
            if (static_cast<int>(qs.size()) > lx + 1) throw DegreeMismatch("too many slices for the x-degree");
            for (const auto& q : qs) require_degree(q, my);
            // Free abscissas outside the betas carry the random degrees of freedom.
            std::vector<Fe> free_xs;
            for (uint64_t v = 0; static_cast<int>(free_xs.size()) < lx + 1 - static_cast<int>(qs.size()); ++v) {
                Fe x(v, p);
                if (std::find(betas.begin(), betas.end(), x) == betas.end()) free_xs.push_back(x);
            }
            for (int b = 0; b <= my; ++b) {
                std::vector<Point> pts;
                for (size_t k = 0; k < qs.size(); ++k) pts.emplace_back(betas[k], qs[k].coeff(b));
                for (const auto& x : free_xs) pts.emplace_back(x, rng.field(p));
                UniPoly column = interpolate(pts);
                for (int a = 0; a <= lx; ++a) F.set_coeff(a, b, column.coeff(a));
            }
            break;
        }
    }
    return F;
}

std::optional<BiPoly> check_pairwise_fit(const std::map<int, UniPoly>& rows, const std::map<int, UniPoly>& cols,
                                         int lx, int my, const FieldParams& fp) {
    if (static_cast<int>(rows.size()) < my + 1 || static_cast<int>(cols.size()) < lx + 1) {
        throw InsufficientPolynomials("need at least m+1 rows and l+1 columns");
    }
    for (const auto& [i, f] : rows) {
        if (f.degree() > lx) return std::nullopt;
        for (const auto& [j, g] : cols) {
            if (g.degree() > my) return std::nullopt;
            if (f.eval(fp.alpha(j)) != g.eval(fp.alpha(i))) return std::nullopt;
        }
    }
    std::vector<Fe> ys;
    std::vector<const UniPoly*> basis_rows;
    for (const auto& [i, f] : rows) {
        if (static_cast<int>(ys.size()) == my + 1) break;
        ys.push_back(fp.alpha(i));
        basis_rows.push_back(&f);
    }
    BiPoly F(fp.p(), lx, my);
    for (size_t k = 0; k < ys.size(); ++k) {
        UniPoly basis = lagrange_basis(ys, k);
        for (int a = 0; a <= lx; ++a) {
            for (int b = 0; b <= my; ++b) {
                F.set_coeff(a, b, F.coeff(a, b) + basis_rows[k]->coeff(a) * basis.coeff(b));
            }
        }
    }
    for (const auto& [i, f] : rows) {
        if (F.row_at(fp.alpha(i)) != f) return std::nullopt;
    }
    for (const auto& [j, g] : cols) {
        if (F.col_at(fp.alpha(j)) != g) return std::nullopt;
    }
    bool symmetric = lx == my;
    for (int a = 0; symmetric && a <= lx; ++a) {
        for (int b = a + 1; b <= my; ++b) {
            if (F.coeff(a, b) != F.coeff(b, a)) {
                symmetric = false;
                break;
            }
        }
    }
    F.set_symmetric(symmetric);
    return F;
}

}  // namespace vsslab
