#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vsslab/field.hpp"
#include "vsslab/poly.hpp"
#include "vsslab/random.hpp"

namespace vsslab {

// F(x, y) = sum r_ab x^a y^b with deg_x <= lx and deg_y <= my.
class BiPoly {
public:
    BiPoly(uint64_t p, int lx, int my, bool symmetric = false);

    uint64_t modulus() const { return p_; }
    int deg_x() const { return lx_; }
    int deg_y() const { return my_; }
    bool symmetric() const { return symmetric_; }
    Fe coeff(int a, int b) const { return coeffs_[index(a, b)]; }
    void set_coeff(int a, int b, const Fe& v) { coeffs_[index(a, b)] = Fe(v.value(), p_); }
    void set_symmetric(bool flag) { symmetric_ = flag; }

    Fe eval(const Fe& x, const Fe& y) const;
    // F(x, y0) as a polynomial in x.
    UniPoly row_at(const Fe& y0) const;
    // F(x0, y) as a polynomial in y.
    UniPoly col_at(const Fe& x0) const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.lx_ == b.lx_ && a.my_ == b.my_ && a.coeffs_ == b.coeffs_;
    }

private:
    size_t index(int a, int b) const { return static_cast<size_t>(a * (my_ + 1) + b); }

    uint64_t p_;
    int lx_;
    int my_;
    bool symmetric_;
    std::vector<Fe> coeffs_;
};

enum class EmbedMode { at_x0, at_y0, symmetric_x0, multi_beta };

// Random F of degree (lx, my) carrying the given polynomial(s) on the slice named by mode.
// multi_beta places qs[k] at F(betas[k], y).
BiPoly embed_bivariate(std::span<const UniPoly> qs, EmbedMode mode, int lx, int my, RandomSource& rng,
                       std::span<const Fe> betas = {});

// rows[i] = F(x, alpha(i)) and cols[j] = F(alpha(j), y). Returns the unique F on which all
// lie, or nullopt when they are not pairwise consistent.
std::optional<BiPoly> check_pairwise_fit(const std::map<int, UniPoly>& rows, const std::map<int, UniPoly>& cols,
                                         int lx, int my, const FieldParams& fp);

}  // namespace vsslab
