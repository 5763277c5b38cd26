#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "vsslab/bipoly.hpp"
#include "vsslab/errors.hpp"
#include "vsslab/poly.hpp"
#include "vsslab/random.hpp"

using namespace vsslab;

namespace {

Fe e7(uint64_t v) { return Fe(v, 7); }

// Source that returns a fixed list of values, then zeros.
class ListSource : public RandomSource {
public:
    explicit ListSource(std::vector<uint64_t> values) : values_(std::move(values)) {}

protected:
    uint64_t draw(uint64_t bound, DrawTag) override {
        uint64_t v = next_ < values_.size() ? values_[next_] : 0;
        ++next_;
        return v % bound;
    }

private:
    std::vector<uint64_t> values_;
    size_t next_ = 0;
};

// All assignments of `count` values in [0, p).
std::vector<std::vector<uint64_t>> all_assignments(uint64_t p, size_t count) {
    std::vector<std::vector<uint64_t>> out;
    std::vector<uint64_t> cur(count, 0);
    for (;;) {
        out.push_back(cur);
        size_t k = 0;
        while (k < count && ++cur[k] == p) cur[k++] = 0;
        if (k == count) break;
    }
    return out;
}

}  // namespace

TEST(Field, ArithmeticAndInverse) {
    EXPECT_EQ((e7(5) + e7(4)).value(), 2u);
    EXPECT_EQ((e7(2) - e7(5)).value(), 4u);
    EXPECT_EQ((e7(3) * e7(5)).value(), 1u);
    for (uint64_t v = 1; v < 7; ++v) EXPECT_EQ((e7(v) * e7(v).inv()).value(), 1u);
    EXPECT_THROW(e7(0).inv(), DivisionByZero);
    EXPECT_THROW(Fe(1, 7) + Fe(1, 11), FieldMismatch);
}

TEST(Field, ParamsRejectSmallOrCompositeModulus) {
    EXPECT_THROW(FieldParams(4, 3), FieldTooSmall);
    EXPECT_THROW(FieldParams(5, 5), FieldTooSmall);
    EXPECT_THROW(FieldParams(7, 4, 3), FieldTooSmall);
    FieldParams fp(11, 5, 2);
    EXPECT_EQ(fp.alpha(0).value(), 1u);
    EXPECT_EQ(fp.beta(1).value(), 7u);
}

TEST(Interpolate, LineThroughTwoPoints) {
    std::vector<Point> pts{{e7(1), e7(3)}, {e7(2), e7(5)}};
    EXPECT_EQ(interpolate(pts), UniPoly::from_values(7, {1, 2}));
}

TEST(Interpolate, SquareThroughThreePoints) {
    std::vector<Point> pts{{e7(1), e7(1)}, {e7(2), e7(4)}, {e7(3), e7(2)}};
    EXPECT_EQ(interpolate(pts), UniPoly::from_values(7, {0, 0, 1}));
}

TEST(Interpolate, DuplicateAbscissaRejected) {
    std::vector<Point> pts{{e7(1), e7(3)}, {e7(1), e7(4)}};
    EXPECT_THROW(interpolate(pts), DuplicateAbscissa);
}

TEST(Interpolate, InverseOfEvaluation) {
    CounterRng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = static_cast<int>(rng.below(6));
        UniPoly q = sample_sharing_poly(rng.field(97), d, rng);
        std::vector<Point> pts;
        for (int k = 0; k <= d; ++k) pts.emplace_back(Fe(k + 1, 97), q.eval(Fe(k + 1, 97)));
        EXPECT_EQ(interpolate(pts), q);
    }
}

TEST(Poly, TrailingZerosDefineEquality) {
    EXPECT_EQ(UniPoly::from_values(7, {1, 2, 0, 0}), UniPoly::from_values(7, {1, 2}));
    EXPECT_EQ(UniPoly::from_values(7, {0}).degree(), -1);
}

TEST(Poly, DivmodRoundTrip) {
    CounterRng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        UniPoly a = sample_sharing_poly(rng.field(101), 6, rng);
        UniPoly b = sample_sharing_poly(Fe(1 + rng.below(100), 101), 2, rng);
        auto [q, r] = divmod(a, b);
        EXPECT_LT(r.degree(), b.degree());
        EXPECT_EQ(q * b + r, a);
    }
}

TEST(SampleSharingPoly, ForcedByRandomness) {
    ListSource rng({3});
    EXPECT_EQ(sample_sharing_poly(e7(2), 1, rng), UniPoly::from_values(7, {2, 3}));
    ListSource none({});
    EXPECT_TRUE(sample_sharing_poly(e7(0), 0, none).is_zero());
}

TEST(SampleSharingPoly, EnumerationCoversEachPolynomialOnce) {
    std::multiset<std::string> seen;
    for (const auto& a : all_assignments(5, 1)) {
        ListSource rng(a);
        UniPoly q = sample_sharing_poly(Fe(1, 5), 1, rng);
        EXPECT_EQ(q.eval(Fe(0, 5)).value(), 1u);
        seen.insert(q.to_string());
    }
    EXPECT_EQ(seen.size(), 5u);
    EXPECT_EQ(std::set<std::string>(seen.begin(), seen.end()).size(), 5u);
}

// Shamir privacy: for every corrupt index, the share distribution does not depend on the secret.
TEST(SharingPrivacy, ShareDistributionIndependentOfSecret) {
    const uint64_t p = 5;
    for (int corrupt = 0; corrupt < 4; ++corrupt) {
        std::map<uint64_t, std::multiset<uint64_t>> by_secret;
        for (uint64_t s : {0u, 3u}) {
            for (const auto& a : all_assignments(p, 1)) {
                ListSource rng(a);
                UniPoly q = sample_sharing_poly(Fe(s, p), 1, rng);
                by_secret[s].insert(q.eval(Fe(static_cast<uint64_t>(corrupt) + 1, p)).value());
            }
        }
        EXPECT_EQ(by_secret[0], by_secret[3]);
    }
}

TEST(Embed, AtX0CarriesPolynomial) {
    CounterRng rng(5);
    std::vector<UniPoly> q{UniPoly::from_values(7, {2, 3})};
    for (int trial = 0; trial < 20; ++trial) {
        BiPoly F = embed_bivariate(q, EmbedMode::at_x0, 1, 1, rng);
        EXPECT_EQ(F.col_at(e7(0)), q[0]);
        EXPECT_FALSE(F.symmetric());
    }
}

TEST(Embed, AtY0CarriesPolynomial) {
    CounterRng rng(6);
    std::vector<UniPoly> q{UniPoly::from_values(11, {4, 1, 7})};
    BiPoly F = embed_bivariate(q, EmbedMode::at_y0, 2, 1, rng);
    EXPECT_EQ(F.row_at(Fe(0, 11)), q[0]);
    EXPECT_THROW(embed_bivariate(q, EmbedMode::at_y0, 1, 1, rng), DegreeMismatch);
}

TEST(Embed, SymmetricIsSymmetric) {
    CounterRng rng(7);
    std::vector<UniPoly> q{UniPoly::from_values(13, {5, 1, 2})};
    BiPoly F = embed_bivariate(q, EmbedMode::symmetric_x0, 2, 2, rng);
    EXPECT_TRUE(F.symmetric());
    EXPECT_EQ(F.col_at(Fe(0, 13)), q[0]);
    for (uint64_t i = 1; i <= 6; ++i) {
        for (uint64_t j = 1; j <= 6; ++j) EXPECT_EQ(F.eval(Fe(i, 13), Fe(j, 13)), F.eval(Fe(j, 13), Fe(i, 13)));
    }
    EXPECT_THROW(embed_bivariate(q, EmbedMode::symmetric_x0, 2, 3, rng), DegreeMismatch);
}

TEST(Embed, MultiBetaPlacesEverySecretPolynomial) {
    const int n = 9, t = 2;
    FieldParams fp(31, n, n - 3 * t);
    CounterRng rng(8);
    std::vector<UniPoly> qs;
    for (int k = 0; k < n - 3 * t; ++k) qs.push_back(sample_sharing_poly(fp.elem(k + 10), t, rng));
    auto betas = fp.betas();
    BiPoly F = embed_bivariate(qs, EmbedMode::multi_beta, n - 2 * t - 1, t, rng, betas);
    for (size_t k = 0; k < qs.size(); ++k) EXPECT_EQ(F.col_at(betas[k]), qs[k]);
}

TEST(BiPoly, RowColumnCommute) {
    FieldParams fp(101, 6);
    CounterRng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<UniPoly> q{sample_sharing_poly(rng.field(101), 2, rng)};
        BiPoly F = embed_bivariate(q, EmbedMode::at_x0, 3, 2, rng);
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                Fe via_row = F.row_at(fp.alpha(i)).eval(fp.alpha(j));
                Fe via_col = F.col_at(fp.alpha(j)).eval(fp.alpha(i));
                EXPECT_EQ(via_row, via_col);
                EXPECT_EQ(via_row, F.eval(fp.alpha(j), fp.alpha(i)));
            }
        }
    }
}

namespace {

struct Slices {
    std::map<int, UniPoly> rows, cols;
};

Slices slices_of(const BiPoly& F, const FieldParams& fp, int rows, int cols) {
    Slices s;
    for (int i = 0; i < rows; ++i) s.rows.emplace(i, F.row_at(fp.alpha(i)));
    for (int j = 0; j < cols; ++j) s.cols.emplace(j, F.col_at(fp.alpha(j)));
    return s;
}

}  // namespace

TEST(PairwiseFit, RoundTrip) {
    FieldParams fp(101, 6);
    CounterRng rng(10);
    std::vector<UniPoly> q{sample_sharing_poly(fp.elem(42), 2, rng)};
    BiPoly F = embed_bivariate(q, EmbedMode::at_x0, 2, 2, rng);
    auto s = slices_of(F, fp, 6, 6);
    auto got = check_pairwise_fit(s.rows, s.cols, 2, 2, fp);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, F);
}

TEST(PairwiseFit, TamperedRowIsInconsistent) {
    FieldParams fp(101, 6);
    CounterRng rng(12);
    std::vector<UniPoly> q{sample_sharing_poly(fp.elem(1), 2, rng)};
    BiPoly F = embed_bivariate(q, EmbedMode::at_x0, 2, 2, rng);
    auto s = slices_of(F, fp, 6, 6);
    // Change the single evaluation row_2(alpha(4)) by +1.
    std::vector<Point> pts;
    for (int j = 0; j < 6; ++j) {
        Fe y = s.rows.at(2).eval(fp.alpha(j));
        pts.emplace_back(fp.alpha(j), j == 4 ? y + fp.one() : y);
    }
    s.rows.at(2) = interpolate(pts);
    EXPECT_FALSE(check_pairwise_fit(s.rows, s.cols, 2, 2, fp).has_value());
}

// Minimal slices recover F; cross-checked by solving for coefficients from grid evaluations.
TEST(PairwiseFit, MinimalSlicesMatchCoefficientSolve) {
    FieldParams fp(31, 5);
    CounterRng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int lx = 1 + static_cast<int>(rng.below(3));
        const int my = 1 + static_cast<int>(rng.below(3));
        std::vector<UniPoly> q{sample_sharing_poly(rng.field(31), my, rng)};
        BiPoly F = embed_bivariate(q, EmbedMode::at_x0, lx, my, rng);
        auto s = slices_of(F, fp, my + 1, lx + 1);
        auto got = check_pairwise_fit(s.rows, s.cols, lx, my, fp);
        ASSERT_TRUE(got.has_value());
        // Coefficient solve: interpolate each row in x from column evaluations, then in y.
        for (int a = 0; a <= lx; ++a) {
            std::vector<Point> in_y;
            for (int i = 0; i <= my; ++i) {
                std::vector<Point> in_x;
                for (int j = 0; j <= lx; ++j) in_x.emplace_back(fp.alpha(j), s.cols.at(j).eval(fp.alpha(i)));
                in_y.emplace_back(fp.alpha(i), interpolate(in_x).coeff(a));
            }
            UniPoly coeff_in_y = interpolate(in_y);
            for (int b = 0; b <= my; ++b) EXPECT_EQ(got->coeff(a, b), coeff_in_y.coeff(b));
        }
    }
}

TEST(PairwiseFit, TooFewSlicesRejected) {
    FieldParams fp(31, 5);
    CounterRng rng(14);
    std::vector<UniPoly> q{sample_sharing_poly(fp.elem(1), 2, rng)};
    BiPoly F = embed_bivariate(q, EmbedMode::at_x0, 2, 2, rng);
    auto s = slices_of(F, fp, 2, 3);
    EXPECT_THROW(check_pairwise_fit(s.rows, s.cols, 2, 2, fp), InsufficientPolynomials);
}

// Bivariate privacy: a corrupt party's row and column have the same distribution for two
// sharing polynomials that agree at its alpha.
TEST(BivariatePrivacy, CorruptSlicesIndependentOfSharedPolynomial) {
    const uint64_t p = 5;
    FieldParams fp(p, 4);
    for (int corrupt = 0; corrupt < 4; ++corrupt) {
        const Fe a = fp.alpha(corrupt);
        // q0 = 1 + y and q1 = c + k y with q1(a) = q0(a), c != 1.
        UniPoly q0 = UniPoly::from_values(p, {1, 1});
        Fe k = fp.elem(3);
        Fe c = q0.eval(a) - k * a;
        UniPoly q1(p, {c, k});
        ASSERT_NE(q0, q1);
        std::map<int, std::multiset<std::string>> views;
        for (int which = 0; which < 2; ++which) {
            std::vector<UniPoly> q{which == 0 ? q0 : q1};
            for (const auto& asg : all_assignments(p, 2)) {
                ListSource rng(asg);
                BiPoly F = embed_bivariate(q, EmbedMode::at_x0, 1, 1, rng);
                views[which].insert(F.row_at(a).to_string() + "|" + F.col_at(a).to_string());
            }
        }
        EXPECT_EQ(views[0], views[1]);
    }
}
