#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "cswcd/diagnostics.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/random.hpp"
#include "cswcd/symbols.hpp"

using cswcd::cplx;
using cswcd::LinearFractionalMap;
using cswcd::SpaceParams;
using cswcd::Trend;

namespace {

const LinearFractionalMap kHalfPlusHalf(0.5, 0.5, 0.0, 1.0);

} // namespace

TEST(Diagnostics, RatioGridCompactForDilation)
{
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        for (const int n : {1, 2, 3}) {
            const auto g = cswcd::boundedness_ratio_grid(LinearFractionalMap::dilation(0.6), alpha, n,
                                                         cswcd::default_radii(), cswcd::kDefaultAngles);
            EXPECT_TRUE(g.compact_consistent);
            EXPECT_EQ(g.trend, Trend::BoundedLooking);
            EXPECT_TRUE(g.skipped.empty());
            // Direct limit along the radius: (1-r)^(alpha+2) / (1-0.6 r)^(alpha+2+2n) -> 0.
            const double r = 0.999;
            const double want = std::pow(1.0 - r, alpha + 2.0) / std::pow(1.0 - 0.6 * r, alpha + 2.0 + 2.0 * n);
            EXPECT_NEAR(g.radial_max.back() / want, 1.0, 1e-12);
        }
    }
}

TEST(Diagnostics, RatioGridDivergesForBoundaryTouchingMap)
{
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        for (const int n : {1, 2, 3}) {
            const auto g =
                cswcd::boundedness_ratio_grid(kHalfPlusHalf, alpha, n, cswcd::default_radii(), cswcd::kDefaultAngles);
            EXPECT_EQ(g.trend, Trend::Diverging);
            EXPECT_FALSE(g.compact_consistent);
            // Closed-form substitution at w = r on the positive axis.
            for (const auto& sample : g.samples) {
                if (sample.w.imag() == 0.0 && sample.w.real() > 0.0) {
                    const double r = sample.w.real();
                    const double want = std::pow(2.0, alpha + 2.0 + 2.0 * n) * std::pow(1.0 - r, -2.0 * n);
                    EXPECT_NEAR(sample.value / want, 1.0, 1e-9);
                }
            }
        }
    }
}

TEST(Diagnostics, RatioGridBoundedLookingForFamilyMap)
{
    const auto pair = cswcd::family_J_symmetric(1.0, 0.3, 0.2, 1, 0.0, 16);
    ASSERT_TRUE(pair.bounded_hint);
    const auto g = cswcd::boundedness_ratio_grid(pair.phi, 0.0, 1, cswcd::default_radii(), cswcd::kDefaultAngles);
    EXPECT_EQ(g.trend, Trend::BoundedLooking);
}

TEST(Diagnostics, GridSupremumIsSampleMax)
{
    const auto g = cswcd::boundedness_ratio_grid(LinearFractionalMap(0.3, 0.2, 0.1, 1.0), 0.5, 2, {0.3, 0.6, 0.9}, 16);
    double best = 0.0;
    for (const auto& s : g.samples) {
        best = std::max(best, s.value);
    }
    EXPECT_EQ(g.supremum, best);
    EXPECT_EQ(g.samples.size(), 48u);
    EXPECT_THROW(cswcd::boundedness_ratio_grid(kHalfPlusHalf, 0.0, 1, {1.0}, 4), cswcd::DomainError);
    EXPECT_THROW(cswcd::boundedness_ratio_grid(kHalfPlusHalf, 0.0, 1, {0.5}, 0), cswcd::DomainError);
}

TEST(Diagnostics, RatioGridSkipsPointsMappedOutside)
{
    // phi(z) = 2z leaves the disk for |w| >= 1/2.
    const auto g = cswcd::boundedness_ratio_grid(LinearFractionalMap::dilation(2.0), 0.0, 1, {0.25, 0.5, 0.75}, 8);
    EXPECT_EQ(g.samples.size(), 8u);
    EXPECT_EQ(g.skipped.size(), 16u);
    EXPECT_TRUE(std::isnan(g.radial_max.back()));
}

TEST(Diagnostics, NevanlinnaUnivalent)
{
    const auto id = LinearFractionalMap::identity();
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        const cplx w(0.3, 0.2);
        EXPECT_NEAR(cswcd::nevanlinna_univalent(id, w, alpha), std::pow(std::log(1.0 / std::abs(w)), alpha + 2.0), 1e-14);
    }
    const auto half = LinearFractionalMap::dilation(0.5);
    EXPECT_NEAR(cswcd::nevanlinna_univalent(half, 0.25, 0.0), std::pow(std::log(2.0), 2.0), 1e-15);
    EXPECT_EQ(cswcd::nevanlinna_univalent(half, 0.7, 0.0), 0.0);
    EXPECT_THROW(cswcd::nevanlinna_univalent(half, 0.0, 0.0), cswcd::DomainError);
}

TEST(Diagnostics, NevanlinnaBoundGrid)
{
    for (const int n : {1, 2}) {
        const auto compact = cswcd::nevanlinna_bound_grid(LinearFractionalMap::dilation(0.5), 0.0, n,
                                                          cswcd::default_radii(), cswcd::kDefaultAngles);
        // Image of the disk is |w| < 1/2: every grid point at |w| >= 1/2 gives 0.
        EXPECT_EQ(compact.radial_max.back(), 0.0);
        EXPECT_NE(compact.trend, Trend::Diverging);
        const auto touching =
            cswcd::nevanlinna_bound_grid(kHalfPlusHalf, 0.0, n, cswcd::default_radii(), cswcd::kDefaultAngles);
        EXPECT_EQ(touching.trend, Trend::Diverging);
        const auto identity = cswcd::nevanlinna_bound_grid(LinearFractionalMap::identity(), 1.0, n,
                                                           cswcd::default_radii(), cswcd::kDefaultAngles);
        EXPECT_EQ(identity.trend, Trend::Diverging);
        // Formula: [ln(1/|w|)]^(-2n).
        EXPECT_NEAR(identity.radial_max.back() / std::pow(std::log(1.0 / 0.999), -2.0 * n), 1.0, 1e-9);
    }
}

TEST(Diagnostics, GridCsv)
{
    const auto g = cswcd::boundedness_ratio_grid(LinearFractionalMap::dilation(0.5), 0.0, 1, {0.5}, 2);
    std::ostringstream os;
    cswcd::write_grid_csv(g, os);
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "re_w,im_w,value");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(Diagnostics, NecessaryConditions)
{
    cswcd::SplitMix64 rng(9);
    for (const int n : {1, 2, 3}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto j = cswcd::family_J_symmetric(rng.polar(0.5, 2.0), rng.polar(0.1, 0.6), rng.in_disk(0.5), n, 0.0, 32);
            EXPECT_TRUE(cswcd::necessary_conditions_check(j).all_passed());
            const auto no = cswcd::family_normal_origin(rng.polar(0.5, 2.0), rng.polar(0.1, 0.9), n, 32);
            EXPECT_TRUE(cswcd::necessary_conditions_check(no).all_passed());
        }
    }
    std::vector<cplx> one_plus_z(33);
    one_plus_z[0] = 1.0;
    one_plus_z[1] = 1.0;
    const cswcd::SymbolPair planted{cswcd::TruncatedSeries(one_plus_z), LinearFractionalMap::dilation(0.5), 1,
                                    cswcd::Family::Explicit};
    const auto r = cswcd::necessary_conditions_check(planted);
    EXPECT_FALSE(r.all_passed());
    EXPECT_FALSE(r.items[0].passed);
    EXPECT_TRUE(r.items[1].passed);

    // psi = z (z - 0.5): zero inside the punctured disk.
    std::vector<cplx> zero_at_half(33);
    zero_at_half[1] = -0.5;
    zero_at_half[2] = 1.0;
    const cswcd::SymbolPair zeroed{cswcd::TruncatedSeries(zero_at_half), LinearFractionalMap::dilation(0.5), 1,
                                   cswcd::Family::Explicit};
    const auto z = cswcd::necessary_conditions_check(zeroed);
    EXPECT_TRUE(z.items[0].passed);
    EXPECT_TRUE(z.items[1].passed);
    EXPECT_FALSE(z.items[2].passed);
    EXPECT_TRUE(z.items[3].passed);
}

TEST(Diagnostics, Hermitian)
{
    const SpaceParams s{0.0, 1, 40};
    const auto sa = cswcd::family_self_adjoint(1.0, 0.2, cplx(0.0, 0.3), 1, 0.0, s.N);
    EXPECT_TRUE(cswcd::is_hermitian(cswcd::build_wcd_matrix(sa, s), 1e-10).passed);
    const auto broken = cswcd::family_general(cplx(1.0, 0.2), 0.2, cplx(0.0, 0.3), 1, 0.0, s.N);
    EXPECT_GT(cswcd::is_hermitian(cswcd::build_wcd_matrix(broken, s), 1e-10).defect, 1e-3);
    const cswcd::OperatorMatrix zero{cswcd::Matrix::Zero(4, 4), true, s};
    EXPECT_EQ(cswcd::is_hermitian(zero, 1e-10).defect, 0.0);
    EXPECT_TRUE(cswcd::is_normal(zero, 1e-10).passed);
}

TEST(Diagnostics, Normality)
{
    const SpaceParams s{0.0, 1, 64};
    const auto no = cswcd::family_normal_origin(cplx(1.0, 0.3), cplx(0.2, 0.5), 1, s.N);
    EXPECT_LE(cswcd::is_normal(cswcd::build_wcd_matrix(no, s), 1e-12).defect, 1e-12);
    const auto sa = cswcd::family_self_adjoint(1.0, 0.4, cplx(0.1, 0.2), 1, 0.0, s.N);
    EXPECT_TRUE(cswcd::is_normal(cswcd::build_wcd_matrix(sa, s), 1e-8).passed);
    const auto real_b = cswcd::family_general(cplx(0.5, 0.9), 0.4, cplx(0.1, 0.2), 1, 0.0, s.N);
    EXPECT_TRUE(cswcd::is_normal(cswcd::build_wcd_matrix(real_b, s), 1e-8).passed);
    const auto nonnormal = cswcd::family_general(1.0, cplx(0.0, 0.4), 0.3, 1, 0.0, s.N);
    EXPECT_GT(cswcd::is_normal(cswcd::build_wcd_matrix(nonnormal, s), 1e-8).defect, 1e-3);
}

TEST(Diagnostics, KernelNormTestCounterexample)
{
    const SpaceParams s{0.0, 1, 96};
    const auto pair = cswcd::family_general(1.0, cplx(0.0, 0.4), 0.3, 1, 0.0, s.N);
    const auto at_i2 = cswcd::norm_defect_kernel_test(pair, cplx(0.0, 0.5), s);
    EXPECT_GT(at_i2.defect, 1e-3);
    // c real makes p1 = conj(p2) at w = 1/2, so the norms agree there.
    const auto at_half = cswcd::norm_defect_kernel_test(pair, 0.5, s);
    EXPECT_NEAR(std::abs(at_half.p1 - std::conj(at_half.p2)), 0.0, 1e-15);
    EXPECT_LE(at_half.defect, 1e-8);
    // Non-real c and b: |p1| != |p2| already at w = 1/2.
    const auto both = cswcd::family_general(1.0, cplx(0.1, 0.4), cplx(0.2, 0.2), 1, 0.0, s.N);
    const auto t = cswcd::norm_defect_kernel_test(both, 0.5, s);
    EXPECT_GT(std::abs(std::abs(t.p1) - std::abs(t.p2)), 1e-3);
    EXPECT_GT(t.defect, 0.0);
}

TEST(Diagnostics, KernelNormTestNormalCases)
{
    cswcd::SplitMix64 rng(13);
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        for (const int n : {1, 2, 3}) {
            const SpaceParams s{alpha, n, 96};
            const cplx a = rng.polar(0.5, 2.0), c = rng.in_disk(0.3);
            const double b = rng.uniform(0.1, 0.5);
            for (const auto& pair : {cswcd::family_general(a, b, c, n, alpha, s.N),
                                     cswcd::family_general(a, rng.polar(0.1, 0.5), 0.0, n, alpha, s.N),
                                     cswcd::family_normal_origin(a, rng.polar(0.1, 0.6), n, s.N)}) {
                for (const cplx w : {cplx(0.5, 0.0), cplx(0.0, 0.5)}) {
                    const auto t = cswcd::norm_defect_kernel_test(pair, w, s);
                    EXPECT_LE(t.defect, 1e-8 * std::max(1.0, t.norm_d_sq));
                    // Closed forms agree with the truncated-matrix norms.
                    EXPECT_NEAR(t.matrix_norm_d_sq / t.norm_d_sq, 1.0, 1e-8);
                    EXPECT_NEAR(t.matrix_norm_dstar_sq / t.norm_dstar_sq, 1.0, 1e-8);
                }
            }
        }
    }
}

TEST(Diagnostics, KernelNormTestGates)
{
    const SpaceParams s{0.0, 1, 32};
    const auto j = cswcd::family_J_symmetric(1.0, 0.3, 0.2, 1, 0.0, s.N);
    EXPECT_THROW(cswcd::norm_defect_kernel_test(j, 0.5, s), cswcd::DomainError);
    const auto far = cswcd::family_general(1.0, 0.8, 0.5, 1, 0.0, s.N);
    EXPECT_THROW(cswcd::norm_defect_kernel_test(far, 0.5, s), cswcd::GateError);
}
