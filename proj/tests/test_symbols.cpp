#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "cswcd/bergman.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/random.hpp"
#include "cswcd/symbols.hpp"
#include "support.hpp"

using cswcd::cplx;

namespace {

double fact(int n) { return std::tgamma(n + 1.0); }

/// a z^n / (n! (1 - q z)^s) written out directly.
cplx kernel_shaped_psi(cplx a, cplx q, int n, double alpha, cplx z)
{
    return a * std::pow(z, n) / (fact(n) * std::pow(1.0 - q * z, n + alpha + 2.0));
}

cplx psi_p(cplx p, cplx lu, double alpha, cplx z)
{
    return lu * std::pow(1.0 - std::norm(p), (alpha + 2.0) / 2.0) / std::pow(1.0 - std::conj(p) * z, alpha + 2.0);
}

cplx phi_p(cplx p, cplx z) { return std::conj(p) / p * (p - z) / (1.0 - std::conj(p) * z); }

} // namespace

TEST(Symbols, JSymmetricFamilyClosedForm)
{
    cswcd::SplitMix64 rng(2);
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        for (const int n : {1, 2, 3}) {
            const cplx a = rng.polar(0.5, 2.0), b = rng.polar(0.1, 0.8), c = rng.in_disk(0.5);
            const auto pair = cswcd::family_J_symmetric(a, b, c, n, alpha, 96);
            EXPECT_EQ(pair.family, cswcd::Family::JSymmetric);
            for (int k = 0; k < 5; ++k) {
                const cplx z = rng.in_disk(0.4);
                const cplx want = kernel_shaped_psi(a, c, n, alpha, z);
                EXPECT_NEAR(std::abs(oracle::eval(pair.psi, z) - want), 0.0, 1e-12 * std::abs(a));
                EXPECT_NEAR(std::abs(pair.psi_at(z) - want), 0.0, 1e-13 * std::abs(a));
                EXPECT_NEAR(std::abs(pair.phi(z) - (c + b * z / (1.0 - c * z))), 0.0, 1e-14);
            }
            // n! * coefficient n is a; phi'(0) is b.
            EXPECT_NEAR(std::abs(fact(n) * pair.psi[static_cast<std::size_t>(n)] - a), 0.0, 1e-13);
            const double h = 1e-6;
            EXPECT_NEAR(std::abs((pair.phi(h) - pair.phi(-h)) / (2.0 * h) - b), 0.0, 1e-8);
        }
    }
}

TEST(Symbols, JSymmetricPsiIsScaledDerivativeKernel)
{
    const cplx a(1.2, -0.4), b(0.3, 0.1), c(0.25, 0.3);
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        for (const int n : {1, 2, 3}) {
            const std::size_t N = 64;
            const auto pair = cswcd::family_J_symmetric(a, b, c, n, alpha, N);
            const auto k = cswcd::kernel(std::conj(c), static_cast<std::size_t>(n), alpha, N);
            const cplx factor = a / (cswcd::t_constant(alpha, n) * fact(n));
            for (std::size_t j = 0; j <= N; ++j) {
                EXPECT_LE(std::abs(pair.psi[j] - factor * k[j]), 1e-12 * std::max(1e-300, std::abs(pair.psi[j])));
            }
        }
    }
}

TEST(Symbols, FamilyEdgeCases)
{
    const auto c0 = cswcd::family_J_symmetric(2.0, 0.5, 0.0, 2, 0.0, 10);
    for (std::size_t j = 0; j <= 10; ++j) {
        EXPECT_NEAR(std::abs(c0.psi[j] - (j == 2 ? 1.0 : 0.0)), 0.0, 1e-15);
    }
    EXPECT_TRUE(cswcd::projectively_equal(c0.phi, cswcd::LinearFractionalMap::dilation(0.5)));
    EXPECT_THROW(cswcd::family_J_symmetric(0.0, 0.5, 0.1, 1, 0.0, 10), cswcd::DomainError);
    EXPECT_THROW(cswcd::family_J_symmetric(1.0, 0.0, 0.1, 1, 0.0, 10), cswcd::DomainError);
    EXPECT_THROW(cswcd::family_J_symmetric(1.0, 0.5, 1.0, 1, 0.0, 10), cswcd::DomainError);
    EXPECT_THROW(cswcd::family_J_symmetric(1.0, 0.5, 0.1, 0, 0.0, 10), cswcd::DomainError);
}

TEST(Symbols, SelfAdjointFamily)
{
    const auto sa = cswcd::family_self_adjoint(1.0, 0.2, cplx(0.0, 0.3), 1, 0.0, 10);
    EXPECT_NEAR(std::abs(sa.psi[1] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sa.psi[2] - cplx(0.0, -0.9)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sa.phi(0.0) - cplx(0.0, 0.3)), 0.0, 1e-16);
    const auto real_c = cswcd::family_self_adjoint(1.5, 0.4, 0.3, 2, 1.0, 20);
    const auto j_sym = cswcd::family_J_symmetric(1.5, 0.4, 0.3, 2, 1.0, 20);
    EXPECT_EQ(real_c.psi, j_sym.psi);
    EXPECT_TRUE(cswcd::projectively_equal(real_c.phi, j_sym.phi));
    EXPECT_THROW(cswcd::family_self_adjoint(cplx(1.0, 0.2), 0.2, 0.1, 1, 0.0, 10), cswcd::DomainError);
    EXPECT_THROW(cswcd::family_self_adjoint(1.0, cplx(0.2, 0.1), 0.1, 1, 0.0, 10), cswcd::DomainError);
}

TEST(Symbols, GeneralFamilyClosedForm)
{
    const cplx a(0.7, 0.3), b(0.2, -0.4), c(-0.1, 0.35);
    const auto pair = cswcd::family_general(a, b, c, 2, 0.5, 80);
    for (const cplx z : {cplx(0.1, 0.2), cplx(-0.3, 0.05)}) {
        EXPECT_NEAR(std::abs(oracle::eval(pair.psi, z) - kernel_shaped_psi(a, std::conj(c), 2, 0.5, z)), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(pair.phi(z) - (c + b * z / (1.0 - std::conj(c) * z))), 0.0, 1e-15);
    }
}

TEST(Symbols, NormalOriginFamily)
{
    const auto pair = cswcd::family_normal_origin(cplx(1.0, 1.0), 0.5, 2, 8);
    for (std::size_t j = 0; j <= 8; ++j) {
        EXPECT_EQ(pair.psi[j], j == 2 ? cplx(1.0, 1.0) : cplx{});
    }
    EXPECT_EQ(pair.phi(cplx(0.2, 0.2)), cplx(0.1, 0.1));
    EXPECT_THROW(cswcd::family_normal_origin(1.0, 0.0, 1, 8), cswcd::DomainError);
    EXPECT_THROW(cswcd::family_normal_origin(1.0, 1.0, 1, 8), cswcd::DomainError);
}

TEST(Symbols, UnitarySymbols)
{
    const auto half = cswcd::unitary_symbols(0.5, 1.0, 0.0, 32);
    EXPECT_EQ(half.n, 0);
    EXPECT_NEAR(std::abs(half.phi(0.5)), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(half.phi(0.0) - 0.5), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(half.psi[0] - 0.75), 0.0, 1e-15);

    const cplx p(0.3, -0.45), lu = std::polar(1.0, 0.7);
    const auto pair = cswcd::unitary_symbols(p, lu, 1.0, 96);
    EXPECT_NEAR(std::abs(pair.phi(p)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pair.phi(0.0) - std::conj(p)), 0.0, 1e-15);
    for (const cplx z : {cplx(0.1, 0.1), cplx(-0.3, 0.2)}) {
        EXPECT_NEAR(std::abs(oracle::eval(pair.psi, z) - psi_p(p, lu, 1.0, z)), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(pair.phi(z) - phi_p(p, z)), 0.0, 1e-15);
    }
    EXPECT_THROW(cswcd::unitary_symbols(0.0, 1.0, 0.0, 8), cswcd::DomainError);
    EXPECT_THROW(cswcd::unitary_symbols(0.5, 1.1, 0.0, 8), cswcd::DomainError);
    EXPECT_THROW(cswcd::unitary_symbols(1.0, 1.0, 0.0, 8), cswcd::DomainError);
}

TEST(Symbols, ConjugatedWcMatchesComposition)
{
    // psi = psi_p * (psi~ o phi_p), phi = phi~ o phi_p evaluated pointwise.
    cswcd::SplitMix64 rng(41);
    for (const double alpha : {-0.5, 0.0, 1.0}) {
        for (const int n : {1, 2, 3}) {
            const cplx p = rng.polar(0.1, 0.6), lu = rng.polar(1.0, 1.0);
            const cplx a = rng.polar(0.5, 2.0), b = rng.polar(0.1, 0.6), c = rng.in_disk(0.3);
            const auto pair = cswcd::family_conjugated_wc(p, lu, a, b, c, n, alpha, 64);
            for (int k = 0; k < 5; ++k) {
                const cplx z = rng.in_disk(0.9);
                const cplx w = phi_p(p, z);
                const cplx want_psi = psi_p(p, lu, alpha, z) * kernel_shaped_psi(a, c, n, alpha, w);
                const cplx want_phi = c + b * w / (1.0 - c * w);
                EXPECT_NEAR(std::abs(pair.psi_at(z) - want_psi), 0.0, 1e-12 * (1.0 + std::abs(want_psi)));
                EXPECT_NEAR(std::abs(pair.phi(z) - want_phi), 0.0, 1e-13);
            }
            const cplx z = rng.in_disk(0.3);
            EXPECT_NEAR(std::abs(oracle::eval(pair.psi, z) - pair.psi_at(z)), 0.0, 1e-11 * (1.0 + std::abs(pair.psi_at(z))));
        }
    }
    // p real, c = 0: phi = b phi_p.
    const auto simple = cswcd::family_conjugated_wc(0.4, 1.0, 1.0, 0.5, 0.0, 1, 0.0, 16);
    const cplx z(0.2, -0.3);
    EXPECT_NEAR(std::abs(simple.phi(z) - 0.5 * phi_p(0.4, z)), 0.0, 1e-15);
}

TEST(Symbols, ConjugatedRotation)
{
    const cplx a(1.0, 0.5), b(0.4, 0.1), c(0.2, -0.1);
    const auto tilde = cswcd::family_J_symmetric(a, b, c, 2, 0.0, 32);
    const auto same = cswcd::family_conjugated_rotation(1.0, 1.0, a, b, c, 2, 0.0, 32);
    EXPECT_EQ(same.psi, tilde.psi);
    const auto flip = cswcd::family_conjugated_rotation(1.0, -1.0, a, b, c, 2, 0.0, 32);
    for (std::size_t j = 0; j <= 32; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        EXPECT_NEAR(std::abs(flip.psi[j] - sign * tilde.psi[j]), 0.0, 1e-14 * (1.0 + std::abs(tilde.psi[j])));
    }
    const cplx mu = std::polar(1.0, 0.3), lambda = std::polar(1.0, -1.1);
    const auto rot = cswcd::family_conjugated_rotation(mu, lambda, a, b, c, 2, 0.0, 32);
    for (const cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.4)}) {
        EXPECT_NEAR(std::abs(rot.psi_at(z) - mu * tilde.psi_at(lambda * z)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(rot.phi(z) - tilde.phi(lambda * z)), 0.0, 1e-15);
    }
    EXPECT_THROW(cswcd::family_conjugated_rotation(1.1, 1.0, a, b, c, 2, 0.0, 32), cswcd::DomainError);
}

TEST(Symbols, BoundedSufficientExamples)
{
    EXPECT_TRUE(cswcd::bounded_sufficient(0.5, 0.0));
    EXPECT_FALSE(cswcd::bounded_sufficient(1.0, 0.0));
    EXPECT_TRUE(cswcd::bounded_sufficient(0.2, 0.3));
    const double lhs = 2.0 * std::abs(0.3 + 0.3 * (0.2 - 0.09));
    const double rhs = 1.0 - std::pow(0.2 - 0.09, 2);
    EXPECT_NEAR(lhs, 0.666, 1e-12);
    EXPECT_NEAR(rhs, 0.9879, 1e-12);
}

TEST(Symbols, BoundedSufficientImpliesSupBelowOne)
{
    cswcd::SplitMix64 rng(1234);
    int accepted = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        const cplx b = rng.in_disk(1.0), c = rng.in_disk(1.0);
        if (b == cplx{} || !cswcd::bounded_sufficient(b, c)) {
            continue;
        }
        ++accepted;
        const auto pair = cswcd::family_J_symmetric(1.0, b, c, 1, 0.0, 8);
        EXPECT_LT(pair.phi.sup_norm(), 1.0) << "b=" << b << " c=" << c;
        EXPECT_TRUE(pair.bounded_hint);
    }
    EXPECT_GT(accepted, 500);
}

TEST(Symbols, RationalWeightSeriesMatchesEvaluation)
{
    const cswcd::RationalWeight w{cplx(0.5, 0.2), {0.0, 1.0, cplx(0.3, 0.0)}, cplx(0.1, 0.4), 3.5};
    const auto s = w.series(80);
    for (const cplx z : {cplx(0.2, 0.1), cplx(-0.4, 0.3)}) {
        const cplx want = cplx(0.5, 0.2) * (z + 0.3 * z * z) * std::pow(1.0 - cplx(0.1, 0.4) * z, -3.5);
        EXPECT_NEAR(std::abs(w(z) - want), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(oracle::eval(s, z) - want), 0.0, 1e-13);
    }
}

TEST(Symbols, WithOrderRebuildsFromClosedForm)
{
    const auto pair = cswcd::family_J_symmetric(1.0, 0.3, 0.2, 1, 0.0, 16);
    const auto wide = cswcd::with_order(pair, 40);
    const auto direct = cswcd::family_J_symmetric(1.0, 0.3, 0.2, 1, 0.0, 40);
    EXPECT_EQ(wide.psi, direct.psi);
}
