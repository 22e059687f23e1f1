#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>

#include "cswcd/bergman.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/lft.hpp"
#include "cswcd/series.hpp"
#include "cswcd/symbols.hpp"

namespace cswcd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default number of trailing rows/columns dropped from truncation-limited assertions.
inline constexpr std::size_t kDefaultGuard = 8;

/// Matrix of an operator T in the orthonormal basis e_j = z^j / beta(j):
/// entries(i, j) = <T e_j, e_i>, for i, j = 0..space.N.
struct OperatorMatrix {
    Matrix entries;
    /// Every stored entry equals the corresponding entry of the infinite matrix.
    bool exact_columns = true;
    SpaceParams space;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

/// Basis coordinates of f: coordinate_j = c_j beta(j).
inline Vector to_coordinates(const TruncatedSeries& f, double alpha)
{
    const BetaTable beta(alpha, f.order());
    Vector x(static_cast<Eigen::Index>(f.size()));
    for (std::size_t j = 0; j < f.size(); ++j) {
        x(static_cast<Eigen::Index>(j)) = f[j] * beta(j);
    }
    return x;
}

inline TruncatedSeries from_coordinates(const Vector& x, double alpha)
{
    const auto size = static_cast<std::size_t>(x.size());
    const BetaTable beta(alpha, size - 1);
    std::vector<cplx> out(size);
    for (std::size_t j = 0; j < size; ++j) {
        out[j] = x(static_cast<Eigen::Index>(j)) / beta(j);
    }
    return TruncatedSeries(std::move(out));
}

namespace detail {

inline double falling_factorial(std::size_t j, int n)
{
    double f = 1.0;
    for (int k = 0; k < n; ++k) {
        f *= static_cast<double>(j) - k;
    }
    return f;
}

inline void check_wcd_gate(const SymbolPair& pair)
{
    const double sup = pair.phi.sup_norm();
    if (!pair.phi.analytic_on_closed_disk()) {
        throw GateError("phi has a pole in the closed unit disk");
    }
    if (pair.n == 0) {
        if (sup > 1.0 + 1e-12) {
            throw GateError("phi is not a self-map of the disk (sup |phi| = " + std::to_string(sup) + ")");
        }
        return;
    }
    if (!(sup < 1.0) && !pair.bounded_hint) {
        throw GateError("boundedness gate: sup |phi| = " + std::to_string(sup) +
                        " and the sufficient inequality does not hold");
    }
}

} // namespace detail

/// Matrix of D_{psi,phi,n}. Column j >= n holds the coefficients of
/// (j!/(j-n)!/beta(j)) psi phi^(j-n) scaled by beta(i) on row i; columns j < n vanish.
/// Coefficient i of psi phi^k reads only coefficients 0..i of the factors, so
/// every entry matches the infinite matrix up to rounding.
inline OperatorMatrix build_wcd_matrix(const SymbolPair& pair, const SpaceParams& space)
{
    pair.validate();
    detail::check_wcd_gate(pair);
    const std::size_t order = space.N;
    const auto n = static_cast<std::size_t>(pair.n);
    if (order < n) {
        throw LengthError("build_wcd_matrix: truncation order below the differentiation order");
    }
    const TruncatedSeries psi = pair.psi.order() == order ? pair.psi : with_order(pair, order).psi;
    const TruncatedSeries phi = pair.phi.taylor(order);
    const BetaTable beta(space.alpha, order);

    const auto dim = static_cast<Eigen::Index>(order + 1);
    OperatorMatrix out{Matrix::Zero(dim, dim), true, space};
    TruncatedSeries phi_pow = TruncatedSeries::constant(1.0, order);
    for (std::size_t j = n; j <= order; ++j) {
        const TruncatedSeries column = multiply(psi, phi_pow);
        const double factor = detail::falling_factorial(j, pair.n) / beta(j);
        for (std::size_t i = 0; i <= order; ++i) {
            out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = factor * beta(i) * column[i];
        }
        if (j < order) {
            phi_pow = multiply(phi_pow, phi);
        }
    }
    return out;
}

/// C_{psi,phi} f = psi (f o phi): the n = 0 case. Composition with a self-map is
/// always bounded, so only the self-map property is gated.
inline OperatorMatrix build_weighted_composition(const TruncatedSeries& psi, const LinearFractionalMap& phi,
                                                 const SpaceParams& space)
{
    SymbolPair pair{resized(psi, space.N), phi, 0, Family::Explicit};
    return build_wcd_matrix(pair, space);
}

inline OperatorMatrix build_weighted_composition(const SymbolPair& pair, const SpaceParams& space)
{
    if (pair.n != 0) {
        throw DomainError("build_weighted_composition: symbol pair has nonzero order");
    }
    return build_wcd_matrix(pair, space);
}

/// T_h f = h f for bounded analytic h: entries(i, j) = beta(i)/beta(j) h_(i-j), i >= j.
inline OperatorMatrix build_toeplitz_analytic(const TruncatedSeries& h, const SpaceParams& space)
{
    const std::size_t order = space.N;
    const TruncatedSeries hh = h.order() == order ? h : resized(h, order);
    const BetaTable beta(space.alpha, order);
    const auto dim = static_cast<Eigen::Index>(order + 1);
    OperatorMatrix out{Matrix::Zero(dim, dim), true, space};
    for (std::size_t j = 0; j <= order; ++j) {
        for (std::size_t i = j; i <= order; ++i) {
            out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = beta(i) / beta(j) * hh[i - j];
        }
    }
    return out;
}

/// Conjugate transpose. Truncation commutes with transposition, so an
/// entrywise-exact input gives an entrywise-exact adjoint.
inline OperatorMatrix adjoint_matrix(const OperatorMatrix& m)
{
    return {m.entries.adjoint(), m.exact_columns, m.space};
}

inline TruncatedSeries apply(const OperatorMatrix& m, const TruncatedSeries& f)
{
    if (f.size() != m.dim()) {
        throw LengthError("apply: series order does not match the matrix dimension");
    }
    return from_coordinates(m.entries * to_coordinates(f, m.space.alpha), m.space.alpha);
}

struct KernelAdjointCheck {
    TruncatedSeries via_matrix;
    TruncatedSeries via_formula;
    double defect = 0.0;
};

/// D* K_w two ways: the adjoint matrix applied to K_w, and conj(psi(w)) K_{phi(w)}^(n).
/// `defect` is the A^2_alpha norm of their difference over the truncation.
inline KernelAdjointCheck adjoint_on_kernel(const SymbolPair& pair, cplx w, const SpaceParams& space)
{
    if (!(std::abs(w) <= 0.7)) {
        throw DomainError("adjoint_on_kernel: |w| must be <= 0.7");
    }
    const cplx image = pair.phi(w);
    if (!(std::abs(image) <= 0.85)) {
        throw GateError("adjoint_on_kernel: |phi(w)| exceeds 0.85");
    }
    const OperatorMatrix m = build_wcd_matrix(pair, space);
    const Vector x = to_coordinates(kernel(w, 0, space.alpha, space.N), space.alpha);
    TruncatedSeries via_matrix = from_coordinates(m.entries.adjoint() * x, space.alpha);
    TruncatedSeries via_formula =
        scale(kernel(image, static_cast<std::size_t>(pair.n), space.alpha, space.N), std::conj(pair.psi_at(w)));
    const double defect = norm(add(via_matrix, scale(via_formula, -1.0)), space.alpha);
    return {std::move(via_matrix), std::move(via_formula), defect};
}

/// Weight K_w^(n)(z) = t z^n / (1 - conj(w) z)^(n+alpha+2) in closed form.
inline RationalWeight kernel_weight(cplx w, int n, double alpha)
{
    return {t_constant(alpha, n), detail::monomial_coeffs(n), std::conj(w), n + alpha + 2.0};
}

struct AdjointPair {
    SymbolPair pairA;
    SymbolPair pairB;
};

/// (K^(n)_{sigma(0)}, phi) and (K^(n)_{phi(0)}, sigma), whose operators are adjoint
/// to each other when sup |phi| < 1.
inline AdjointPair cowen_adjoint_pair(const LinearFractionalMap& phi, int n, const SpaceParams& space)
{
    const double sup = phi.sup_norm();
    if (!(sup < 1.0)) {
        throw GateError("cowen_adjoint_pair: requires sup |phi| < 1");
    }
    const LinearFractionalMap sigma = sigma_companion(phi);
    auto make = [&](cplx point, const LinearFractionalMap& map, Family family) {
        RationalWeight w = kernel_weight(point, n, space.alpha);
        SymbolPair pair{w.series(space.N), map, n, family};
        pair.closed_form = std::move(w);
        pair.bounded_hint = map.sup_norm() < 1.0;
        return pair;
    };
    return {make(sigma(0.0), phi, Family::CowenA), make(phi(0.0), sigma, Family::CowenB)};
}

/// Dense complex matrix as CSV: one line per row, "re,im" pairs separated by commas.
inline void write_matrix_csv(const OperatorMatrix& m, std::ostream& os)
{
    os << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
            if (j > 0) {
                os << ',';
            }
            os << m.entries(i, j).real() << ',' << m.entries(i, j).imag();
        }
        os << '\n';
    }
}

/// Leading k x k block, clamped to the matrix size.
inline auto leading_block(const Matrix& m, std::size_t k)
{
    const auto kk = std::min<Eigen::Index>(static_cast<Eigen::Index>(k), m.rows());
    return m.topLeftCorner(kk, kk);
}

} // namespace cswcd
