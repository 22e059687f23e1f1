#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string_view>

#include "cswcd/bergman.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/operator_matrix.hpp"
#include "cswcd/symbols.hpp"

namespace cswcd {

enum class ConjugationKind { PlainJ, RotationJ, WeightedCompositionJ };

inline std::string_view conjugation_name(ConjugationKind k)
{
    switch (k) {
    case ConjugationKind::PlainJ: return "plain-J";
    case ConjugationKind::RotationJ: return "rotation-J";
    case ConjugationKind::WeightedCompositionJ: return "wc-J";
    }
    return "unknown";
}

/// Antilinear map C f = U (conj f) in basis coordinates: coefficient conjugation
/// followed by the linear factor U.
///
/// For the weighted-composition kind U is the matrix of an automorphism-induced
/// operator, whose columns spread over roughly (1+|p|)/(1-|p|) times as many rows
/// as their index. U is then built at an extended dimension so that products
/// restricted to the nominal (N+1) x (N+1) block are not truncation-limited.
struct AntilinearConjugation {
    ConjugationKind kind = ConjugationKind::PlainJ;
    OperatorMatrix unitary;
    /// Nominal space; unitary.dim() may exceed space.dim().
    SpaceParams space;
    bool exact = true;
    cplx mu = 1.0;
    cplx lambda = 1.0;
    cplx p = 0.0;
    cplx lambda_u = 1.0;

    std::size_t dim() const noexcept { return unitary.dim(); }

    bool is_identity() const noexcept
    {
        return kind == ConjugationKind::PlainJ ||
               (kind == ConjugationKind::RotationJ && mu == cplx{1.0} && lambda == cplx{1.0});
    }

    /// C applied to basis coordinates, zero-padded to dim().
    Vector apply(const Vector& x) const
    {
        const auto d = static_cast<Eigen::Index>(dim());
        if (x.size() > d) {
            throw LengthError("AntilinearConjugation::apply: vector longer than the conjugation dimension");
        }
        Vector padded = Vector::Zero(d);
        padded.head(x.size()) = x.conjugate();
        return unitary.entries * padded;
    }

    TruncatedSeries apply(const TruncatedSeries& f) const
    {
        return from_coordinates(apply(to_coordinates(f, space.alpha)), space.alpha);
    }
};

inline constexpr std::size_t kMaxExtendedDim = 4096;

/// Working dimension for products with the automorphism-induced unitary of parameter p.
inline std::size_t extended_dimension(double p_abs, const SpaceParams& space)
{
    const double spread = (1.0 + p_abs) / (1.0 - p_abs);
    const auto want = static_cast<std::size_t>(std::ceil(1.25 * spread * static_cast<double>(space.dim()))) + 32;
    return std::clamp(want, space.dim(), kMaxExtendedDim);
}

/// (Jf)(z) = conj(f(conj z)); U = I since the basis e_j is J-real.
inline AntilinearConjugation make_J(const SpaceParams& space)
{
    const auto d = static_cast<Eigen::Index>(space.dim());
    return {ConjugationKind::PlainJ, OperatorMatrix{Matrix::Identity(d, d), true, space}, space};
}

/// C_{mu, lambda z} J: U = C_{mu, lambda z}, diagonal with entries mu lambda^j.
inline AntilinearConjugation make_rotation_J(cplx mu, cplx lambda, const SpaceParams& space)
{
    detail::require_unimodular(mu, "mu");
    detail::require_unimodular(lambda, "lambda");
    AntilinearConjugation out{ConjugationKind::RotationJ,
                              build_weighted_composition(TruncatedSeries::constant(mu, space.N),
                                                         LinearFractionalMap::dilation(lambda), space),
                              space};
    out.mu = mu;
    out.lambda = lambda;
    return out;
}

/// C_{psi_p, phi_p} J with U built at extended_dimension(|p|, space).
inline AntilinearConjugation make_wc_J(cplx p, cplx lambda_u, const SpaceParams& space)
{
    if (p == cplx{}) {
        throw DomainError("make_wc_J: p must be nonzero (use make_rotation_J)");
    }
    const std::size_t order = extended_dimension(std::abs(p), space) - 1;
    const SpaceParams wide = space.with_order(order);
    AntilinearConjugation out{ConjugationKind::WeightedCompositionJ,
                              build_weighted_composition(unitary_symbols(p, lambda_u, space.alpha, order), wide),
                              space, false};
    out.p = p;
    out.lambda_u = lambda_u;
    return out;
}

/// Matrix of C T* C = U M^T conj(U): coefficient conjugation turns the conjugate
/// transpose of T* into a plain transpose.
inline Matrix conjugated_adjoint(const AntilinearConjugation& c, const Matrix& m)
{
    if (static_cast<std::size_t>(m.rows()) != c.dim() || m.rows() != m.cols()) {
        throw LengthError("conjugated_adjoint: matrix and conjugation dimensions differ");
    }
    if (c.is_identity()) {
        return m.transpose();
    }
    return c.unitary.entries * m.transpose() * c.unitary.entries.conjugate();
}

struct StructureCheck {
    bool passed = false;
    double defect = 0.0;
    /// Size of the leading block the defect was measured on.
    std::size_t block = 0;
};

/// ||C T* C - T||_F / ||T||_F, on the full matrix when U = I and on the leading
/// (N + 1 - guard) block of the nominal space otherwise.
inline StructureCheck is_C_symmetric(const OperatorMatrix& m, const AntilinearConjugation& c, double tol,
                                     std::size_t guard = kDefaultGuard)
{
    if (m.dim() != c.dim()) {
        throw LengthError("is_C_symmetric: matrix and conjugation dimensions differ");
    }
    StructureCheck out;
    if (c.is_identity()) {
        const double scale = m.entries.norm();
        out.block = m.dim();
        out.defect = scale == 0.0 ? 0.0 : (m.entries.transpose() - m.entries).norm() / scale;
    } else {
        const std::size_t nominal = std::min(c.space.dim(), m.dim());
        const auto k = static_cast<Eigen::Index>(nominal > guard ? nominal - guard : 0);
        const Matrix& u = c.unitary.entries;
        const Matrix cts = u.topRows(k) * m.entries.transpose() * u.leftCols(k).conjugate();
        const auto lead = m.entries.topLeftCorner(k, k);
        const double scale = lead.norm();
        out.block = static_cast<std::size_t>(k);
        out.defect = scale == 0.0 ? 0.0 : (cts - lead).norm() / scale;
    }
    out.passed = out.defect <= tol;
    return out;
}

/// Builds the pair's matrix at the conjugation's working dimension and tests C-symmetry.
inline StructureCheck check_C_symmetry(const SymbolPair& pair, const AntilinearConjugation& c, double tol,
                                       std::size_t guard = kDefaultGuard)
{
    const SpaceParams wide = c.space.with_order(c.dim() - 1);
    return is_C_symmetric(build_wcd_matrix(pair, wide), c, tol, guard);
}

/// ||C C f - f|| / ||f||.
inline double involution_defect(const AntilinearConjugation& c, const TruncatedSeries& f)
{
    const Vector x = to_coordinates(f, c.space.alpha);
    Vector padded = Vector::Zero(static_cast<Eigen::Index>(c.dim()));
    padded.head(x.size()) = x;
    const double scale = x.norm();
    return scale == 0.0 ? 0.0 : (c.apply(c.apply(x)) - padded).norm() / scale;
}

/// | ||C f|| - ||f|| | / ||f||.
inline double isometry_defect(const AntilinearConjugation& c, const TruncatedSeries& f)
{
    const Vector x = to_coordinates(f, c.space.alpha);
    const double scale = x.norm();
    return scale == 0.0 ? 0.0 : std::abs(c.apply(x).norm() - scale) / scale;
}

} // namespace cswcd
