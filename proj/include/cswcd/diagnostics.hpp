#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cswcd/bergman.hpp"
#include "cswcd/conjugation.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/lft.hpp"
#include "cswcd/operator_matrix.hpp"
#include "cswcd/symbols.hpp"

namespace cswcd {

enum class Trend { BoundedLooking, Diverging, Inconclusive };

inline std::string_view trend_name(Trend t)
{
    switch (t) {
    case Trend::BoundedLooking: return "bounded-looking";
    case Trend::Diverging: return "diverging";
    case Trend::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct GridSample {
    cplx w;
    double value = 0.0;
};

/// Samples of a radial limit statement on a polar grid. Evidence, not a certificate.
struct GridReport {
    std::vector<GridSample> samples;
    /// Grid points where the quantity is undefined (|phi(w)| >= 1, w = phi(0)).
    std::vector<cplx> skipped;
    std::vector<double> radii;
    /// Max over angles for each radius (NaN when every angle was skipped).
    std::vector<double> radial_max;
    double supremum = 0.0;
    Trend trend = Trend::Inconclusive;
    /// Radial maxima non-increasing over the last three radii and the last below the first.
    bool compact_consistent = false;
};

inline const std::vector<double>& default_radii()
{
    static const std::vector<double> radii{0.5, 0.75, 0.9, 0.95, 0.99, 0.995, 0.999};
    return radii;
}

inline constexpr std::size_t kDefaultAngles = 64;

namespace detail {

/// Diverging: radial maxima strictly increase over the last three radii and grow
/// by more than 10x across them. Bounded-looking: the last radial maximum does
/// not exceed the largest earlier one.
inline void classify(GridReport& report)
{
    const auto& m = report.radial_max;
    const std::size_t k = m.size();
    report.trend = Trend::Inconclusive;
    report.compact_consistent = false;
    if (k < 3 || std::any_of(m.end() - 3, m.end(), [](double v) { return std::isnan(v); })) {
        return;
    }
    const double a = m[k - 3], b = m[k - 2], c = m[k - 1];
    if (a < b && b < c && c > 10.0 * a) {
        report.trend = Trend::Diverging;
    } else {
        double earlier = 0.0;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (!std::isnan(m[i])) {
                earlier = std::max(earlier, m[i]);
            }
        }
        if (c <= earlier) {
            report.trend = Trend::BoundedLooking;
        }
    }
    report.compact_consistent = a >= b && b >= c && !std::isnan(m.front()) && c < m.front();
}

template <typename F>
GridReport polar_grid(const std::vector<double>& radii, std::size_t angles, F&& value_at)
{
    for (double r : radii) {
        if (!(r > 0.0 && r < 1.0)) {
            throw DomainError("grid radii must lie in (0, 1)");
        }
    }
    if (angles == 0) {
        throw DomainError("grid needs at least one angle");
    }
    GridReport out;
    out.radii = radii;
    for (double r : radii) {
        double best = NAN;
        for (std::size_t k = 0; k < angles; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
            const cplx w = std::polar(r, theta);
            double v = 0.0;
            if (!value_at(w, v)) {
                out.skipped.push_back(w);
                continue;
            }
            out.samples.push_back({w, v});
            best = std::isnan(best) ? v : std::max(best, v);
        }
        out.radial_max.push_back(best);
    }
    for (const auto& s : out.samples) {
        out.supremum = std::max(out.supremum, s.value);
    }
    classify(out);
    return out;
}

} // namespace detail

/// (1 - |w|)^(alpha+2) / (1 - |phi(w)|)^(alpha+2+2n) on a polar grid; D_{phi,n} is
/// bounded iff this is bounded on the disk, compact iff it tends to 0 at the circle.
inline GridReport boundedness_ratio_grid(const LinearFractionalMap& phi, double alpha, int n,
                                         const std::vector<double>& radii = default_radii(),
                                         std::size_t angles = kDefaultAngles)
{
    detail::require_weight(alpha);
    return detail::polar_grid(radii, angles, [&](cplx w, double& value) {
        const double image = std::abs(phi(w));
        if (!(image < 1.0)) {
            return false;
        }
        value = std::pow(1.0 - std::abs(w), alpha + 2.0) / std::pow(1.0 - image, alpha + 2.0 + 2.0 * n);
        return true;
    });
}

/// N_{phi,alpha+2}(w) for univalent phi: [ln(1/|z|)]^(alpha+2) with z = phi^{-1}(w)
/// when that preimage lies in the disk, else 0.
inline double nevanlinna_univalent(const LinearFractionalMap& phi, cplx w, double alpha)
{
    detail::require_weight(alpha);
    const cplx origin_image = phi(0.0);
    if (std::abs(w - origin_image) <= 1e-14 * std::max(1.0, std::abs(w))) {
        throw DomainError("nevanlinna_univalent: w = phi(0) is excluded");
    }
    const LinearFractionalMap inv = phi.inverse();
    const cplx den = inv.c() * w + inv.d();
    if (den == cplx{}) {
        return 0.0;
    }
    const double r = std::abs(inv(w));
    if (!(r < 1.0)) {
        return 0.0;
    }
    return std::pow(std::log(1.0 / r), alpha + 2.0);
}

/// N_{phi,alpha+2}(w) / [ln(1/|w|)]^(alpha+2+2n) on a polar grid.
inline GridReport nevanlinna_bound_grid(const LinearFractionalMap& phi, double alpha, int n,
                                        const std::vector<double>& radii = default_radii(),
                                        std::size_t angles = kDefaultAngles)
{
    detail::require_weight(alpha);
    const cplx origin_image = phi(0.0);
    return detail::polar_grid(radii, angles, [&](cplx w, double& value) {
        if (std::abs(w - origin_image) <= 1e-14) {
            return false;
        }
        value = nevanlinna_univalent(phi, w, alpha) / std::pow(std::log(1.0 / std::abs(w)), alpha + 2.0 + 2.0 * n);
        return true;
    });
}

/// re(w), im(w), value per sample.
inline void write_grid_csv(const GridReport& report, std::ostream& os)
{
    os << "re_w,im_w,value\n" << std::setprecision(17);
    for (const auto& s : report.samples) {
        os << s.w.real() << ',' << s.w.imag() << ',' << s.value << '\n';
    }
}

struct ConditionItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct NecessaryConditionsReport {
    std::vector<ConditionItem> items;
    bool all_passed() const
    {
        return std::all_of(items.begin(), items.end(), [](const ConditionItem& i) { return i.passed; });
    }
};

/// The four necessary conditions for J-symmetric (and normal) D_{psi,phi,n}:
/// (i) psi^(m)(0) = 0 for m < n, (ii) psi^(n)(0) != 0, (iii) psi has no zero in
/// the punctured disk, (iv) phi univalent. (iii) is a fixed polar scan, not a
/// root search; (iv) holds structurally for nonconstant linear fractional maps.
inline NecessaryConditionsReport necessary_conditions_check(const SymbolPair& pair)
{
    NecessaryConditionsReport out;
    const auto n = static_cast<std::size_t>(std::max(pair.n, 0));
    const double scale = std::max(pair.psi.max_abs(), 1e-300);
    constexpr double coeff_tol = 1e-12;

    {
        ConditionItem item{"(i) psi^(m)(0) = 0 for m < n", true, ""};
        for (std::size_t m = 0; m < n && m < pair.psi.size(); ++m) {
            if (std::abs(pair.psi[m]) > coeff_tol * scale) {
                item.passed = false;
                item.detail = "coefficient " + std::to_string(m) + " is nonzero";
                break;
            }
        }
        out.items.push_back(std::move(item));
    }
    {
        ConditionItem item{"(ii) psi^(n)(0) != 0", n < pair.psi.size() && std::abs(pair.psi[n]) > coeff_tol * scale,
                           ""};
        if (!item.passed) {
            item.detail = "coefficient " + std::to_string(n) + " vanishes";
        }
        out.items.push_back(std::move(item));
    }
    {
        ConditionItem item{"(iii) psi nonvanishing on the punctured disk", true, ""};
        constexpr std::size_t kAngles = 64;
        for (int ri = 1; ri <= 9 && item.passed; ++ri) {
            const double r = 0.1 * ri;
            for (std::size_t k = 0; k < kAngles; ++k) {
                const cplx z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / kAngles);
                if (!(std::abs(pair.psi_at(z)) > 1e-10)) {
                    item.passed = false;
                    std::ostringstream os;
                    os << "|psi| <= 1e-10 at z = " << z;
                    item.detail = os.str();
                    break;
                }
            }
        }
        out.items.push_back(std::move(item));
    }
    out.items.push_back({"(iv) phi univalent", true, "nonconstant linear fractional map"});
    return out;
}

/// ||M - M^H||_F / ||M||_F on the full matrix (entries are exact).
inline StructureCheck is_hermitian(const OperatorMatrix& m, double tol)
{
    StructureCheck out;
    out.block = m.dim();
    const double scale = m.entries.norm();
    out.defect = scale == 0.0 ? 0.0 : (m.entries - m.entries.adjoint()).norm() / scale;
    out.passed = out.defect <= tol;
    return out;
}

/// ||M M^H - M^H M||_F / ||M||_F^2 on the leading (dim - guard) block.
inline StructureCheck is_normal(const OperatorMatrix& m, double tol, std::size_t guard = kDefaultGuard)
{
    StructureCheck out;
    const auto k = static_cast<Eigen::Index>(m.dim() > guard ? m.dim() - guard : 0);
    out.block = static_cast<std::size_t>(k);
    const double scale = m.entries.squaredNorm();
    if (scale == 0.0) {
        out.passed = true;
        return out;
    }
    const Matrix& a = m.entries;
    const Matrix lhs = a.topRows(k) * a.topRows(k).adjoint();
    const Matrix rhs = a.leftCols(k).adjoint() * a.leftCols(k);
    out.defect = (lhs - rhs).norm() / scale;
    out.passed = out.defect <= tol;
    return out;
}

struct KernelNormTest {
    double defect = 0.0;
    cplx p1;
    cplx p2;
    /// ||D K_w||^2 and ||D* K_w||^2 in closed form.
    double norm_d_sq = 0.0;
    double norm_dstar_sq = 0.0;
    /// The same norms from the truncated matrix (lower bounds; tails omitted).
    double matrix_norm_d_sq = 0.0;
    double matrix_norm_dstar_sq = 0.0;
};

/// | ||D K_w||^2 - ||D* K_w||^2 | for psi = a z^n/(n!(1 - conj(c) z)^s), phi = c + b z/(1 - conj(c) z).
///
/// D K_w = a conj(w)^n / (n! (1 - conj(w) c)^s) K^(n)_{p1} with p1 = c + conj(b) w / (1 - conj(c) w),
/// D* K_w = conj(psi(w)) K^(n)_{p2} with p2 = phi(w); both prefactors share modulus,
/// so normality forces |p1| = |p2|.
inline KernelNormTest norm_defect_kernel_test(const SymbolPair& pair, cplx w, const SpaceParams& space)
{
    if (pair.family != Family::General && pair.family != Family::SelfAdjoint &&
        pair.family != Family::NormalOrigin) {
        throw DomainError("norm_defect_kernel_test: needs a general, self-adjoint or normal-origin family pair");
    }
    if (!(std::abs(w) <= 0.7)) {
        throw DomainError("norm_defect_kernel_test: |w| must be <= 0.7");
    }
    const cplx a = pair.params.a;
    const cplx b = pair.params.b;
    const cplx c = pair.family == Family::NormalOrigin ? cplx{} : pair.params.c;
    const int n = pair.n;
    const double alpha = space.alpha;
    const double s = n + alpha + 2.0;
    const auto nn = static_cast<std::size_t>(n);

    KernelNormTest out;
    out.p1 = c + std::conj(b) * w / (1.0 - std::conj(c) * w);
    out.p2 = pair.phi(w);
    if (!(std::abs(out.p1) <= 0.85) || !(std::abs(out.p2) <= 0.85)) {
        throw GateError("norm_defect_kernel_test: |p1| or |p2| exceeds 0.85");
    }
    // Normal-origin psi = a z^n differs from the general family's a z^n / n!.
    const double psi_norm = pair.family == Family::NormalOrigin ? 1.0 : detail::factorial(n);
    const double prefactor_d = std::norm(a * std::pow(std::conj(w), n) / psi_norm) /
                               std::pow(std::norm(1.0 - std::conj(w) * c), s);
    out.norm_d_sq = prefactor_d * kernel_norm_sq(out.p1, nn, alpha).value;
    out.norm_dstar_sq = std::norm(pair.psi_at(w)) * kernel_norm_sq(out.p2, nn, alpha).value;
    out.defect = std::abs(out.norm_d_sq - out.norm_dstar_sq);

    const OperatorMatrix m = build_wcd_matrix(pair, space);
    const Vector x = to_coordinates(kernel(w, 0, alpha, space.N), alpha);
    out.matrix_norm_d_sq = (m.entries * x).squaredNorm();
    out.matrix_norm_dstar_sq = (m.entries.adjoint() * x).squaredNorm();
    return out;
}

} // namespace cswcd
