#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cswcd/errors.hpp"
#include "cswcd/series.hpp"

namespace cswcd {

/// Weight alpha of A^2_alpha, order n of the differentiation, truncation order N.
/// Matrices built for these parameters are (N+1) x (N+1), indexed 0..N.
struct SpaceParams {
    double alpha = 0.0;
    int n = 1;
    std::size_t N = 64;

    std::size_t dim() const noexcept { return N + 1; }

    void validate() const
    {
        if (!(alpha > -1.0)) {
            throw DomainError("SpaceParams: alpha must be > -1");
        }
        if (n < 1) {
            throw DomainError("SpaceParams: n must be >= 1");
        }
        if (N < static_cast<std::size_t>(n) + 2) {
            throw DomainError("SpaceParams: N must be >= n + 2");
        }
    }

    SpaceParams with_order(std::size_t order) const
    {
        SpaceParams out = *this;
        out.N = order;
        return out;
    }
};

namespace detail {

inline void require_weight(double alpha)
{
    if (!(alpha > -1.0)) {
        throw DomainError("Bergman weight alpha must be > -1");
    }
}

inline void require_in_disk(cplx w, const char* what)
{
    if (!(std::abs(w) < 1.0)) {
        throw DomainError(std::string(what) + ": point must lie in the open unit disk");
    }
}

} // namespace detail

/// beta(j)^2 = ||z^j||^2 = j! Gamma(alpha+2) / Gamma(j+alpha+2), by the
/// recurrence beta(j)^2 = beta(j-1)^2 j / (j + alpha + 1).
inline double beta_sq(std::size_t j, double alpha)
{
    detail::require_weight(alpha);
    double b = 1.0;
    for (std::size_t k = 1; k <= j; ++k) {
        const auto kd = static_cast<double>(k);
        b *= kd / (kd + alpha + 1.0);
    }
    return b;
}

/// beta(j)^2 and beta(j) for j = 0..N.
class BetaTable {
public:
    BetaTable(double alpha, std::size_t order) : sq_(order + 1), root_(order + 1)
    {
        detail::require_weight(alpha);
        sq_[0] = 1.0;
        for (std::size_t k = 1; k <= order; ++k) {
            const auto kd = static_cast<double>(k);
            sq_[k] = sq_[k - 1] * kd / (kd + alpha + 1.0);
        }
        for (std::size_t k = 0; k <= order; ++k) {
            root_[k] = std::sqrt(sq_[k]);
        }
    }

    double sq(std::size_t j) const { return sq_[j]; }
    double operator()(std::size_t j) const { return root_[j]; }
    std::size_t size() const noexcept { return sq_.size(); }

private:
    std::vector<double> sq_;
    std::vector<double> root_;
};

/// t = (alpha+2)(alpha+3)...(alpha+n+1); equals n!/beta(n)^2.
inline double t_constant(double alpha, int n)
{
    double t = 1.0;
    for (int k = 2; k <= n + 1; ++k) {
        t *= alpha + k;
    }
    return t;
}

/// <f, g> = sum_j f_j conj(g_j) beta(j)^2 over the common truncation.
inline cplx inner_product(const TruncatedSeries& f, const TruncatedSeries& g, double alpha)
{
    detail::require_same_order(f, g, "inner_product");
    const BetaTable beta(alpha, f.order());
    cplx acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        acc += f[j] * std::conj(g[j]) * beta.sq(j);
    }
    return acc;
}

inline double norm(const TruncatedSeries& f, double alpha) { return std::sqrt(inner_product(f, f, alpha).real()); }

/// K_w^(m) truncated at `order`: coefficient j = (j!/(j-m)!) conj(w)^(j-m) / beta(j)^2 for j >= m.
inline TruncatedSeries kernel(cplx w, std::size_t m, double alpha, std::size_t order)
{
    detail::require_weight(alpha);
    detail::require_in_disk(w, "kernel");
    std::vector<cplx> out(order + 1);
    if (m > order) {
        return TruncatedSeries(std::move(out));
    }
    // j = m term: m!/beta(m)^2 = (alpha+2)...(alpha+m+1).
    cplx coeff = t_constant(alpha, static_cast<int>(m));
    const cplx wbar = std::conj(w);
    for (std::size_t j = m; j <= order; ++j) {
        out[j] = coeff;
        const auto jd = static_cast<double>(j);
        coeff *= wbar * ((jd + alpha + 2.0) / (jd + 1.0 - static_cast<double>(m)));
    }
    return TruncatedSeries(std::move(out));
}

/// |<f, K_w^(m)> - f^(m)(w)|; zero up to rounding when f is a polynomial of degree <= N - m.
inline double reproducing_check(const TruncatedSeries& f, cplx w, std::size_t m, double alpha)
{
    if (!(std::abs(w) <= 0.7)) {
        throw DomainError("reproducing_check: |w| must be <= 0.7");
    }
    const cplx via_kernel = inner_product(f, kernel(w, m, alpha, f.order()), alpha);
    const cplx via_derivative = evaluate(derivative(f, m), w);
    return std::abs(via_kernel - via_derivative);
}

struct KernelNorm {
    double value = 0.0;
    /// Ratio-test bound on the neglected tail.
    double tail = 0.0;
    std::size_t terms = 0;
    bool converged = true;
};

inline constexpr double kKernelNormTol = 1e-12;
inline constexpr std::size_t kKernelNormMaxTerms = 1'000'000;

/// ||K_w^(m)||^2 = sum_{j>=m} |w|^(2(j-m)) (j!/(j-m)!)^2 / beta(j)^2, summed from
/// the untruncated series until the tail estimate drops below `tol` (relative
/// once the sum exceeds one).
///
/// Successive term ratios decrease monotonically towards |w|^2, so once a ratio r
/// is below one the tail after the current term is at most term * r / (1 - r).
inline KernelNorm kernel_norm_sq(cplx w, std::size_t m, double alpha, double tol = kKernelNormTol,
                                 std::size_t max_terms = kKernelNormMaxTerms)
{
    detail::require_weight(alpha);
    detail::require_in_disk(w, "kernel_norm_sq");
    const double x = std::norm(w);
    const double md = static_cast<double>(m);
    // j = m: (m!)^2 / beta(m)^2 = m! t_m.
    double term = t_constant(alpha, static_cast<int>(m));
    for (std::size_t k = 2; k <= m; ++k) {
        term *= static_cast<double>(k);
    }
    KernelNorm out;
    for (std::size_t j = m;; ++j) {
        out.value += term;
        ++out.terms;
        const double jd = static_cast<double>(j);
        const double growth = (jd + 1.0) / (jd + 1.0 - md);
        const double ratio = x * growth * growth * (jd + alpha + 2.0) / (jd + 1.0);
        const double next = term * ratio;
        if (ratio < 1.0) {
            out.tail = next / (1.0 - ratio);
            if (out.tail < tol * std::max(1.0, out.value)) {
                break;
            }
        }
        if (out.terms >= max_terms) {
            out.tail = ratio < 1.0 ? next / (1.0 - ratio) : INFINITY;
            out.converged = false;
            break;
        }
        term = next;
    }
    return out;
}

} // namespace cswcd
