#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cswcd/errors.hpp"

namespace cswcd {

using cplx = std::complex<double>;

/// Default distance from the unit circle below which evaluation is refused.
inline constexpr double kEvalBoundaryEps = 1e-6;

/// Taylor coefficients c_0..c_N of an analytic function on the disk.
///
/// Coefficients with index below `exact_terms()` agree with the untruncated
/// function; the rest were lost to truncation (e.g. by differentiation) and
/// are stored as zero.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1), exact_terms_(order + 1) {}

    explicit TruncatedSeries(std::vector<cplx> coeffs) : TruncatedSeries(std::move(coeffs), 0, false) {}

    TruncatedSeries(std::vector<cplx> coeffs, std::size_t exact_terms)
        : TruncatedSeries(std::move(coeffs), exact_terms, true) {}

    static TruncatedSeries monomial(std::size_t k, std::size_t order, cplx value = 1.0)
    {
        TruncatedSeries out(order);
        if (k <= order) {
            out.coeffs_[k] = value;
        }
        return out;
    }

    static TruncatedSeries constant(cplx value, std::size_t order) { return monomial(0, order, value); }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::size_t exact_terms() const noexcept { return exact_terms_; }

    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    cplx operator[](std::size_t j) const { return coeffs_[j]; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& c : coeffs_) {
            m = std::max(m, std::abs(c));
        }
        return m;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    TruncatedSeries(std::vector<cplx> coeffs, std::size_t exact_terms, bool explicit_exact)
        : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw LengthError("TruncatedSeries needs at least one coefficient");
        }
        for (const auto& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw DomainError("TruncatedSeries coefficients must be finite");
            }
        }
        exact_terms_ = explicit_exact ? std::min(exact_terms, coeffs_.size()) : coeffs_.size();
    }

    std::vector<cplx> coeffs_;
    std::size_t exact_terms_;
};

namespace detail {

inline void require_same_order(const TruncatedSeries& f, const TruncatedSeries& g, const char* op)
{
    if (f.order() != g.order()) {
        throw LengthError(std::string(op) + ": truncation orders differ (" + std::to_string(f.order()) +
                          " vs " + std::to_string(g.order()) + ")");
    }
}

} // namespace detail

inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g)
{
    detail::require_same_order(f, g, "add");
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = f[j] + g[j];
    }
    return {std::move(out), std::min(f.exact_terms(), g.exact_terms())};
}

inline TruncatedSeries scale(const TruncatedSeries& f, cplx factor)
{
    std::vector<cplx> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) {
        c *= factor;
    }
    return {std::move(out), f.exact_terms()};
}

/// Cauchy product truncated at the common order. Coefficient m only reads
/// coefficients 0..m of the factors.
inline TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g)
{
    detail::require_same_order(f, g, "multiply");
    const std::size_t size = f.size();
    std::vector<cplx> out(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (f[i] == cplx{}) {
            continue;
        }
        for (std::size_t j = 0; i + j < size; ++j) {
            out[i + j] += f[i] * g[j];
        }
    }
    return {std::move(out), std::min(f.exact_terms(), g.exact_terms())};
}

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g); }
inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return multiply(f, g); }

/// k-th derivative. The top k coefficients cannot be recovered from the
/// truncation; they are zeroed and excluded from exact_terms().
inline TruncatedSeries derivative(const TruncatedSeries& f, std::size_t k)
{
    const std::size_t size = f.size();
    std::vector<cplx> out(size);
    for (std::size_t j = 0; j + k < size; ++j) {
        double falling = 1.0;
        for (std::size_t i = j + 1; i <= j + k; ++i) {
            falling *= static_cast<double>(i);
        }
        out[j] = falling * f[j + k];
    }
    const std::size_t exact = f.exact_terms() > k ? f.exact_terms() - k : 0;
    return {std::move(out), exact};
}

/// f^k by repeated multiplication; f^0 is the constant 1.
inline TruncatedSeries power(const TruncatedSeries& f, std::size_t k)
{
    auto out = TruncatedSeries::constant(1.0, f.order());
    for (std::size_t i = 0; i < k; ++i) {
        out = multiply(out, f);
    }
    return out;
}

/// Coefficients of (1 - c z)^(-s): u_0 = 1, u_j = u_{j-1} c (s + j - 1) / j.
inline TruncatedSeries expand_rational_kernel(double s, cplx c, std::size_t order)
{
    if (!(s > 0.0)) {
        throw DomainError("expand_rational_kernel: exponent must be positive");
    }
    if (!(std::abs(c) < 1.0)) {
        throw DomainError("expand_rational_kernel: |c| must be < 1");
    }
    std::vector<cplx> out(order + 1);
    out[0] = 1.0;
    for (std::size_t j = 1; j <= order; ++j) {
        out[j] = out[j - 1] * c * ((s + static_cast<double>(j) - 1.0) / static_cast<double>(j));
    }
    return TruncatedSeries(std::move(out));
}

/// Coefficients of (J f)(z) = conj(f(conj z)).
inline TruncatedSeries conjugate_reflect(const TruncatedSeries& f)
{
    std::vector<cplx> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) {
        c = std::conj(c);
    }
    return {std::move(out), f.exact_terms()};
}

/// Zero-pad or cut to a new truncation order. Cutting keeps exactness of the
/// retained prefix; padding is exact only when the input was exact throughout.
inline TruncatedSeries resized(const TruncatedSeries& f, std::size_t order)
{
    std::vector<cplx> out(order + 1);
    const std::size_t keep = std::min(out.size(), f.size());
    std::copy_n(f.coeffs().begin(), keep, out.begin());
    return {std::move(out), std::min(f.exact_terms(), order + 1)};
}

struct Evaluation {
    cplx value;
    /// Bound on the neglected tail, present only when a coefficient bound was supplied.
    std::optional<double> tail_bound;
};

/// Horner evaluation of the truncated polynomial at |z| <= 1 - eps.
///
/// With `coeff_bound` (a bound on |c_j| for all j, including those beyond N) the
/// geometric tail bound coeff_bound |z|^(N+1) / (1 - |z|) is reported.
inline Evaluation evaluate_with_bound(const TruncatedSeries& f, cplx z, std::optional<double> coeff_bound = {},
                                      double eps = kEvalBoundaryEps)
{
    const double r = std::abs(z);
    if (!(r <= 1.0 - eps)) {
        throw DomainError("evaluate: |z| too close to the unit circle");
    }
    cplx acc = 0.0;
    for (std::size_t j = f.size(); j-- > 0;) {
        acc = acc * z + f[j];
    }
    Evaluation out{acc, std::nullopt};
    if (coeff_bound) {
        out.tail_bound = *coeff_bound * std::pow(r, static_cast<double>(f.order() + 1)) / (1.0 - r);
    }
    return out;
}

inline cplx evaluate(const TruncatedSeries& f, cplx z, double eps = kEvalBoundaryEps)
{
    return evaluate_with_bound(f, z, std::nullopt, eps).value;
}

} // namespace cswcd
