#pragma once

// Independent closed forms used as oracles. Nothing here calls into the library's
// recurrences.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "cswcd/random.hpp"
#include "cswcd/series.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// j! Gamma(alpha + 2) / Gamma(j + alpha + 2) through lgamma.
inline double beta_sq(std::size_t j, double alpha)
{
    const double jd = static_cast<double>(j);
    return std::exp(std::lgamma(jd + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(jd + alpha + 2.0));
}

/// Coefficient k of (1 - c z)^(-s): Gamma(s + k) / (Gamma(s) k!) c^k.
inline cplx binomial_series_coeff(double s, cplx c, std::size_t k)
{
    const double kd = static_cast<double>(k);
    return std::exp(std::lgamma(s + kd) - std::lgamma(s) - std::lgamma(kd + 1.0)) * std::pow(c, static_cast<int>(k));
}

inline double falling(std::size_t j, std::size_t m)
{
    double f = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        f *= static_cast<double>(j) - static_cast<double>(k);
    }
    return f;
}

/// Direct polynomial evaluation with std::pow.
inline cplx eval(const cswcd::TruncatedSeries& f, cplx z)
{
    cplx sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        sum += f[j] * std::pow(z, static_cast<int>(j));
    }
    return sum;
}

/// Random polynomial of the given degree with coefficients in the unit disk, padded to `order`.
inline cswcd::TruncatedSeries random_poly(cswcd::SplitMix64& rng, std::size_t degree, std::size_t order)
{
    std::vector<cplx> c(order + 1);
    for (std::size_t j = 0; j <= degree; ++j) {
        c[j] = rng.in_disk(1.0);
    }
    return cswcd::TruncatedSeries(std::move(c));
}

} // namespace oracle
