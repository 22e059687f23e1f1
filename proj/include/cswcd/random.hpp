#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace cswcd {

/// SplitMix64. Reproducible across implementations:
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// uniform() takes the top 53 bits: (next() >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// abs uniform in [abs_lo, abs_hi], argument uniform in [arg_lo, arg_hi).
    std::complex<double> polar(double abs_lo, double abs_hi, double arg_lo = 0.0,
                               double arg_hi = 2.0 * std::numbers::pi) noexcept
    {
        const double r = uniform(abs_lo, abs_hi);
        const double t = uniform(arg_lo, arg_hi);
        return std::polar(r, t);
    }

    /// Uniform on the disk of radius `radius`.
    std::complex<double> in_disk(double radius) noexcept
    {
        const double r = radius * std::sqrt(uniform());
        const double t = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(r, t);
    }

private:
    std::uint64_t state_;
};

} // namespace cswcd
