#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <ostream>
#include <vector>

#include "cswcd/errors.hpp"
#include "cswcd/series.hpp"

namespace cswcd {

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class LinearFractionalMap {
public:
    LinearFractionalMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d)
    {
        const double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
        if (!(scale > 0.0) || std::abs(det()) <= 1e-14 * scale) {
            throw DomainError("LinearFractionalMap: ad - bc must be nonzero");
        }
    }

    static LinearFractionalMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static LinearFractionalMap dilation(cplx factor) { return {factor, 0.0, 0.0, 1.0}; }

    cplx a() const noexcept { return a_; }
    cplx b() const noexcept { return b_; }
    cplx c() const noexcept { return c_; }
    cplx d() const noexcept { return d_; }
    cplx det() const noexcept { return a_ * d_ - b_ * c_; }

    cplx operator()(cplx z) const
    {
        const cplx den = c_ * z + d_;
        if (std::abs(den) <= 1e-300 || std::abs(den) <= 1e-15 * (std::abs(c_ * z) + std::abs(d_))) {
            throw SingularityError("LinearFractionalMap: evaluation at the pole");
        }
        return (a_ * z + b_) / den;
    }

    /// phi'(z) = det / (c z + d)^2.
    cplx derivative(cplx z) const
    {
        const cplx den = c_ * z + d_;
        if (den == cplx{}) {
            throw SingularityError("LinearFractionalMap: derivative at the pole");
        }
        return det() / (den * den);
    }

    LinearFractionalMap inverse() const { return {d_, -b_, -c_, a_}; }

    /// Pole-free on the closed disk, i.e. |d| > |c|.
    bool analytic_on_closed_disk() const { return std::abs(d_) > std::abs(c_); }

    /// sup over the closed disk of |phi|. The image of the unit circle is the
    /// circle |d w - b| = |a - c w|; with the pole outside the closed disk the
    /// image of the disk is the interior, so the sup is |centre| + radius.
    /// Returns +inf when the pole lies in the closed disk.
    double sup_norm() const
    {
        const double den = std::norm(d_) - std::norm(c_);
        if (!(den > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        const cplx q = d_ * std::conj(b_) - std::conj(a_) * c_;
        const double r2 = (std::norm(q) - den * (std::norm(b_) - std::norm(a_))) / (den * den);
        return std::abs(q) / den + std::sqrt(std::max(r2, 0.0));
    }

    bool is_self_map() const { return sup_norm() <= 1.0 + 1e-12; }

    /// Taylor coefficients at 0, requiring the pole outside the closed disk.
    TruncatedSeries taylor(std::size_t order) const
    {
        if (!analytic_on_closed_disk()) {
            throw DomainError("LinearFractionalMap::taylor: pole inside the closed unit disk");
        }
        std::vector<cplx> out(order + 1);
        // 1/(c z + d) = (1/d) sum (-c/d)^k z^k
        const cplx ratio = -c_ / d_;
        cplx geo = 1.0 / d_;
        for (std::size_t k = 0; k <= order; ++k) {
            out[k] += b_ * geo;
            if (k + 1 <= order) {
                out[k + 1] += a_ * geo;
            }
            geo *= ratio;
        }
        return TruncatedSeries(std::move(out));
    }

    friend std::ostream& operator<<(std::ostream& os, const LinearFractionalMap& m)
    {
        return os << "(" << m.a_ << " z + " << m.b_ << ") / (" << m.c_ << " z + " << m.d_ << ")";
    }

private:
    cplx a_, b_, c_, d_;
};

/// outer o inner, via the product of coefficient matrices.
inline LinearFractionalMap compose(const LinearFractionalMap& outer, const LinearFractionalMap& inner)
{
    return {outer.a() * inner.a() + outer.b() * inner.c(), outer.a() * inner.b() + outer.b() * inner.d(),
            outer.c() * inner.a() + outer.d() * inner.c(), outer.c() * inner.b() + outer.d() * inner.d()};
}

/// sigma(z) = (conj(a) z - conj(c)) / (-conj(b) z + conj(d)), the companion map
/// entering the adjoint of a linear fractional composition.
inline LinearFractionalMap sigma_companion(const LinearFractionalMap& phi)
{
    return {std::conj(phi.a()), -std::conj(phi.c()), -std::conj(phi.b()), std::conj(phi.d())};
}

/// Maps agree up to projective scaling of their coefficient matrices.
inline bool projectively_equal(const LinearFractionalMap& f, const LinearFractionalMap& g, double tol = 1e-12)
{
    const cplx fm[4] = {f.a(), f.b(), f.c(), f.d()};
    const cplx gm[4] = {g.a(), g.b(), g.c(), g.d()};
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            // f_i g_j - f_j g_i vanishes for all pairs iff the vectors are parallel.
            scale = std::max(scale, std::abs(fm[i]) * std::abs(gm[j]));
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (std::abs(fm[i] * gm[j] - fm[j] * gm[i]) > tol * scale) {
                return false;
            }
        }
    }
    return true;
}

} // namespace cswcd
