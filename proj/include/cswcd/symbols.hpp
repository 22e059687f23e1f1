#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cswcd/bergman.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/lft.hpp"
#include "cswcd/series.hpp"

namespace cswcd {

/// psi(z) = scale * P(z) * (1 - q z)^(-s), principal branch. Every weight symbol
/// of the characterized families has this shape; keeping it lets psi be
/// evaluated exactly anywhere in the disk rather than through its truncation.
struct RationalWeight {
    cplx scale = 1.0;
    std::vector<cplx> poly{1.0};
    cplx q = 0.0;
    double s = 0.0;

    cplx operator()(cplx z) const
    {
        cplx p = 0.0;
        for (std::size_t k = poly.size(); k-- > 0;) {
            p = p * z + poly[k];
        }
        cplx out = scale * p;
        if (s != 0.0) {
            out *= std::pow(1.0 - q * z, -s);
        }
        return out;
    }

    TruncatedSeries series(std::size_t order) const
    {
        std::vector<cplx> pc(order + 1);
        for (std::size_t k = 0; k < poly.size() && k <= order; ++k) {
            pc[k] = poly[k];
        }
        TruncatedSeries out(std::move(pc));
        if (s != 0.0) {
            out = multiply(out, expand_rational_kernel(s, q, order));
        }
        return cswcd::scale(out, scale);
    }
};

enum class Family {
    JSymmetric,
    SelfAdjoint,
    General,
    NormalOrigin,
    Unitary,
    ConjugatedWC,
    ConjugatedRotation,
    CowenA,
    CowenB,
    Explicit,
};

inline std::string_view family_name(Family f)
{
    switch (f) {
    case Family::JSymmetric: return "J-symmetric";
    case Family::SelfAdjoint: return "self-adjoint";
    case Family::General: return "general";
    case Family::NormalOrigin: return "normal-origin";
    case Family::Unitary: return "unitary";
    case Family::ConjugatedWC: return "conjugated-wc";
    case Family::ConjugatedRotation: return "conjugated-rotation";
    case Family::CowenA: return "cowen-A";
    case Family::CowenB: return "cowen-B";
    case Family::Explicit: return "explicit";
    }
    return "unknown";
}

/// Parameters a family was built from. Unused fields stay at their defaults.
struct FamilyParams {
    cplx a = 0.0;
    cplx b = 0.0;
    cplx c = 0.0;
    cplx p = 0.0;
    cplx lambda_u = 1.0;
    cplx mu = 1.0;
    cplx lambda = 1.0;
};

/// Symbols (psi, phi) of D_{psi,phi,n} f = psi * (f^(n) o phi); n = 0 gives the
/// weighted composition operator C_{psi,phi}.
struct SymbolPair {
    TruncatedSeries psi;
    LinearFractionalMap phi;
    int n = 1;
    Family family = Family::Explicit;
    FamilyParams params{};
    std::optional<RationalWeight> closed_form{};
    /// Set when the sufficient boundedness inequality holds.
    bool bounded_hint = false;

    cplx psi_at(cplx z) const { return closed_form ? (*closed_form)(z) : evaluate(psi, z); }

    void validate() const
    {
        if (psi.is_zero()) {
            throw DomainError("SymbolPair: psi must not vanish identically");
        }
        if (n < 0) {
            throw DomainError("SymbolPair: order must be nonnegative");
        }
    }
};

/// 2 |c + conj(c)(b - c^2)| < 1 - |b - c^2|^2: sufficient for the J-symmetric
/// family operator with parameters (b, c) to be bounded.
inline bool bounded_sufficient(cplx b, cplx c)
{
    const cplx e = b - c * c;
    return 2.0 * std::abs(c + std::conj(c) * e) < 1.0 - std::norm(e);
}

namespace detail {

inline double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

inline void require_nonzero(cplx v, const char* what)
{
    if (v == cplx{}) {
        throw DomainError(std::string(what) + " must be nonzero");
    }
}

inline void require_unimodular(cplx v, const char* what)
{
    if (std::abs(std::abs(v) - 1.0) > 1e-12) {
        throw DomainError(std::string(what) + " must be unimodular");
    }
}

inline void require_order(int n)
{
    if (n < 1) {
        throw DomainError("differentiation order n must be >= 1");
    }
}

inline std::vector<cplx> monomial_coeffs(int n, cplx value = 1.0)
{
    std::vector<cplx> out(static_cast<std::size_t>(n) + 1);
    out.back() = value;
    return out;
}

/// psi = a z^n / (n! (1 - q z)^(n+alpha+2)), phi = c + b z / (1 - q z); q is c for
/// the J-symmetric shape and conj(c) for the self-adjoint shape.
inline SymbolPair kernel_shaped_pair(cplx a, cplx b, cplx c, cplx q, int n, double alpha, std::size_t order,
                                     Family family)
{
    require_nonzero(a, "a");
    require_nonzero(b, "b");
    require_order(n);
    require_weight(alpha);
    require_in_disk(c, "c");
    RationalWeight w{a / factorial(n), monomial_coeffs(n), q, n + alpha + 2.0};
    SymbolPair out{w.series(order), LinearFractionalMap(b - c * q, c, -q, 1.0), n, family};
    out.params.a = a;
    out.params.b = b;
    out.params.c = c;
    out.closed_form = std::move(w);
    return out;
}

} // namespace detail

/// psi(z) = a z^n / (n! (1 - c z)^(n+alpha+2)), phi(z) = c + b z / (1 - c z).
inline SymbolPair family_J_symmetric(cplx a, cplx b, cplx c, int n, double alpha, std::size_t order)
{
    auto out = detail::kernel_shaped_pair(a, b, c, c, n, alpha, order, Family::JSymmetric);
    out.bounded_hint = bounded_sufficient(b, c);
    return out;
}

/// psi(z) = a z^n / (n! (1 - conj(c) z)^(n+alpha+2)), phi(z) = c + b z / (1 - conj(c) z)
/// for arbitrary nonzero complex a, b. Normal exactly when b is real or c = 0.
inline SymbolPair family_general(cplx a, cplx b, cplx c, int n, double alpha, std::size_t order)
{
    return detail::kernel_shaped_pair(a, b, c, std::conj(c), n, alpha, order, Family::General);
}

/// The self-adjoint family: family_general with a and b real.
inline SymbolPair family_self_adjoint(cplx a, cplx b, cplx c, int n, double alpha, std::size_t order)
{
    if (a.imag() != 0.0 || b.imag() != 0.0) {
        throw DomainError("family_self_adjoint: a and b must be real");
    }
    auto out = detail::kernel_shaped_pair(a, b, c, std::conj(c), n, alpha, order, Family::SelfAdjoint);
    return out;
}

/// psi(z) = a z^n, phi(z) = b z.
inline SymbolPair family_normal_origin(cplx a, cplx b, int n, std::size_t order)
{
    detail::require_nonzero(a, "a");
    detail::require_nonzero(b, "b");
    detail::require_order(n);
    detail::require_in_disk(b, "b");
    RationalWeight w{a, detail::monomial_coeffs(n), 0.0, 0.0};
    SymbolPair out{w.series(order), LinearFractionalMap::dilation(b), n, Family::NormalOrigin};
    out.params.a = a;
    out.params.b = b;
    out.closed_form = std::move(w);
    out.bounded_hint = true;
    return out;
}

/// phi_p(z) = (conj(p)/p) (p - z) / (1 - conj(p) z), a disk automorphism with phi_p(p) = 0.
inline LinearFractionalMap automorphism_phi_p(cplx p)
{
    detail::require_nonzero(p, "p");
    detail::require_in_disk(p, "p");
    const cplx rot = std::conj(p) / p;
    return {-rot, rot * p, -std::conj(p), 1.0};
}

/// Symbols of the unitary J-symmetric weighted composition operator C_{psi_p, phi_p}:
/// psi_p(z) = lambda_u (1 - |p|^2)^((alpha+2)/2) / (1 - conj(p) z)^(alpha+2).
inline SymbolPair unitary_symbols(cplx p, cplx lambda_u, double alpha, std::size_t order)
{
    detail::require_unimodular(lambda_u, "lambda_u");
    detail::require_weight(alpha);
    auto phi = automorphism_phi_p(p);
    RationalWeight w{lambda_u * std::pow(1.0 - std::norm(p), (alpha + 2.0) / 2.0), {1.0}, std::conj(p), alpha + 2.0};
    SymbolPair out{w.series(order), phi, 0, Family::Unitary};
    out.params.p = p;
    out.params.lambda_u = lambda_u;
    out.closed_form = std::move(w);
    out.bounded_hint = true;
    return out;
}

/// phi = phi~ o phi_p, psi = psi_p * (psi~ o phi_p) for the J-symmetric pair
/// (psi~, phi~) with parameters (a, b, c).
///
/// With w = phi_p(z) = r (p - z)/(1 - conj(p) z), r = conj(p)/p:
///   1 - c w = (A - B z) / (1 - conj(p) z),  A = 1 - c conj(p),  B = conj(p) - c r,
/// so the (1 - conj(p) z)^(alpha+2) of psi_p cancels and
///   psi(z) = lambda_u (1-|p|^2)^((alpha+2)/2) a r^n / n! * (p - z)^n / (A - B z)^(n+alpha+2).
inline SymbolPair family_conjugated_wc(cplx p, cplx lambda_u, cplx a, cplx b, cplx c, int n, double alpha,
                                       std::size_t order)
{
    detail::require_unimodular(lambda_u, "lambda_u");
    const auto tilde = family_J_symmetric(a, b, c, n, alpha, order);
    const auto phi_p = automorphism_phi_p(p);
    const cplx r = std::conj(p) / p;
    const cplx A = 1.0 - c * std::conj(p);
    const cplx B = std::conj(p) - c * r;
    const double s = n + alpha + 2.0;

    // (p - z)^n
    std::vector<cplx> poly{1.0};
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += p * poly[i];
            next[i + 1] -= poly[i];
        }
        poly = std::move(next);
    }
    RationalWeight w{lambda_u * std::pow(1.0 - std::norm(p), (alpha + 2.0) / 2.0) * a * std::pow(r, n) /
                         detail::factorial(n) * std::pow(A, -s),
                     std::move(poly), B / A, s};
    SymbolPair out{w.series(order), compose(tilde.phi, phi_p), n, Family::ConjugatedWC};
    out.params = tilde.params;
    out.params.p = p;
    out.params.lambda_u = lambda_u;
    out.closed_form = std::move(w);
    out.bounded_hint = tilde.bounded_hint;
    return out;
}

/// psi(z) = mu psi~(lambda z), phi(z) = phi~(lambda z) for the J-symmetric pair (a, b, c).
inline SymbolPair family_conjugated_rotation(cplx mu, cplx lambda, cplx a, cplx b, cplx c, int n, double alpha,
                                             std::size_t order)
{
    detail::require_unimodular(mu, "mu");
    detail::require_unimodular(lambda, "lambda");
    const auto tilde = family_J_symmetric(a, b, c, n, alpha, order);
    RationalWeight w = *tilde.closed_form;
    w.scale *= mu;
    cplx rot = 1.0;
    for (auto& coeff : w.poly) {
        coeff *= rot;
        rot *= lambda;
    }
    w.q *= lambda;
    SymbolPair out{w.series(order), compose(tilde.phi, LinearFractionalMap::dilation(lambda)), n,
                   Family::ConjugatedRotation};
    out.params = tilde.params;
    out.params.mu = mu;
    out.params.lambda = lambda;
    out.closed_form = std::move(w);
    out.bounded_hint = tilde.bounded_hint;
    return out;
}

/// Rebuild a pair's weight at a different truncation order.
inline SymbolPair with_order(const SymbolPair& pair, std::size_t order)
{
    SymbolPair out = pair;
    out.psi = pair.closed_form ? pair.closed_form->series(order) : resized(pair.psi, order);
    return out;
}

} // namespace cswcd
