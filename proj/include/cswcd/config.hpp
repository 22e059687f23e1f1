#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

#include "cswcd/bergman.hpp"
#include "cswcd/conjugation.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/lft.hpp"
#include "cswcd/symbols.hpp"

namespace cswcd::run {

using json = nlohmann::json;

/// Parsed run configuration. `symbols` and `conjugation` stay as JSON so that
/// sweeps can substitute drawn parameters and re-validate.
struct RunConfig {
    SpaceParams space;
    json symbols;
    json conjugation;
    std::vector<std::string> checks;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 0;
    json sweep;
    json grid;
    /// The document as given, used for the config hash.
    json raw;
    /// Trailing rows/columns excluded from truncation-limited assertions.
    std::size_t guard = kDefaultGuard;
};

/// Names accepted in `checks`, in registration order.
inline const std::vector<std::string>& registered_checks()
{
    static const std::vector<std::string> names{
        "J-symmetry",        "J-symmetry-converse",    "C-symmetry",        "self-adjoint",
        "self-adjoint-converse", "normality",          "normality-predicate", "kernel-norm-test",
        "adjoint-lemma",     "adjoint-pair",           "necessary-conditions", "toeplitz-factorization",
        "boundedness-grid",  "conjugation-axioms",     "unitarity",         "reproducing",
        "containment-chain",
    };
    return names;
}

inline const std::vector<std::string>& registered_families()
{
    static const std::vector<std::string> names{
        "J-symmetric", "self-adjoint", "general", "normal-origin",
        "unitary",     "conjugated-wc", "conjugated-rotation", "explicit",
    };
    return names;
}

/// Complex value from a number, [re, im] or {"re": .., "im": ..}.
inline cplx parse_complex(const json& j, const std::string& path)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object() && j.contains("re") && j["re"].is_number()) {
        const double im = j.contains("im") && j["im"].is_number() ? j["im"].get<double>() : 0.0;
        return {j["re"].get<double>(), im};
    }
    throw ConfigError(path, "expected a number, [re, im] or {\"re\", \"im\"}");
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace detail {

inline const json& require_field(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(path + "." + key, "missing field");
    }
    return obj.at(key);
}

inline cplx complex_field(const json& obj, const std::string& key, const std::string& path)
{
    return parse_complex(require_field(obj, key, path), path + "." + key);
}

inline cplx complex_field_or(const json& obj, const std::string& key, const std::string& path, cplx fallback)
{
    return obj.contains(key) ? parse_complex(obj.at(key), path + "." + key) : fallback;
}

inline void require_disk(cplx v, const std::string& path)
{
    if (!(std::abs(v) < 1.0)) {
        throw ConfigError(path, "must satisfy |value| < 1");
    }
}

inline void require_nonzero(cplx v, const std::string& path)
{
    if (v == cplx{}) {
        throw ConfigError(path, "must be nonzero");
    }
}

inline void require_unimodular(cplx v, const std::string& path)
{
    if (std::abs(std::abs(v) - 1.0) > 1e-12) {
        throw ConfigError(path, "must be unimodular");
    }
}

} // namespace detail

inline SpaceParams parse_space(const json& j)
{
    if (!j.is_object()) {
        throw ConfigError("space", "expected an object with alpha, n, N");
    }
    SpaceParams s;
    if (j.contains("alpha")) {
        if (!j["alpha"].is_number()) {
            throw ConfigError("space.alpha", "expected a number");
        }
        s.alpha = j["alpha"].get<double>();
    }
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) {
            throw ConfigError("space.n", "expected an integer");
        }
        s.n = j["n"].get<int>();
    }
    if (j.contains("N")) {
        if (!j["N"].is_number_integer() || j["N"].get<std::int64_t>() < 0) {
            throw ConfigError("space.N", "expected a nonnegative integer");
        }
        s.N = j["N"].get<std::size_t>();
    }
    if (!(s.alpha > -1.0)) {
        throw ConfigError("space.alpha", "must be > -1");
    }
    if (s.n < 1) {
        throw ConfigError("space.n", "must be >= 1");
    }
    if (s.N < static_cast<std::size_t>(s.n) + 2) {
        throw ConfigError("space.N", "must be >= n + 2");
    }
    if (s.N > 2048) {
        throw ConfigError("space.N", "must be <= 2048");
    }
    return s;
}

/// Builds the symbol pair described by `symbols`, validating family preconditions
/// before any computation.
inline SymbolPair build_pair(const json& symbols, const SpaceParams& space)
{
    const std::string path = "symbols";
    const json& fam = detail::require_field(symbols, "family", path);
    if (!fam.is_string()) {
        throw ConfigError(path + ".family", "expected a string");
    }
    const std::string family = fam.get<std::string>();
    const int n = space.n;
    const double alpha = space.alpha;
    const std::size_t order = space.N;

    auto abc = [&](bool need_c) {
        const cplx a = detail::complex_field(symbols, "a", path);
        const cplx b = detail::complex_field(symbols, "b", path);
        const cplx c = need_c ? detail::complex_field(symbols, "c", path) : cplx{};
        detail::require_nonzero(a, path + ".a");
        detail::require_nonzero(b, path + ".b");
        if (need_c) {
            detail::require_disk(c, path + ".c");
        }
        return std::array<cplx, 3>{a, b, c};
    };

    try {
        if (family == "J-symmetric") {
            const auto [a, b, c] = abc(true);
            return family_J_symmetric(a, b, c, n, alpha, order);
        }
        if (family == "self-adjoint") {
            const auto [a, b, c] = abc(true);
            if (a.imag() != 0.0) {
                throw ConfigError(path + ".a", "must be real for the self-adjoint family");
            }
            if (b.imag() != 0.0) {
                throw ConfigError(path + ".b", "must be real for the self-adjoint family");
            }
            return family_self_adjoint(a, b, c, n, alpha, order);
        }
        if (family == "general") {
            const auto [a, b, c] = abc(true);
            return family_general(a, b, c, n, alpha, order);
        }
        if (family == "normal-origin") {
            const auto [a, b, c] = abc(false);
            detail::require_disk(b, path + ".b");
            return family_normal_origin(a, b, n, order);
        }
        if (family == "unitary") {
            const cplx p = detail::complex_field(symbols, "p", path);
            const cplx lu = detail::complex_field_or(symbols, "lambda_u", path, 1.0);
            detail::require_nonzero(p, path + ".p");
            detail::require_disk(p, path + ".p");
            detail::require_unimodular(lu, path + ".lambda_u");
            return unitary_symbols(p, lu, alpha, order);
        }
        if (family == "conjugated-wc") {
            const auto [a, b, c] = abc(true);
            const cplx p = detail::complex_field(symbols, "p", path);
            const cplx lu = detail::complex_field_or(symbols, "lambda_u", path, 1.0);
            detail::require_nonzero(p, path + ".p");
            detail::require_disk(p, path + ".p");
            detail::require_unimodular(lu, path + ".lambda_u");
            return family_conjugated_wc(p, lu, a, b, c, n, alpha, order);
        }
        if (family == "conjugated-rotation") {
            const auto [a, b, c] = abc(true);
            const cplx mu = detail::complex_field_or(symbols, "mu", path, 1.0);
            const cplx lambda = detail::complex_field_or(symbols, "lambda", path, 1.0);
            detail::require_unimodular(mu, path + ".mu");
            detail::require_unimodular(lambda, path + ".lambda");
            return family_conjugated_rotation(mu, lambda, a, b, c, n, alpha, order);
        }
        if (family == "explicit") {
            const json& psi_j = detail::require_field(symbols, "psi", path);
            if (!psi_j.is_array() || psi_j.empty()) {
                throw ConfigError(path + ".psi", "expected a nonempty coefficient list");
            }
            if (psi_j.size() > order + 1) {
                throw ConfigError(path + ".psi", "more coefficients than the truncation holds");
            }
            std::vector<cplx> coeffs(order + 1);
            for (std::size_t k = 0; k < psi_j.size(); ++k) {
                coeffs[k] = parse_complex(psi_j[k], path + ".psi[" + std::to_string(k) + "]");
            }
            const json& phi_j = detail::require_field(symbols, "phi", path);
            const std::string pp = path + ".phi";
            const LinearFractionalMap phi(detail::complex_field(phi_j, "a", pp), detail::complex_field(phi_j, "b", pp),
                                          detail::complex_field(phi_j, "c", pp), detail::complex_field(phi_j, "d", pp));
            SymbolPair pair{TruncatedSeries(std::move(coeffs)), phi, n, Family::Explicit};
            if (symbols.contains("n")) {
                if (!symbols["n"].is_number_integer() || symbols["n"].get<int>() < 0) {
                    throw ConfigError(path + ".n", "expected a nonnegative integer");
                }
                pair.n = symbols["n"].get<int>();
            }
            if (pair.psi.is_zero()) {
                throw ConfigError(path + ".psi", "psi must not vanish identically");
            }
            return pair;
        }
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path + ".family", "unknown family '" + family + "'");
}

/// Builds the conjugation. Missing wc-J / rotation-J parameters are taken from the
/// symbols (p, lambda_u, mu, lambda); "lambda": "from-c" selects exp(-2i Arg c).
inline AntilinearConjugation build_conjugation(const json& conj, const json& symbols, const SpaceParams& space)
{
    const std::string path = "conjugation";
    if (conj.is_null()) {
        return make_J(space);
    }
    const json& kind_j = detail::require_field(conj, "kind", path);
    if (!kind_j.is_string()) {
        throw ConfigError(path + ".kind", "expected a string");
    }
    const std::string kind = kind_j.get<std::string>();
    auto param = [&](const std::string& key, cplx fallback) {
        if (conj.contains(key)) {
            return parse_complex(conj.at(key), path + "." + key);
        }
        if (symbols.is_object() && symbols.contains(key)) {
            return parse_complex(symbols.at(key), "symbols." + key);
        }
        return fallback;
    };
    try {
        if (kind == "plain-J") {
            return make_J(space);
        }
        if (kind == "rotation-J") {
            const cplx mu = param("mu", 1.0);
            cplx lambda = 1.0;
            if (conj.contains("lambda") && conj["lambda"].is_string()) {
                if (conj["lambda"].get<std::string>() != "from-c") {
                    throw ConfigError(path + ".lambda", "the only string value accepted is \"from-c\"");
                }
                const cplx c = detail::complex_field(symbols, "c", "symbols");
                lambda = std::polar(1.0, -2.0 * std::arg(c));
            } else {
                lambda = param("lambda", 1.0);
            }
            detail::require_unimodular(mu, path + ".mu");
            detail::require_unimodular(lambda, path + ".lambda");
            return make_rotation_J(mu, lambda, space);
        }
        if (kind == "wc-J") {
            const cplx p = param("p", 0.0);
            const cplx lu = param("lambda_u", 1.0);
            detail::require_nonzero(p, path + ".p");
            detail::require_disk(p, path + ".p");
            detail::require_unimodular(lu, path + ".lambda_u");
            return make_wc_J(p, lu, space);
        }
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path + ".kind", "unknown conjugation kind '" + kind + "'");
}

/// Validates the whole document; any failure is a ConfigError naming the field.
inline RunConfig parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("$", "config must be a JSON object");
    }
    RunConfig cfg;
    cfg.raw = doc;
    cfg.space = parse_space(detail::require_field(doc, "space", "$"));
    cfg.symbols = detail::require_field(doc, "symbols", "$");
    cfg.conjugation = doc.contains("conjugation") ? doc["conjugation"] : json();
    if (doc.contains("checks")) {
        const json& checks = doc["checks"];
        if (!checks.is_array()) {
            throw ConfigError("checks", "expected an array of check names");
        }
        const auto& known = registered_checks();
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const std::string p = "checks[" + std::to_string(i) + "]";
            if (!checks[i].is_string()) {
                throw ConfigError(p, "expected a string");
            }
            const auto name = checks[i].get<std::string>();
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw ConfigError(p, "unknown check '" + name + "'");
            }
            cfg.checks.push_back(name);
        }
    }
    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        if (!tol.is_object()) {
            throw ConfigError("tolerances", "expected an object");
        }
        const auto& known = registered_checks();
        for (const auto& [key, value] : tol.items()) {
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                throw ConfigError("tolerances." + key, "unknown check");
            }
            if (!value.is_number() || !(value.get<double>() > 0.0)) {
                throw ConfigError("tolerances." + key, "expected a positive number");
            }
            cfg.tolerances[key] = value.get<double>();
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() || (!doc["seed"].is_number_unsigned() && doc["seed"].get<std::int64_t>() < 0)) {
            throw ConfigError("seed", "expected a nonnegative integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    cfg.sweep = doc.contains("sweep") ? doc["sweep"] : json::object();
    cfg.grid = doc.contains("grid") ? doc["grid"] : json::object();

    // Validate family parameters and the conjugation up front.
    (void)build_pair(cfg.symbols, cfg.space);
    if (!cfg.conjugation.is_null()) {
        const auto& kind = detail::require_field(cfg.conjugation, "kind", "conjugation");
        if (!kind.is_string()) {
            throw ConfigError("conjugation.kind", "expected a string");
        }
        const auto k = kind.get<std::string>();
        if (k != "plain-J" && k != "rotation-J" && k != "wc-J") {
            throw ConfigError("conjugation.kind", "unknown conjugation kind '" + k + "'");
        }
    }
    return cfg;
}

} // namespace cswcd::run
