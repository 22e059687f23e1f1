#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cswcd/bergman.hpp"
#include "cswcd/config.hpp"
#include "cswcd/conjugation.hpp"
#include "cswcd/diagnostics.hpp"
#include "cswcd/errors.hpp"
#include "cswcd/operator_matrix.hpp"
#include "cswcd/random.hpp"
#include "cswcd/symbols.hpp"

namespace cswcd::run {

inline constexpr const char* kArtifact = "cswcd";
inline constexpr const char* kVersion = "1.0.0";

/// Rejection budget for sweeps; exceeding it means the admissible region looks empty.
inline constexpr std::size_t kMaxRejections = 100'000;

enum class Status { Pass, Fail, Unverified };

inline std::string_view status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Unverified: return "unverified";
    }
    return "unknown";
}

struct CheckReport {
    std::string check;
    Status status = Status::Unverified;
    /// NaN when no defect was computed (gate failures).
    double defect = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0.0;
    std::size_t guard = 0;
    std::string provenance;
    std::string detail;
    /// Measured defect fell between the pass and fail thresholds of a two-sided check.
    bool ambiguous = false;
    double wall_ms = 0.0;
};

class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Per-check data: everything a check needs, with the operator matrix built lazily.
class Context {
public:
    Context(const RunConfig& cfg, std::uint64_t seed)
        : cfg_(cfg), space_(cfg.space), pair_(build_pair(cfg.symbols, cfg.space)), seed_(seed)
    {
    }

    const RunConfig& cfg() const { return cfg_; }
    const SpaceParams& space() const { return space_; }
    const SymbolPair& pair() const { return pair_; }
    std::size_t guard() const { return cfg_.guard; }

    const OperatorMatrix& matrix()
    {
        if (!matrix_) {
            matrix_ = build_wcd_matrix(pair_, space_);
        }
        return *matrix_;
    }

    const AntilinearConjugation& conjugation()
    {
        if (!conj_) {
            conj_ = build_conjugation(cfg_.conjugation, cfg_.symbols, space_);
        }
        return *conj_;
    }

    /// Independent stream per check name so reordering checks does not change results.
    SplitMix64 rng(std::string_view check) const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const char ch : check) {
            h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ULL;
        }
        return SplitMix64(seed_ ^ h);
    }

private:
    const RunConfig& cfg_;
    SpaceParams space_;
    SymbolPair pair_;
    std::uint64_t seed_;
    std::optional<OperatorMatrix> matrix_;
    std::optional<AntilinearConjugation> conj_;
};

struct Outcome {
    Status status;
    double defect;
    std::string detail;
    bool ambiguous = false;
};

inline Outcome at_most(double defect, double tol, std::string detail = {})
{
    return {defect <= tol ? Status::Pass : Status::Fail, defect, std::move(detail)};
}

inline Outcome at_least(double defect, double threshold, std::string detail = {})
{
    return {defect > threshold ? Status::Pass : Status::Fail, defect, std::move(detail)};
}

inline bool is_family(const SymbolPair& p, std::initializer_list<Family> fs)
{
    return std::find(fs.begin(), fs.end(), p.family) != fs.end();
}

inline void require_family(const SymbolPair& p, std::initializer_list<Family> fs, const std::string& check)
{
    if (!is_family(p, fs)) {
        throw ConfigError("checks", "check '" + check + "' does not apply to family '" +
                                        std::string(family_name(p.family)) + "'");
    }
}

/// Boolean from a defect with separate pass/fail thresholds; nullopt in the band between.
inline std::optional<bool> two_sided(double defect, double pass_tol, double fail_tol)
{
    if (defect <= pass_tol) {
        return true;
    }
    if (defect > fail_tol) {
        return false;
    }
    return std::nullopt;
}

inline bool predicate_normal(const SymbolPair& p)
{
    if (p.family == Family::NormalOrigin) {
        return true;
    }
    const cplx b = p.params.b;
    const cplx c = p.params.c;
    return std::abs(b.imag()) <= 1e-14 * std::abs(b) || c == cplx{};
}

inline TruncatedSeries random_coordinates_poly(SplitMix64& rng, std::size_t degree, std::size_t order, double alpha)
{
    Vector x = Vector::Zero(static_cast<Eigen::Index>(order + 1));
    for (std::size_t j = 0; j <= degree; ++j) {
        x(static_cast<Eigen::Index>(j)) = rng.in_disk(1.0);
    }
    return from_coordinates(x, alpha);
}

inline Outcome check_j_symmetry(Context& ctx, double tol)
{
    const auto r = is_C_symmetric(ctx.matrix(), make_J(ctx.space()), tol, ctx.guard());
    return at_most(r.defect, tol);
}

inline Outcome check_j_symmetry_converse(Context& ctx, double threshold)
{
    const SymbolPair& p = ctx.pair();
    require_family(p, {Family::JSymmetric}, "J-symmetry-converse");
    const cplx shifted = p.params.c + 0.1;
    if (!(std::abs(shifted) < 1.0)) {
        throw ConfigError("symbols.c", "J-symmetry-converse needs |c + 0.1| < 1");
    }
    const SpaceParams& s = ctx.space();
    SymbolPair perturbed = family_J_symmetric(p.params.a, p.params.b, shifted, p.n, s.alpha, s.N);
    perturbed.phi = p.phi;
    perturbed.bounded_hint = p.bounded_hint;
    const auto r = is_C_symmetric(build_wcd_matrix(perturbed, s), make_J(s), threshold, ctx.guard());
    return at_least(r.defect, threshold, "psi built with c + 0.1, phi unchanged");
}

inline Outcome check_c_symmetry(Context& ctx, double tol)
{
    const AntilinearConjugation& c = ctx.conjugation();
    const auto r = c.exact ? is_C_symmetric(ctx.matrix(), c, tol, ctx.guard())
                           : check_C_symmetry(ctx.pair(), c, tol, ctx.guard());
    std::ostringstream os;
    os << conjugation_name(c.kind) << ", block " << r.block << ", working dim " << c.dim();
    return at_most(r.defect, tol, os.str());
}

inline Outcome check_self_adjoint(Context& ctx, double tol)
{
    return at_most(is_hermitian(ctx.matrix(), tol).defect, tol);
}

inline Outcome check_self_adjoint_converse(Context& ctx, double threshold)
{
    const SymbolPair& p = ctx.pair();
    require_family(p, {Family::General, Family::SelfAdjoint}, "self-adjoint-converse");
    const SpaceParams& s = ctx.space();
    const cplx a = p.params.a * cplx(1.0, 0.2);
    const SymbolPair perturbed = family_general(a, p.params.b, p.params.c, p.n, s.alpha, s.N);
    return at_least(is_hermitian(build_wcd_matrix(perturbed, s), threshold).defect, threshold,
                    "a multiplied by 1 + 0.2i");
}

inline Outcome check_normality(Context& ctx, double tol)
{
    return at_most(is_normal(ctx.matrix(), tol, ctx.guard()).defect, tol);
}

inline Outcome check_normality_predicate(Context& ctx, double tol)
{
    const SymbolPair& p = ctx.pair();
    require_family(p, {Family::General, Family::SelfAdjoint, Family::NormalOrigin}, "normality-predicate");
    const double defect = is_normal(ctx.matrix(), tol, ctx.guard()).defect;
    const bool predicate = predicate_normal(p);
    const auto normal = two_sided(defect, tol, 1e-3);
    if (!normal) {
        return {Status::Fail, defect, "defect in the ambiguous band", true};
    }
    std::string detail = std::string("predicate ") + (predicate ? "normal" : "not normal") + ", matrix " +
                         (*normal ? "normal" : "not normal");
    return {*normal == predicate ? Status::Pass : Status::Fail, defect, std::move(detail)};
}

inline Outcome check_kernel_norm_test(Context& ctx, double tol)
{
    const SymbolPair& p = ctx.pair();
    require_family(p, {Family::General, Family::SelfAdjoint, Family::NormalOrigin}, "kernel-norm-test");
    double defect = 0.0;
    std::ostringstream os;
    os << std::setprecision(6);
    for (const cplx w : {cplx(0.5, 0.0), cplx(0.0, 0.5)}) {
        const KernelNormTest t = norm_defect_kernel_test(p, w, ctx.space());
        os << "w=" << w << ": " << t.defect << "; ";
        defect = std::max(defect, t.defect);
    }
    const bool predicate = predicate_normal(p);
    const auto equal = two_sided(defect, tol, 1e-3);
    if (!equal) {
        return {Status::Fail, defect, "defect in the ambiguous band", true};
    }
    os << (predicate ? "expect equal norms" : "expect a norm gap");
    return {*equal == predicate ? Status::Pass : Status::Fail, defect, os.str()};
}

inline Outcome check_adjoint_lemma(Context& ctx, double tol)
{
    double defect = 0.0;
    for (const cplx w : {cplx(0.4, 0.0), cplx(0.0, 0.3), cplx(-0.25, 0.0)}) {
        defect = std::max(defect, adjoint_on_kernel(ctx.pair(), w, ctx.space()).defect);
    }
    return at_most(defect, tol, "w in {0.4, 0.3i, -0.25}");
}

/// max |conj(A)^T - B| / max |B| for the pair built from the configured phi.
inline Outcome check_adjoint_pair(Context& ctx, double tol)
{
    const AdjointPair ap = cowen_adjoint_pair(ctx.pair().phi, ctx.space().n, ctx.space());
    const Matrix a = build_wcd_matrix(ap.pairA, ctx.space()).entries;
    const Matrix b = build_wcd_matrix(ap.pairB, ctx.space()).entries;
    const double scale = b.cwiseAbs().maxCoeff();
    const double defect = scale == 0.0 ? 0.0 : (a.adjoint() - b).cwiseAbs().maxCoeff() / scale;
    return at_most(defect, tol, "phi from symbols, n from space");
}

inline Outcome check_necessary_conditions(Context& ctx, double)
{
    const NecessaryConditionsReport r = necessary_conditions_check(ctx.pair());
    std::string detail;
    double failed = 0.0;
    for (const auto& item : r.items) {
        if (!item.passed) {
            failed += 1.0;
            detail += item.name + ": " + item.detail + "; ";
        }
    }
    if (detail.empty()) {
        detail = "all four conditions hold";
    }
    return {r.all_passed() ? Status::Pass : Status::Fail, failed, std::move(detail)};
}

/// M = T_psi * D_{1,phi,n} on the leading (dim - guard) block.
inline Outcome check_toeplitz_factorization(Context& ctx, double tol)
{
    const SymbolPair& p = ctx.pair();
    const SpaceParams& s = ctx.space();
    SymbolPair unweighted{TruncatedSeries::constant(1.0, s.N), p.phi, p.n, Family::Explicit};
    unweighted.bounded_hint = p.bounded_hint;
    const Matrix product =
        build_toeplitz_analytic(p.psi, s).entries * build_wcd_matrix(unweighted, s).entries;
    const std::size_t k = s.dim() > ctx.guard() ? s.dim() - ctx.guard() : 0;
    const auto lead = leading_block(ctx.matrix().entries, k);
    const double scale = lead.norm();
    const double defect = scale == 0.0 ? 0.0 : (leading_block(product, k) - lead).norm() / scale;
    return at_most(defect, tol);
}

inline GridReport configured_grid(const RunConfig& cfg, const LinearFractionalMap& phi, bool nevanlinna)
{
    std::vector<double> radii = default_radii();
    std::size_t angles = kDefaultAngles;
    if (cfg.grid.contains("radii")) {
        const json& r = cfg.grid["radii"];
        if (!r.is_array() || r.empty()) {
            throw ConfigError("grid.radii", "expected a nonempty array");
        }
        radii.clear();
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!r[i].is_number() || !(r[i].get<double>() > 0.0 && r[i].get<double>() < 1.0)) {
                throw ConfigError("grid.radii[" + std::to_string(i) + "]", "expected a number in (0, 1)");
            }
            radii.push_back(r[i].get<double>());
        }
    }
    if (cfg.grid.contains("angles")) {
        if (!cfg.grid["angles"].is_number_integer() || cfg.grid["angles"].get<std::int64_t>() <= 0) {
            throw ConfigError("grid.angles", "expected a positive integer");
        }
        angles = cfg.grid["angles"].get<std::size_t>();
    }
    return nevanlinna ? nevanlinna_bound_grid(phi, cfg.space.alpha, cfg.space.n, radii, angles)
                      : boundedness_ratio_grid(phi, cfg.space.alpha, cfg.space.n, radii, angles);
}

/// Fails only on a diverging trend; the supremum is reported as the defect.
inline Outcome check_boundedness_grid(Context& ctx, double)
{
    const GridReport g = configured_grid(ctx.cfg(), ctx.pair().phi, false);
    std::string detail = std::string("trend ") + std::string(trend_name(g.trend)) +
                         (g.compact_consistent ? ", compact-consistent" : "") + ", skipped " +
                         std::to_string(g.skipped.size());
    return {g.trend == Trend::Diverging ? Status::Fail : Status::Pass, g.supremum, std::move(detail)};
}

inline Outcome check_conjugation_axioms(Context& ctx, double tol)
{
    const AntilinearConjugation& c = ctx.conjugation();
    const SpaceParams& s = ctx.space();
    const std::size_t degree = s.dim() > ctx.guard() ? s.dim() - 1 - ctx.guard() : 0;
    SplitMix64 rng = ctx.rng("conjugation-axioms");
    double defect = 0.0;
    for (int k = 0; k < 5; ++k) {
        const TruncatedSeries f = random_coordinates_poly(rng, degree, s.N, s.alpha);
        defect = std::max({defect, involution_defect(c, f), isometry_defect(c, f)});
    }
    return at_most(defect, tol, std::string(conjugation_name(c.kind)) + ", 5 random polynomials");
}

/// Leading-block defect of U*U = I and UU* = I for the automorphism-induced unitary.
inline Outcome check_unitarity(Context& ctx, double tol)
{
    const SymbolPair& p = ctx.pair();
    const SpaceParams& s = ctx.space();
    Matrix u;
    if (p.family == Family::Unitary) {
        const std::size_t order = extended_dimension(std::abs(p.params.p), s) - 1;
        u = build_weighted_composition(with_order(p, order), s.with_order(order)).entries;
    } else {
        const AntilinearConjugation& c = ctx.conjugation();
        if (c.kind == ConjugationKind::PlainJ) {
            throw ConfigError("checks", "unitarity needs the unitary family or a rotation-J / wc-J conjugation");
        }
        u = c.unitary.entries;
    }
    const auto k = static_cast<Eigen::Index>(s.dim() > ctx.guard() ? s.dim() - ctx.guard() : 0);
    const Matrix id = Matrix::Identity(k, k);
    const double left = (u.leftCols(k).adjoint() * u.leftCols(k) - id).cwiseAbs().maxCoeff();
    const double right = (u.topRows(k) * u.topRows(k).adjoint() - id).cwiseAbs().maxCoeff();
    return at_most(std::max(left, right), tol, "working dim " + std::to_string(u.rows()));
}

inline Outcome check_reproducing(Context& ctx, double tol)
{
    const SpaceParams& s = ctx.space();
    SplitMix64 rng = ctx.rng("reproducing");
    double defect = 0.0;
    for (int k = 0; k < 10; ++k) {
        const auto m = static_cast<std::size_t>(rng.next() % 4);
        const TruncatedSeries f = random_coordinates_poly(rng, s.N - m, s.N, s.alpha);
        defect = std::max(defect, reproducing_check(f, rng.in_disk(0.7), m, s.alpha));
    }
    return at_most(defect, tol, "10 random polynomials, m <= 3, |w| <= 0.7");
}

/// Hermitian implies normal implies J- or rotation-J-symmetric (lambda from Arg c).
inline Outcome check_containment_chain(Context& ctx, double tol)
{
    const SymbolPair& p = ctx.pair();
    require_family(p, {Family::General, Family::SelfAdjoint, Family::NormalOrigin}, "containment-chain");
    const OperatorMatrix& m = ctx.matrix();
    const SpaceParams& s = ctx.space();
    const bool hermitian = is_hermitian(m, 1e-10).passed;
    const bool normal = is_normal(m, tol, ctx.guard()).passed;
    double sym = is_C_symmetric(m, make_J(s), tol, ctx.guard()).defect;
    if (p.params.c != cplx{}) {
        const cplx lambda = std::polar(1.0, -2.0 * std::arg(p.params.c));
        sym = std::min(sym, is_C_symmetric(m, make_rotation_J(1.0, lambda, s), tol, ctx.guard()).defect);
    }
    const bool symmetric = sym <= tol;
    const bool holds = (!hermitian || normal) && (!normal || symmetric);
    std::string detail = std::string("hermitian ") + (hermitian ? "yes" : "no") + ", normal " +
                         (normal ? "yes" : "no") + ", symmetric " + (symmetric ? "yes" : "no");
    return {holds ? Status::Pass : Status::Fail, sym, std::move(detail)};
}

struct CheckSpec {
    std::string name;
    std::string provenance;
    /// Default tolerance; nullopt when it depends on the conjugation's exactness.
    std::optional<double> tolerance;
    std::function<Outcome(Context&, double)> fn;
};

inline const std::vector<CheckSpec>& check_table()
{
    static const std::vector<CheckSpec> table{
        {"J-symmetry", "J-symmetric-characterization", 1e-10, check_j_symmetry},
        {"J-symmetry-converse", "J-symmetric-characterization(converse)", 1e-3, check_j_symmetry_converse},
        {"C-symmetry", "conjugated-families", std::nullopt, check_c_symmetry},
        {"self-adjoint", "self-adjoint", 1e-10, check_self_adjoint},
        {"self-adjoint-converse", "self-adjoint(converse)", 1e-3, check_self_adjoint_converse},
        {"normality", "normal", 1e-8, check_normality},
        {"normality-predicate", "normal(b real or c = 0)", 1e-8, check_normality_predicate},
        {"kernel-norm-test", "normal(kernel norms)", 1e-8, check_kernel_norm_test},
        {"adjoint-lemma", "adjoint-on-kernels", 1e-8, check_adjoint_lemma},
        {"adjoint-pair", "adjoint-pair", 1e-9, check_adjoint_pair},
        {"necessary-conditions", "necessary-conditions", 0.0, check_necessary_conditions},
        {"toeplitz-factorization", "T_psi D_{1,phi,n}", 1e-9, check_toeplitz_factorization},
        {"boundedness-grid", "boundedness-ratio", 0.0, check_boundedness_grid},
        {"conjugation-axioms", "conjugation", std::nullopt, check_conjugation_axioms},
        {"unitarity", "automorphism-unitary", 1e-8, check_unitarity},
        {"reproducing", "reproducing-kernel", 1e-10, check_reproducing},
        {"containment-chain", "hermitian-normal-symmetric", 1e-8, check_containment_chain},
    };
    return table;
}

inline const CheckSpec& find_check(const std::string& name)
{
    for (const auto& spec : check_table()) {
        if (spec.name == name) {
            return spec;
        }
    }
    throw ConfigError("checks", "unknown check '" + name + "'");
}

inline double default_tolerance(const CheckSpec& spec, Context& ctx)
{
    if (spec.tolerance) {
        return *spec.tolerance;
    }
    const bool exact = ctx.conjugation().exact;
    if (spec.name == "C-symmetry") {
        return exact ? 1e-10 : 1e-8;
    }
    return exact ? 1e-12 : 1e-9;
}

} // namespace detail

/// Runs the configured checks in declared order. Boundedness gate failures give
/// unverified reports; configuration problems propagate as ConfigError.
inline std::vector<CheckReport> run(const RunConfig& cfg, std::optional<std::uint64_t> seed_override = {})
{
    detail::Context ctx(cfg, seed_override.value_or(cfg.seed));
    std::vector<CheckReport> reports;
    reports.reserve(cfg.checks.size());
    for (const std::string& name : cfg.checks) {
        const detail::CheckSpec& spec = detail::find_check(name);
        CheckReport r;
        r.check = name;
        r.guard = cfg.guard;
        r.provenance = spec.provenance;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto it = cfg.tolerances.find(name);
            r.tolerance = it != cfg.tolerances.end() ? it->second : detail::default_tolerance(spec, ctx);
            detail::Outcome o = spec.fn(ctx, r.tolerance);
            r.status = o.status;
            r.defect = o.defect;
            r.detail = std::move(o.detail);
            r.ambiguous = o.ambiguous;
        } catch (const GateError& e) {
            r.status = Status::Unverified;
            r.detail = e.what();
        }
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        reports.push_back(std::move(r));
    }
    return reports;
}

/// 0 all pass, 1 any failure, 3 no failure but something unverified.
inline int exit_code(const std::vector<CheckReport>& reports)
{
    bool unverified = false;
    for (const auto& r : reports) {
        if (r.status == Status::Fail) {
            return 1;
        }
        unverified = unverified || r.status == Status::Unverified;
    }
    return unverified ? 3 : 0;
}

/// FNV-1a over the compact dump of the config (object keys sorted).
inline std::string config_hash(const json& raw)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char ch : raw.dump()) {
        h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline json header_json(const RunConfig& cfg, const std::string& command)
{
    return {{"artifact", kArtifact},
            {"version", kVersion},
            {"command", command},
            {"config_hash", config_hash(cfg.raw)},
            {"guard", cfg.guard},
            {"grid_note", "radii up to 0.999; trends are evidence, not certificates"}};
}

inline json report_json(const CheckReport& r)
{
    json j{{"check", r.check},
           {"status", status_name(r.status)},
           {"tolerance", r.tolerance},
           {"guard", r.guard},
           {"provenance", r.provenance},
           {"detail", r.detail}};
    j["defect"] = std::isfinite(r.defect) ? json(r.defect) : json(nullptr);
    if (r.ambiguous) {
        j["ambiguous"] = true;
    }
    return j;
}

/// Deterministic report document; wall times go to timing_json instead.
inline json reports_json(const RunConfig& cfg, const std::vector<CheckReport>& reports)
{
    json arr = json::array();
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
    }
    return {{"header", header_json(cfg, "check")}, {"reports", std::move(arr)}, {"exit_code", exit_code(reports)}};
}

inline json timing_json(const std::vector<CheckReport>& reports)
{
    json arr = json::array();
    for (const auto& r : reports) {
        arr.push_back({{"check", r.check}, {"wall_ms", r.wall_ms}});
    }
    return arr;
}

namespace detail {

/// Draws one complex parameter from its range descriptor. A bare value is fixed.
inline json draw_parameter(const json& range, const std::string& path, SplitMix64& rng)
{
    if (!range.is_object() || range.contains("re")) {
        return complex_to_json(parse_complex(range, path));
    }
    auto interval = [&](const char* key, double lo, double hi) {
        if (!range.contains(key)) {
            return std::pair{lo, hi};
        }
        const json& v = range[key];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number() ||
            v[0].get<double>() > v[1].get<double>()) {
            throw ConfigError(path + "." + key, "expected [lo, hi] with lo <= hi");
        }
        return std::pair{v[0].get<double>(), v[1].get<double>()};
    };
    auto probability = [&](const char* key) {
        if (!range.contains(key)) {
            return 0.0;
        }
        const json& v = range[key];
        if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0) {
            throw ConfigError(path + "." + key, "expected a probability in [0, 1]");
        }
        return v.get<double>();
    };
    const auto [abs_lo, abs_hi] = interval("abs", 0.0, 1.0);
    const auto [arg_lo, arg_hi] = interval("arg", 0.0, 2.0 * std::numbers::pi);
    if (range.contains("real") && !range["real"].is_boolean()) {
        throw ConfigError(path + ".real", "expected a boolean");
    }
    const bool always_real = range.value("real", false);
    const double p_real = probability("real_probability");
    const double p_zero = probability("zero_probability");
    // Fixed number of generator calls per parameter keeps draws aligned across configs.
    const double u_zero = rng.uniform();
    const double u_real = rng.uniform();
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    cplx v = rng.polar(abs_lo, abs_hi, arg_lo, arg_hi);
    if (u_zero < p_zero) {
        v = 0.0;
    } else if (always_real || u_real < p_real) {
        v = sign * std::abs(v);
    }
    return complex_to_json(v);
}

/// Boundedness region used for rejection: the sufficient inequality for the
/// kernel-shaped families, sup |phi| < 1 otherwise.
inline bool admissible(const SymbolPair& p)
{
    if (is_family(p, {Family::JSymmetric, Family::ConjugatedWC, Family::ConjugatedRotation})) {
        return bounded_sufficient(p.params.b, p.params.c);
    }
    if (p.family == Family::Unitary) {
        return true;
    }
    return p.phi.sup_norm() < 1.0;
}

struct CheckTally {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t unverified = 0;
    double max_defect = -INFINITY;
    double min_defect = INFINITY;
};

} // namespace detail

/// Seeded rejection-sampling sweep. Draws whose symbols leave the admissible region
/// are rejected; draws with a gate failure or an ambiguous two-sided check are
/// redrawn. Both counts are reported.
inline json sweep(const RunConfig& base, std::size_t draws, std::uint64_t seed)
{
    const json ranges = base.sweep.contains("ranges") ? base.sweep["ranges"] : json::object();
    if (!ranges.is_object()) {
        throw ConfigError("sweep.ranges", "expected an object");
    }
    SplitMix64 rng(seed);
    std::vector<detail::CheckTally> tallies(base.checks.size());
    json failures = json::array();
    std::size_t rejections = 0;
    std::size_t gate_redraws = 0;
    std::size_t ambiguous_redraws = 0;
    std::size_t mismatches = 0;

    for (std::size_t draw = 0; draw < draws; ++draw) {
        for (;;) {
            if (rejections + gate_redraws + ambiguous_redraws >= kMaxRejections) {
                throw SweepError("sweep: admissible region looks empty after " + std::to_string(kMaxRejections) +
                                 " rejections");
            }
            RunConfig cfg = base;
            for (const auto& [key, range] : ranges.items()) {
                cfg.symbols[key] = detail::draw_parameter(range, "sweep.ranges." + key, rng);
            }
            const std::uint64_t check_seed = rng.next();
            std::optional<SymbolPair> pair;
            try {
                pair = build_pair(cfg.symbols, cfg.space);
            } catch (const ConfigError&) {
                ++rejections;
                continue;
            }
            if (!detail::admissible(*pair)) {
                ++rejections;
                continue;
            }
            std::vector<CheckReport> reports;
            try {
                reports = run(cfg, check_seed);
            } catch (const ConfigError& e) {
                // Check-specific preconditions such as |c + 0.1| < 1.
                if (std::string_view(e.path()) == "checks") {
                    throw;
                }
                ++rejections;
                continue;
            }
            if (std::any_of(reports.begin(), reports.end(),
                            [](const CheckReport& r) { return r.status == Status::Unverified; })) {
                ++gate_redraws;
                continue;
            }
            if (std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.ambiguous; })) {
                ++ambiguous_redraws;
                continue;
            }
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const CheckReport& r = reports[i];
                auto& t = tallies[i];
                if (r.status == Status::Pass) {
                    ++t.pass;
                } else {
                    ++t.fail;
                    ++mismatches;
                    if (failures.size() < 20) {
                        failures.push_back({{"draw", draw}, {"check", r.check}, {"defect", r.defect},
                                            {"symbols", cfg.symbols}});
                    }
                }
                if (std::isfinite(r.defect)) {
                    t.max_defect = std::max(t.max_defect, r.defect);
                    t.min_defect = std::min(t.min_defect, r.defect);
                }
            }
            break;
        }
    }

    json checks = json::array();
    for (std::size_t i = 0; i < base.checks.size(); ++i) {
        const auto& t = tallies[i];
        json entry{{"check", base.checks[i]}, {"pass", t.pass}, {"fail", t.fail}, {"unverified", t.unverified}};
        entry["max_defect"] = std::isfinite(t.max_defect) ? json(t.max_defect) : json(nullptr);
        entry["min_defect"] = std::isfinite(t.min_defect) ? json(t.min_defect) : json(nullptr);
        checks.push_back(std::move(entry));
    }
    json header = header_json(base, "sweep");
    header["seed"] = seed;
    header["draws"] = draws;
    return {{"header", std::move(header)},
            {"checks", std::move(checks)},
            {"mismatches", mismatches},
            {"rejections", rejections},
            {"redraws", {{"gate", gate_redraws}, {"ambiguous", ambiguous_redraws}}},
            {"failures", std::move(failures)},
            {"exit_code", mismatches == 0 ? 0 : 1}};
}

} // namespace cswcd::run
