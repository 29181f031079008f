#pragma once

// Suite configuration, the check registry and the parallel runner behind `wickbench run`
// and `wickbench check`.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "checks.hpp"
#include "json_io.hpp"
#include "random.hpp"

namespace wickbench {

struct CheckInfo {
    std::string name;
    std::string description;
};

inline const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> registry = {
        {"ab_matrix_check", "PSD certificates for the A, B and Hadamard A.B matrices of the main proof"},
        {"beckner_deficit", "int f^2 drho - int f o_a f drho <= (1-a) int |Df|^2 drho"},
        {"char_gram", "PSD certificate for the characteristic-function Gram matrix of nu"},
        {"classic_beckner_coeff_check", "coefficient form sum m! c^2 (1-a^|m|) <= (1-a) sum |m| m! c^2"},
        {"covariance_gap", "<<xi1 xi2, phi>> >= <<xi1 <> xi2, phi>> + sum_k <<d_k xi1 <> d_k xi2, phi>>"},
        {"g_lambda_bound", "||xi||_{G_lambda} <= int exp(lambda^2 |y|^2 / 2) dnu"},
        {"holder_check", "||Gamma(sqrt((1+a)/2)) (f o_a g)||_r <= ||f||_p ||g||_q"},
        {"left_positivity", "int f o_a f drho <= int f^2 drho"},
        {"strong_positivity_check", "<<Gamma(1/sqrt(a)) xi, phi>> >= 0 for positive phi"},
        {"wick_density_identity_check", "density of mu*(nu1*nu2) equals xi1 <> xi2"},
    };
    return registry;
}

inline bool is_known_check(const std::string& name) {
    const auto& reg = check_registry();
    return std::any_of(reg.begin(), reg.end(), [&](const CheckInfo& c) { return c.name == name; });
}

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t dim = 1;
    std::vector<double> alphas = default_alpha_grid();
    std::vector<DiscreteMeasure> measures;
    std::vector<TestFunction> functions;
    std::vector<std::string> checks;
    Tolerances tolerances;
    /// 0 selects default_quadrature_order(dim).
    unsigned quadrature_order = 0;
    std::size_t mc_count = 100000;
    std::string output = ".";
    std::size_t random_sweeps = 0;
    std::vector<std::size_t> sweep_dims = {1, 2, 3};
    SweepBounds sweep_bounds;
    /// Debug: swap lhs and rhs of every row.
    bool negate = false;
};

inline SuiteConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    SuiteConfig c;
    static const std::vector<std::string> known = {"seed",         "dim",           "alphas",     "measures",
                                                   "functions",    "checks",        "tolerances", "quadrature_order",
                                                   "mc_count",     "output",        "random_sweeps", "sweep_dims",
                                                   "sweep_bounds", "negate"};
    for (const auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("config: unknown key \"" + k + "\"");

    auto uint_of = [&](const char* key) -> std::uint64_t {
        const auto& v = j.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw ConfigError(std::string("config: \"") + key + "\" must be a nonnegative integer");
        return v.get<std::uint64_t>();
    };
    if (j.contains("seed")) c.seed = uint_of("seed");
    if (j.contains("dim")) c.dim = uint_of("dim");
    if (c.dim == 0) throw ConfigError("config: \"dim\" must be >= 1");
    if (j.contains("alphas")) {
        if (!j.at("alphas").is_array()) throw ConfigError("config: \"alphas\" must be an array");
        c.alphas.clear();
        for (const auto& a : j.at("alphas")) {
            const double v = detail::read_number(a, "config alphas");
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("config: alpha " + format_double(v) + " outside [0,1]");
            c.alphas.push_back(v);
        }
    }
    if (j.contains("measures")) {
        if (!j.at("measures").is_array()) throw ConfigError("config: \"measures\" must be an array");
        for (const auto& m : j.at("measures")) {
            auto nu = measure_from_json(m);
            if (nu.dim() != c.dim) throw ConfigError("config: measure dimension differs from \"dim\"");
            c.measures.push_back(std::move(nu));
        }
    }
    if (c.measures.empty()) c.measures.push_back(DiscreteMeasure::dirac(Vector(c.dim, 0.0)));
    if (j.contains("functions")) {
        if (!j.at("functions").is_array()) throw ConfigError("config: \"functions\" must be an array");
        for (const auto& f : j.at("functions")) {
            auto fn = function_from_json(f);
            if (dim_of(fn) != c.dim) throw ConfigError("config: function dimension differs from \"dim\"");
            c.functions.push_back(std::move(fn));
        }
    }
    if (j.contains("checks")) {
        if (!j.at("checks").is_array()) throw ConfigError("config: \"checks\" must be an array");
        for (const auto& name : j.at("checks")) {
            if (!name.is_string()) throw ConfigError("config: check names must be strings");
            const auto s = name.get<std::string>();
            if (!is_known_check(s)) throw ConfigError("config: unknown check \"" + s + "\"");
            c.checks.push_back(s);
        }
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigError("config: \"tolerances\" must be an object");
        for (const auto& [k, v] : t.items()) {
            const double x = detail::read_number(v, "config tolerances");
            if (!(x >= 0.0)) throw ConfigError("config: tolerance \"" + k + "\" must be >= 0");
            if (k == "exact") c.tolerances.exact = x;
            else if (k == "quadrature") c.tolerances.quadrature = x;
            else if (k == "mc_se") c.tolerances.mc_se = x;
            else if (k == "psd_floor") c.tolerances.psd_floor = x;
            else throw ConfigError("config: unknown tolerance \"" + k + "\"");
        }
    }
    if (j.contains("quadrature_order")) c.quadrature_order = static_cast<unsigned>(uint_of("quadrature_order"));
    if (j.contains("mc_count")) c.mc_count = uint_of("mc_count");
    if (j.contains("output")) {
        if (!j.at("output").is_string()) throw ConfigError("config: \"output\" must be a string");
        c.output = j.at("output").get<std::string>();
    }
    if (j.contains("random_sweeps")) c.random_sweeps = uint_of("random_sweeps");
    if (j.contains("sweep_dims")) {
        if (!j.at("sweep_dims").is_array() || j.at("sweep_dims").empty())
            throw ConfigError("config: \"sweep_dims\" must be a nonempty array");
        c.sweep_dims.clear();
        for (const auto& d : j.at("sweep_dims")) {
            if (!d.is_number_integer() || d.get<long long>() < 1)
                throw ConfigError("config: sweep dimensions must be positive integers");
            c.sweep_dims.push_back(d.get<std::size_t>());
        }
    }
    if (j.contains("sweep_bounds")) {
        const auto& b = j.at("sweep_bounds");
        if (!b.is_object()) throw ConfigError("config: \"sweep_bounds\" must be an object");
        if (b.contains("max_atoms")) c.sweep_bounds.max_atoms = b.at("max_atoms").get<std::size_t>();
        if (b.contains("atom_radius")) c.sweep_bounds.atom_radius = detail::read_number(b.at("atom_radius"), "sweep_bounds");
        if (b.contains("max_terms")) c.sweep_bounds.max_terms = b.at("max_terms").get<std::size_t>();
        if (b.contains("direction_radius"))
            c.sweep_bounds.direction_radius = detail::read_number(b.at("direction_radius"), "sweep_bounds");
        if (b.contains("max_degree")) c.sweep_bounds.max_degree = b.at("max_degree").get<unsigned>();
        if (c.sweep_bounds.max_atoms < 1 || c.sweep_bounds.max_terms < 1)
            throw ConfigError("config: sweep_bounds counts must be >= 1");
    }
    if (j.contains("negate")) {
        if (!j.at("negate").is_boolean()) throw ConfigError("config: \"negate\" must be a boolean");
        c.negate = j.at("negate").get<bool>();
    }
    if (c.random_sweeps > 0 && c.alphas.empty()) throw ConfigError("config: random sweeps need a nonempty alpha list");
    return c;
}

inline SuiteConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

namespace detail {

inline std::string label(const char* kind, std::size_t i) { return std::string(kind) + "[" + std::to_string(i) + "]"; }

inline InequalityReport& tag(InequalityReport& r, const json& extra) {
    r.params.update(extra);
    return r;
}

inline std::vector<Vector> directions_of(const ExpCombo& f) {
    std::vector<Vector> hs;
    for (const auto& t : f.terms()) hs.push_back(t.h);
    return hs;
}

inline InequalityReport error_row(const std::string& check, json params, const std::string& what) {
    InequalityReport r;
    r.check = check;
    r.params = std::move(params);
    r.gap = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    r.details = {{"error", what}};
    return r;
}

/// Grid of a given dimension, built once and shared read-only by all tasks.
class GridCache {
public:
    explicit GridCache(unsigned order_override) : order_(order_override) {}
    const QuadratureGrid* get(std::size_t dim) {
        auto it = grids_.find(dim);
        if (it != grids_.end()) return it->second ? &*it->second : nullptr;
        const unsigned order = order_ ? order_ : default_quadrature_order(dim);
        auto& slot = grids_[dim];
        if (order > 0) slot = gauss_hermite_grid(dim, order);
        return slot ? &*slot : nullptr;
    }

private:
    unsigned order_;
    std::map<std::size_t, std::optional<QuadratureGrid>> grids_;
};

using Task = std::function<std::vector<InequalityReport>()>;

}  // namespace detail

/// Enumerates every row-producing task of a configuration, in a fixed order.
inline std::vector<detail::Task> build_tasks(const SuiteConfig& cfg, detail::GridCache& grids) {
    using detail::label;
    using detail::tag;
    std::vector<detail::Task> tasks;
    const Tolerances tol = cfg.tolerances;

    // Grids are created up front so that tasks only read them.
    const QuadratureGrid* grid = grids.get(cfg.dim);
    std::map<std::size_t, const QuadratureGrid*> sweep_grids;
    for (auto n : cfg.sweep_dims)
        if (n <= 2 && cfg.random_sweeps > 0) sweep_grids[n] = grids.get(n);

    ExpCombo one = ExpCombo::one(cfg.dim);
    std::vector<std::pair<std::string, ExpCombo>> phis = {{"one", one}};
    for (std::size_t i = 0; i < cfg.functions.size(); ++i)
        if (const auto* e = std::get_if<ExpCombo>(&cfg.functions[i]); e && e->all_weights_positive())
            phis.emplace_back(label("f", i), *e);

    for (std::size_t ci = 0; ci < cfg.checks.size(); ++ci) {
        const std::string& name = cfg.checks[ci];
        // Configured grid.
        if (name == "beckner_deficit" || name == "left_positivity") {
            for (double a : cfg.alphas)
                for (std::size_t m = 0; m < cfg.measures.size(); ++m)
                    for (std::size_t f = 0; f < cfg.functions.size(); ++f)
                        tasks.push_back([&cfg, name, a, m, f, tol] {
                            const ConvolutionMeasure rho{cfg.measures[m]};
                            auto r = name == "beckner_deficit" ? beckner_deficit(cfg.functions[f], rho, a, tol.exact)
                                                               : left_positivity(cfg.functions[f], rho, a, tol.exact);
                            return std::vector{tag(r, {{"nu", label("nu", m)}, {"f", label("f", f)}})};
                        });
        } else if (name == "ab_matrix_check") {
            for (double a : cfg.alphas)
                for (std::size_t m = 0; m < cfg.measures.size(); ++m)
                    for (std::size_t f = 0; f < cfg.functions.size(); ++f)
                        if (std::holds_alternative<ExpCombo>(cfg.functions[f]))
                            tasks.push_back([&cfg, a, m, f, tol] {
                                const auto hs = detail::directions_of(std::get<ExpCombo>(cfg.functions[f]));
                                auto rows = ab_matrix_check(hs, {cfg.measures[m]}, a, tol.psd_floor).rows();
                                for (auto& r : rows) tag(r, {{"nu", label("nu", m)}, {"f", label("f", f)}});
                                return rows;
                            });
        } else if (name == "holder_check") {
            for (double a : cfg.alphas)
                for (std::size_t f = 0; f < cfg.functions.size(); ++f)
                    for (std::size_t g = f; g < cfg.functions.size(); ++g)
                        if (cfg.functions[f].index() == cfg.functions[g].index())
                            tasks.push_back([&cfg, a, f, g, tol, grid] {
                                auto r = holder_check(cfg.functions[f], cfg.functions[g], holder_diagonal_params(a),
                                                      grid, tol);
                                return std::vector{tag(r, {{"f", label("f", f)}, {"g", label("f", g)}})};
                            });
        } else if (name == "classic_beckner_coeff_check") {
            for (double a : cfg.alphas)
                for (std::size_t f = 0; f < cfg.functions.size(); ++f)
                    if (std::holds_alternative<ChaosExpansion>(cfg.functions[f]))
                        tasks.push_back([&cfg, a, f] {
                            auto r = classic_beckner_coeff_check(std::get<ChaosExpansion>(cfg.functions[f]), a);
                            return std::vector{tag(r, {{"f", label("f", f)}})};
                        });
        } else if (name == "strong_positivity_check") {
            for (double a : cfg.alphas)
                if (a > 0.0)
                    for (std::size_t m = 0; m < cfg.measures.size(); ++m)
                        for (const auto& [plabel, phi] : phis)
                            tasks.push_back([&cfg, a, m, plabel, phi, tol] {
                                auto r = strong_positivity_check({cfg.measures[m]}, a, phi, tol.exact);
                                return std::vector{tag(r, {{"nu", label("nu", m)}, {"phi", plabel}})};
                            });
        } else if (name == "covariance_gap" || name == "wick_density_identity_check") {
            for (std::size_t m1 = 0; m1 < cfg.measures.size(); ++m1)
                for (std::size_t m2 = m1; m2 < cfg.measures.size(); ++m2) {
                    if (name == "wick_density_identity_check") {
                        tasks.push_back([&cfg, m1, m2] {
                            auto r = wick_density_identity_check(cfg.measures[m1], cfg.measures[m2]);
                            return std::vector{tag(r, {{"nu1", label("nu", m1)}, {"nu2", label("nu", m2)}})};
                        });
                        continue;
                    }
                    for (const auto& [plabel, phi] : phis)
                        tasks.push_back([&cfg, m1, m2, plabel, phi, tol] {
                            auto r = covariance_gap(cfg.measures[m1], cfg.measures[m2], phi, tol.exact);
                            return std::vector{
                                tag(r, {{"nu1", label("nu", m1)}, {"nu2", label("nu", m2)}, {"phi", plabel}})};
                        });
                }
        } else if (name == "char_gram") {
            for (std::size_t m = 0; m < cfg.measures.size(); ++m)
                for (std::size_t f = 0; f < cfg.functions.size(); ++f)
                    if (std::holds_alternative<ExpCombo>(cfg.functions[f]))
                        tasks.push_back([&cfg, m, f, tol] {
                            const auto hs = detail::directions_of(std::get<ExpCombo>(cfg.functions[f]));
                            auto r = char_gram_check(cfg.measures[m], hs, tol.psd_floor);
                            return std::vector{tag(r, {{"nu", label("nu", m)}, {"f", label("f", f)}})};
                        });
        } else if (name == "g_lambda_bound") {
            for (double a : cfg.alphas)
                for (std::size_t m = 0; m < cfg.measures.size(); ++m)
                    tasks.push_back([&cfg, a, m, tol] {
                        auto r = g_lambda_check({cfg.measures[m]}, std::sqrt(2.0 / (1.0 + a)), tol.exact);
                        return std::vector{tag(r, {{"nu", label("nu", m)}, {"alpha", a}})};
                    });
        }

        // Seeded random instances.
        for (std::size_t i = 0; i < cfg.random_sweeps; ++i) {
            tasks.push_back([&cfg, name, ci, i, tol, sweep_grids]() -> std::vector<InequalityReport> {
                auto rng = make_rng(cfg.seed, (static_cast<std::uint64_t>(ci) << 32) | i);
                const auto& b = cfg.sweep_bounds;
                auto pick_dim = [&](std::size_t cap) {
                    std::vector<std::size_t> ds;
                    for (auto d : cfg.sweep_dims)
                        if (d <= cap) ds.push_back(d);
                    if (ds.empty()) return std::size_t{0};
                    return ds[uniform_index(rng, 0, ds.size() - 1)];
                };
                auto pick_alpha = [&](bool positive) {
                    std::vector<double> as;
                    for (double a : cfg.alphas)
                        if (!positive || a > 0.0) as.push_back(a);
                    if (as.empty()) return -1.0;
                    return as[uniform_index(rng, 0, as.size() - 1)];
                };
                const json base = {{"instance", i}};
                const std::size_t n = pick_dim(std::numeric_limits<std::size_t>::max());
                std::size_t row_dim = n;
                std::vector<InequalityReport> rows;
                if (name == "beckner_deficit" || name == "left_positivity") {
                    const double a = pick_alpha(false);
                    const auto nu = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    const TestFunction f = random_exp_combo(rng, n, b.max_terms, b.direction_radius);
                    rows.push_back(name == "beckner_deficit" ? beckner_deficit(f, {nu}, a, tol.exact)
                                                             : left_positivity(f, {nu}, a, tol.exact));
                } else if (name == "ab_matrix_check") {
                    const double a = pick_alpha(false);
                    const auto nu = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    const auto hs = random_directions(rng, n, uniform_index(rng, 1, 6), b.direction_radius);
                    rows = ab_matrix_check(hs, {nu}, a, tol.psd_floor).rows();
                } else if (name == "holder_check") {
                    const std::size_t hn = pick_dim(2);
                    if (hn == 0) return {};
                    row_dim = hn;
                    const double a = pick_alpha(false);
                    const TestFunction f = random_exp_combo(rng, hn, b.max_terms, 1.0);
                    const TestFunction g = random_exp_combo(rng, hn, b.max_terms, 1.0);
                    rows.push_back(holder_check(f, g, holder_diagonal_params(a), sweep_grids.at(hn), tol));
                } else if (name == "classic_beckner_coeff_check") {
                    const double a = pick_alpha(false);
                    rows.push_back(classic_beckner_coeff_check(random_chaos(rng, n, b.max_degree, 6), a));
                } else if (name == "strong_positivity_check") {
                    const double a = pick_alpha(true);
                    if (a < 0.0) return {};
                    const auto nu = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    const auto phi = random_exp_combo(rng, n, b.max_terms, b.direction_radius, true);
                    rows.push_back(strong_positivity_check({nu}, a, phi, tol.exact));
                } else if (name == "covariance_gap") {
                    const auto nu1 = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    const auto nu2 = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    const auto phi = uniform_index(rng, 0, 1) == 0
                                         ? ExpCombo::one(n)
                                         : random_exp_combo(rng, n, 1, b.direction_radius, true);
                    rows.push_back(covariance_gap(nu1, nu2, phi, tol.exact));
                } else if (name == "wick_density_identity_check") {
                    const auto nu1 = random_measure(rng, n, 4, b.atom_radius);
                    const auto nu2 = random_measure(rng, n, 4, b.atom_radius);
                    rows.push_back(wick_density_identity_check(nu1, nu2));
                } else if (name == "char_gram") {
                    const auto nu = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    const auto hs = random_directions(rng, n, uniform_index(rng, 1, 6), b.direction_radius);
                    rows.push_back(char_gram_check(nu, hs, tol.psd_floor));
                } else if (name == "g_lambda_bound") {
                    const double a = pick_alpha(false);
                    const auto nu = random_measure(rng, n, b.max_atoms, b.atom_radius);
                    rows.push_back(g_lambda_check({nu}, std::sqrt(2.0 / (1.0 + a)), tol.exact));
                }
                for (auto& r : rows) {
                    r.params.update(base);
                    r.params["dim"] = row_dim;
                }
                return rows;
            });
        }
    }
    return tasks;
}

/// Rows ordered by check name, then by the serialized parameter object.
inline void sort_rows(std::vector<InequalityReport>& rows) {
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) keys.emplace_back(rows[i].params.dump(), i);
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].check != rows[b].check) return rows[a].check < rows[b].check;
        return keys[a].first < keys[b].first;
    });
    std::vector<InequalityReport> sorted;
    sorted.reserve(rows.size());
    for (auto i : order) sorted.push_back(std::move(rows[i]));
    rows = std::move(sorted);
}

/// Runs every task of the configuration on `jobs` threads and returns canonically ordered rows.
inline std::vector<InequalityReport> run_suite(const SuiteConfig& cfg, unsigned jobs = 1) {
    detail::GridCache grids(cfg.quadrature_order);
    const auto tasks = build_tasks(cfg, grids);
    std::vector<std::vector<InequalityReport>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
            try {
                results[t] = tasks[t]();
            } catch (const std::exception& e) {
                results[t] = {detail::error_row("task_error", {{"task", t}}, e.what())};
            }
        }
    };
    jobs = std::max(1u, jobs);
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<InequalityReport> rows;
    for (auto& r : results)
        for (auto& row : r) rows.push_back(std::move(row));
    if (cfg.negate)
        for (auto& r : rows) r.negate();
    sort_rows(rows);
    return rows;
}

inline bool all_pass(const std::vector<InequalityReport>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const InequalityReport& r) { return r.pass; });
}

/// Writes report.json and report.csv into `dir`, creating it if needed.
inline void write_reports(const std::vector<InequalityReport>& rows, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "report.json") << reports_to_json(rows);
    std::ofstream(dir / "report.csv") << reports_to_csv(rows);
}

/// Runs one named check on inline parameters (`wickbench check`).
///
/// Recognized keys: f, g, phi (function JSON); nu, nu1, nu2 (measure JSON, default the Dirac
/// mass at 0); alpha, p, q, r, lambda (numbers); hs (array of vectors); dim; quadrature_order.
inline std::vector<InequalityReport> run_check(const std::string& name, const json& params,
                                               const Tolerances& tol = {}) {
    if (!is_known_check(name)) throw ConfigError("unknown check \"" + name + "\"");
    if (!params.is_object()) throw ConfigError("params must be a JSON object");

    std::optional<TestFunction> f, g;
    std::optional<ExpCombo> phi;
    std::optional<DiscreteMeasure> nu, nu1, nu2;
    if (params.contains("f")) f = function_from_json(params.at("f"));
    if (params.contains("g")) g = function_from_json(params.at("g"));
    if (params.contains("phi")) phi = exp_combo_from_json(params.at("phi"));
    if (params.contains("nu")) nu = measure_from_json(params.at("nu"));
    if (params.contains("nu1")) nu1 = measure_from_json(params.at("nu1"));
    if (params.contains("nu2")) nu2 = measure_from_json(params.at("nu2"));

    std::size_t dim = 0;
    if (params.contains("dim")) dim = params.at("dim").get<std::size_t>();
    else if (f) dim = dim_of(*f);
    else if (nu) dim = nu->dim();
    else if (nu1) dim = nu1->dim();
    else if (phi) dim = phi->dim();
    else if (params.contains("hs") && params.at("hs").is_array() && !params.at("hs").empty())
        dim = params.at("hs").at(0).size();
    if (dim == 0) throw ConfigError("cannot infer the dimension; pass \"dim\"");

    const auto dirac0 = DiscreteMeasure::dirac(Vector(dim, 0.0));
    const ConvolutionMeasure rho{nu.value_or(dirac0)};
    auto number = [&](const char* key, std::optional<double> fallback = std::nullopt) {
        if (params.contains(key)) return detail::read_number(params.at(key), key);
        if (fallback) return *fallback;
        throw ConfigError(std::string("check ") + name + ": missing \"" + key + "\"");
    };
    auto need_f = [&]() -> const TestFunction& {
        if (!f) throw ConfigError("check " + name + ": missing \"f\"");
        return *f;
    };
    auto hs = [&] {
        std::vector<Vector> out;
        if (params.contains("hs")) {
            for (const auto& h : params.at("hs")) out.push_back(detail::read_vector(h, dim, "hs"));
        } else if (f && std::holds_alternative<ExpCombo>(*f)) {
            out = detail::directions_of(std::get<ExpCombo>(*f));
        } else {
            throw ConfigError("check " + name + ": missing \"hs\"");
        }
        return out;
    };
    auto alpha_in_range = [&](double a) {
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha must lie in [0,1]");
        return a;
    };

    if (name == "beckner_deficit") return {beckner_deficit(need_f(), rho, alpha_in_range(number("alpha")), tol.exact)};
    if (name == "left_positivity") return {left_positivity(need_f(), rho, alpha_in_range(number("alpha")), tol.exact)};
    if (name == "ab_matrix_check")
        return ab_matrix_check(hs(), rho, alpha_in_range(number("alpha")), tol.psd_floor).rows();
    if (name == "holder_check") {
        const double a = alpha_in_range(number("alpha"));
        const auto diag = holder_diagonal_params(a);
        HolderParams hp{number("p", diag.p), number("q", diag.q), 0.0, a};
        hp.r = number("r", params.contains("p") || params.contains("q") ? holder_solve_r(hp.p, hp.q, a) : diag.r);
        const auto order = params.contains("quadrature_order") ? params.at("quadrature_order").get<unsigned>()
                                                               : default_quadrature_order(dim);
        std::optional<QuadratureGrid> grid;
        if (order > 0) grid = gauss_hermite_grid(dim, order);
        const auto relation = holder_relation_check(hp);
        if (!relation.admissible) throw ConfigError("holder_check: inadmissible exponents");
        return {holder_check(need_f(), g ? *g : need_f(), hp, grid ? &*grid : nullptr, tol)};
    }
    if (name == "classic_beckner_coeff_check") {
        const auto* c = std::get_if<ChaosExpansion>(&need_f());
        if (!c) throw ConfigError("classic_beckner_coeff_check: f must be a chaos expansion");
        return {classic_beckner_coeff_check(*c, alpha_in_range(number("alpha")))};
    }
    if (name == "strong_positivity_check") {
        const double a = number("alpha");
        if (!(a > 0.0)) throw ConfigError("strong_positivity_check: alpha must be > 0");
        const auto p = phi.value_or(ExpCombo::one(dim));
        if (!p.all_weights_positive()) throw ConfigError("strong_positivity_check: phi needs positive weights");
        return {strong_positivity_check(rho, a, p, tol.exact)};
    }
    if (name == "covariance_gap") {
        const auto p = phi.value_or(ExpCombo::one(dim));
        if (!p.all_weights_positive()) throw ConfigError("covariance_gap: phi needs positive weights");
        return {covariance_gap(nu1.value_or(rho.nu), nu2.value_or(rho.nu), p, tol.exact)};
    }
    if (name == "wick_density_identity_check")
        return {wick_density_identity_check(nu1.value_or(rho.nu), nu2.value_or(rho.nu))};
    if (name == "char_gram") return {char_gram_check(rho.nu, hs(), tol.psd_floor)};
    if (name == "g_lambda_bound") return {g_lambda_check(rho, number("lambda", 1.0), tol.exact)};
    throw ConfigError("unhandled check \"" + name + "\"");
}

}  // namespace wickbench
