// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/jobs.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "sgate/parallel.hpp"

namespace sgate {

using json = nlohmann::json;

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw Error(ErrorKind::Dimension, "csv: row has " + std::to_string(cells.size()) + " cells, expected " +
                                              std::to_string(columns_.size()));
    }
    cells_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& out) const {
    // Cells never contain commas or quotes except error text, which is quoted.
    auto cell = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c == '\n' ? ' ' : c;
        }
        return q + "\"";
    };
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& r : cells_) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
        out << "\n";
    }
}

namespace {

const char* scheme_name(Scheme s) { return s == Scheme::Lambda ? "lambda" : "dual_v"; }

std::string describe(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

// Appends re/im (or a single real) columns.
void put(std::vector<std::string>& row, double v) { row.push_back(format_number(v)); }
void put(std::vector<std::string>& row, cplx v) {
    row.push_back(format_number(v.real()));
    row.push_back(format_number(v.imag()));
}
void put_nan(std::vector<std::string>& row, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) row.emplace_back("nan");
}

json failure(std::size_t row, double value, const std::string& error) {
    return json{{"row", row}, {"value", value}, {"error", error}};
}

// δ_res, resonance widths and the analytic optimum of the base ensemble.
json derived_quantities(const RunConfig& cfg, json& failures) {
    const EnsembleSpec& e = cfg.gate.ensemble;
    const auto opt = optimal_params(double(e.N), e.gamma_1d);
    json d;
    d["delta_c_opt"] = opt.delta_c;
    d["sigma_tilde_opt"] = opt.sigma_tilde;
    d["delta_res_seed"] = resonance_seed(e);
    d["width_analytic"] = resonance_width_analytic(e);
    try {
        const double res = cfg.gate.delta_res ? *cfg.gate.delta_res : find_resonance(e, cfg.numeric);
        d["delta_res"] = res;
        d["width_numeric"] = resonance_width_numeric(e, res, cfg.numeric);
    } catch (const Error& err) {
        failures.push_back(json{{"row", nullptr}, {"value", nullptr}, {"error", "derived: " + describe(err)}});
    }
    json seeds = json::object();
    seeds["rng_seed"] = cfg.rng_seed;
    if (e.placement.kind == Placement::Kind::RandomUniform || cfg.job == JobKind::PlacementStudy) {
        seeds["realization_seeds"] = {cfg.rng_seed, cfg.rng_seed + std::uint64_t(cfg.gate.realizations) - 1};
    }
    d["seeds"] = seeds;
    return d;
}

// ---------------------------------------------------------------- spectrum ---

CsvTable run_spectrum(const RunConfig& cfg, int threads, json& failures) {
    CsvTable t({"delta", "re_r0", "im_r0", "re_t0", "im_t0", "re_r1", "im_r1", "re_t1", "im_t1", "abs2_r0",
                "abs2_t0", "abs2_r1", "abs2_t1", "error"});
    EnsembleSpec spec = cfg.gate.ensemble;
    spec.stored_site.reset();
    const long site = cfg.stored_site ? *cfg.stored_site : spec.site_count() / 2;
    const auto points = spectrum(spec, cfg.grid, site, threads, cfg.numeric);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        std::vector<std::string> row;
        put(row, cfg.grid[i]);
        if (p.error || !p.stored) {
            put_nan(row, 12);
            const std::string err = p.error ? *p.error : "stored spectrum missing";
            row.push_back(err);
            failures.push_back(failure(i, cfg.grid[i], err));
        } else {
            const auto& u = p.unstored;
            const auto& s = *p.stored;
            put(row, u.r_plus);
            put(row, u.t_plus);
            put(row, s.r_plus);
            put(row, s.t_plus);
            put(row, std::norm(u.r_plus));
            put(row, std::norm(u.t_plus));
            put(row, std::norm(s.r_plus));
            put(row, std::norm(s.t_plus));
            row.emplace_back();
        }
        t.add_row(std::move(row));
    }
    return t;
}

// ----------------------------------------------------------- fidelity sweep ---

bool follows_optimal(const RunConfig& cfg) {
    return !cfg.delta_c_explicit && !cfg.sigma_tilde_explicit &&
           (cfg.sweep_param == SweepParam::N || cfg.sweep_param == SweepParam::GammaOneD);
}

GateConfig family_base(const RunConfig& cfg, Scheme scheme) {
    GateConfig g = cfg.gate;
    g.ensemble.scheme = scheme;
    if (scheme == Scheme::Lambda) {
        g.ensemble.placement = Placement{};
    } else if (!cfg.d_explicit || cfg.gate.ensemble.scheme == Scheme::Lambda) {
        g.ensemble.placement.d = 0.266;
    }
    g.ensemble.placement.seed = cfg.rng_seed;
    return g;
}

CsvTable run_fidelity_sweep(const RunConfig& cfg, int threads, json& failures) {
    const std::string param = std::string("sweep_") + to_string(cfg.sweep_param);
    CsvTable t({"scheme", "tb_mode", param, "N", "gamma_1d", "omega0", "delta_c", "sigma_tilde", "d", "k0_l1",
                "k0_l2", "delta_res", "eta_eit", "re_R0", "im_R0", "re_R0_mean", "im_R0_mean", "re_R11", "im_R11",
                "R12", "re_t_b", "im_t_b", "F_cj", "P_suc", "F_cj_cond", "F_cj_analytic_tb1",
                "F_cj_cond_analytic_tb1", "F_cj_analytic_tbR0", "F_cj_cond_analytic_tbR0", "error"});
    SweepOptions opts;
    opts.threads = threads;
    opts.follow_optimal = follows_optimal(cfg);
    for (Scheme scheme : cfg.schemes) {
        const auto rows = sweep(cfg.sweep_param, cfg.grid, family_base(cfg, scheme), opts, cfg.numeric);
        for (TbMode mode : cfg.tb_modes) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const SweepRow& r = rows[i];
                const GateConfig& c = r.config;
                std::vector<std::string> row{scheme_name(scheme), to_string(mode)};
                put(row, r.value);
                row.push_back(std::to_string(c.ensemble.N));
                put(row, c.ensemble.gamma_1d);
                put(row, c.ensemble.omega0);
                put(row, c.ensemble.delta_c);
                put(row, c.sigma_tilde);
                put(row, c.ensemble.placement.d);
                put(row, c.geometry.k0_l1);
                put(row, c.geometry.k0_l2);
                if (!r.report) {
                    put_nan(row, 18);
                    row.push_back(*r.error);
                    failures.push_back(failure(t.rows(), r.value, *r.error));
                    t.add_row(std::move(row));
                    continue;
                }
                const FidelityReport rep = with_t_b(*r.report, mode, c.t_b_fixed);
                const auto a1 = analytic_fidelities(double(c.ensemble.N), c.ensemble.gamma_1d, TbMode::One);
                const auto a2 = analytic_fidelities(double(c.ensemble.N), c.ensemble.gamma_1d, TbMode::MatchR0);
                put(row, rep.delta_res);
                put(row, rep.eta_eit);
                put(row, rep.R0);
                put(row, rep.R0_mean);
                put(row, rep.R11);
                put(row, rep.R12);
                put(row, rep.t_b);
                put(row, rep.F_cj);
                put(row, rep.P_suc);
                put(row, rep.F_cj_cond);
                put(row, a1.f_cj);
                put(row, a1.f_cj_cond);
                put(row, a2.f_cj);
                put(row, a2.f_cj_cond);
                row.emplace_back();
                t.add_row(std::move(row));
            }
        }
    }
    return t;
}

// ----------------------------------------------------------------- optimize ---

CsvTable run_optimize(const RunConfig& cfg, json& manifest, json& failures) {
    std::vector<std::string> cols{"evaluation"};
    for (auto p : cfg.free_params) cols.emplace_back(to_string(p));
    cols.emplace_back("objective");
    cols.emplace_back("error");
    CsvTable t(cols);

    OptSpec spec = default_opt_spec(cfg.gate, cfg.objective, cfg.free_params, cfg.budget);
    // Explicit values in the configuration replace the analytic seed when they
    // fall inside the default bounds.
    for (std::size_t k = 0; k < spec.free_params.size(); ++k) {
        double v = spec.seed_point[k];
        if (spec.free_params[k] == FreeParam::DeltaC && cfg.delta_c_explicit) v = cfg.gate.ensemble.delta_c;
        if (spec.free_params[k] == FreeParam::SigmaTilde && cfg.sigma_tilde_explicit) v = cfg.gate.sigma_tilde;
        if (v < spec.bounds[k].lo || v > spec.bounds[k].hi) {
            throw Error(ErrorKind::Config, std::string("optimize: starting ") + to_string(spec.free_params[k]) +
                                               " lies outside the search bounds");
        }
        spec.seed_point[k] = v;
    }

    std::vector<OptTraceEntry> trace;
    json result;
    try {
        const GateOptResult r = maximize(spec, cfg.gate, cfg.numeric);
        trace = r.opt.trace;
        result["best_point"] = r.opt.best_point;
        result["best_value"] = r.opt.best_value;
        result["converged"] = r.opt.converged;
        result["iterations"] = r.opt.iterations;
        result["F_cj"] = r.best_report.F_cj;
        result["P_suc"] = r.best_report.P_suc;
        result["F_cj_cond"] = r.best_report.F_cj_cond;
        result["delta_res"] = r.best_report.delta_res;
        result["R0"] = {r.best_report.R0.real(), r.best_report.R0.imag()};
        result["t_b"] = {r.best_report.t_b.real(), r.best_report.t_b.imag()};
    } catch (const OptimizationFailure& e) {
        trace = e.trace();
        failures.push_back(json{{"row", nullptr}, {"value", nullptr}, {"error", describe(e)}});
    }
    json bounds = json::array();
    for (const auto& b : spec.bounds) bounds.push_back({b.lo, b.hi});
    result["seed_point"] = spec.seed_point;
    result["bounds"] = bounds;
    manifest["optimization"] = result;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (double x : trace[i].point) put(row, x);
        put(row, trace[i].value);
        row.emplace_back(std::isfinite(trace[i].value) ? "" : "non_finite_objective");
        t.add_row(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------- gate time ---

CsvTable run_gate_time(const RunConfig& cfg) {
    std::vector<std::string> cols{"N",       "delta_c_opt", "sigma_tilde_opt", "t_eit_pass", "t_eit_round_trip",
                                  "t_pi_min", "sigma_b",     "t_scatter",       "F_cj_bandwidth"};
    if (cfg.delta_hfs) cols.emplace_back("loss_hfs");
    cols.emplace_back("error");
    CsvTable t(cols);
    const double g = cfg.gate.ensemble.gamma_1d, w = cfg.gate.ensemble.omega0;
    for (double n : cfg.grid) {
        const auto opt = optimal_params(n, g);
        const auto budget = gate_time_budget(n, g, w, cfg.delta_hfs);
        const double sb = scattering_sigma_b(n, g, w);
        std::vector<std::string> row;
        put(row, n);
        put(row, opt.delta_c);
        put(row, opt.sigma_tilde);
        put(row, budget.t_eit_pass);
        put(row, budget.t_eit_round_trip);
        put(row, budget.t_pi_min);
        put(row, sb);
        put(row, budget.t_scatter);
        put(row, bandwidth_corrected_f_cj(n, g, w, sb));
        if (cfg.delta_hfs) put(row, *budget.loss_hfs);
        row.emplace_back();
        t.add_row(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------- placement study ---

CsvTable run_placement_study(const RunConfig& cfg, int threads, json& failures) {
    const std::string param = std::string("sweep_") + to_string(cfg.sweep_param);
    CsvTable t({param, "placement", "realizations", "N", "d", "delta_c", "sigma_tilde", "delta_res", "F_cj", "P_suc",
                "F_cj_cond", "F_cj_std", "F_cj_cond_std", "error"});
    const bool follow = !cfg.delta_c_explicit && !cfg.sigma_tilde_explicit && cfg.sweep_param == SweepParam::N;

    // Two evaluations per grid point: regular, then random placement.
    const std::size_t n = cfg.grid.size();
    std::vector<std::optional<FidelityReport>> reports(2 * n);
    std::vector<GateConfig> configs(2 * n);
    std::vector<std::string> errors(2 * n);
    parallel_for(2 * n, threads, [&](std::size_t k) {
        GateConfig base = cfg.gate;
        base.ensemble.placement.kind = k % 2 == 0 ? Placement::Kind::Regular : Placement::Kind::RandomUniform;
        base.ensemble.placement.seed = cfg.rng_seed;
        base.realizations = k % 2 == 0 ? 1 : cfg.gate.realizations;
        try {
            configs[k] = sweep_point(cfg.sweep_param, cfg.grid[k / 2], base, follow);
            reports[k] = evaluate_gate(configs[k], cfg.numeric);
        } catch (const Error& e) {
            configs[k] = base;
            errors[k] = describe(e);
        }
    });
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const GateConfig& c = configs[k];
        std::vector<std::string> row;
        put(row, cfg.grid[k / 2]);
        row.emplace_back(k % 2 == 0 ? "regular" : "random_uniform");
        row.push_back(std::to_string(c.realizations));
        row.push_back(std::to_string(c.ensemble.N));
        put(row, c.ensemble.placement.d);
        put(row, c.ensemble.delta_c);
        put(row, c.sigma_tilde);
        if (!reports[k]) {
            put_nan(row, 6);
            row.push_back(errors[k]);
            failures.push_back(failure(k, cfg.grid[k / 2], errors[k]));
            t.add_row(std::move(row));
            continue;
        }
        const FidelityReport& rep = *reports[k];
        // Spread of the per-realisation figures of merit.
        double m1 = 0.0, m2 = 0.0, c1 = 0.0, c2 = 0.0;
        for (const auto& in : rep.inputs) {
            const double f = f_cj(in, rep.t_b), p = p_suc(in, rep.t_b);
            const double fc = p > 0.0 ? f / p : 0.0;
            m1 += f;
            m2 += f * f;
            c1 += fc;
            c2 += fc * fc;
        }
        const double cnt = double(rep.inputs.size());
        auto stddev = [&](double s1, double s2) {
            if (cnt < 2) return 0.0;
            return std::sqrt(std::max(0.0, (s2 - s1 * s1 / cnt) / (cnt - 1.0)));
        };
        put(row, rep.delta_res);
        put(row, rep.F_cj);
        put(row, rep.P_suc);
        put(row, rep.F_cj_cond);
        put(row, stddev(m1, m2));
        put(row, stddev(c1, c2));
        row.emplace_back();
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace

JobResult execute(const RunConfig& cfg, int threads) {
    if (threads < 1) throw Error(ErrorKind::Config, "threads must be at least 1");
    if (cfg.grid.empty() && cfg.job != JobKind::Optimize) throw Error(ErrorKind::Config, "empty grid");

    JobResult out;
    json failures = json::array();
    json manifest;
    manifest["program"] = "stationary-gate";
    manifest["version"] = SGATE_VERSION;
    manifest["config"] = cfg.to_json();
    manifest["derived"] = derived_quantities(cfg, failures);

    switch (cfg.job) {
        case JobKind::Spectrum: out.table = run_spectrum(cfg, threads, failures); break;
        case JobKind::FidelitySweep: out.table = run_fidelity_sweep(cfg, threads, failures); break;
        case JobKind::Optimize: out.table = run_optimize(cfg, manifest, failures); break;
        case JobKind::GateTime: out.table = run_gate_time(cfg); break;
        case JobKind::PlacementStudy: out.table = run_placement_study(cfg, threads, failures); break;
    }
    manifest["csv"] = {{"file", cfg.output_name + ".csv"}, {"rows", out.table.rows()}, {"columns", out.table.columns()}};
    manifest["failures"] = failures;
    out.failed_points = static_cast<int>(failures.size());
    manifest["status"] = out.failed_points > 0 ? "numeric_failure" : "ok";
    out.manifest = std::move(manifest);
    return out;
}

int run_job(const RunConfig& cfg, const std::string& out_dir, int threads, std::ostream& log) {
    const JobResult result = execute(cfg, threads);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Config, "cannot create output directory '" + out_dir + "': " + ec.message());

    const fs::path csv = fs::path(out_dir) / (cfg.output_name + ".csv");
    const fs::path man = fs::path(out_dir) / (cfg.output_name + ".json");
    {
        std::ofstream f(csv, std::ios::binary);
        if (!f) throw Error(ErrorKind::Config, "cannot write '" + csv.string() + "'");
        result.table.write(f);
    }
    {
        std::ofstream f(man, std::ios::binary);
        if (!f) throw Error(ErrorKind::Config, "cannot write '" + man.string() + "'");
        f << result.manifest.dump(2) << "\n";
    }
    log << "wrote " << csv.string() << " (" << result.table.rows() << " rows) and " << man.string() << "\n";
    if (result.failed_points > 0) {
        log << result.failed_points << " point(s) failed; see 'failures' in the manifest\n";
    }
    return result.exit_code();
}

}  // namespace sgate
