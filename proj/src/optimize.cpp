// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "sgate/parallel.hpp"

namespace sgate {

GoldenResult golden_section_maximize(const std::function<double(double)>& f, double a,
                                     double b, double tol) {
    if (a > b) std::swap(a, b);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
        if (evals > 10000) break;
    }
    if (fc >= fd) return {c, fc, evals};
    return {d, fd, evals};
}

namespace {

double sanitize(double v) {
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

}  // namespace

OptResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& seed,
                               const std::vector<Bound>& bounds,
                               const NelderMeadOptions& options) {
    const std::size_t dim = seed.size();
    if (dim == 0 || bounds.size() != dim) {
        throw Error(ErrorKind::Config, "nelder_mead: seed and bounds must have equal, non-zero size");
    }
    for (std::size_t k = 0; k < dim; ++k) {
        if (!(bounds[k].lo <= seed[k] && seed[k] <= bounds[k].hi)) {
            throw Error(ErrorKind::Config, "nelder_mead: seed outside bounds");
        }
    }
    if (options.max_evaluations < 20) {
        throw Error(ErrorKind::Config, "nelder_mead: evaluation budget must be >= 20");
    }

    OptResult result;
    auto clamp = [&](std::vector<double> p) {
        for (std::size_t k = 0; k < dim; ++k) p[k] = std::clamp(p[k], bounds[k].lo, bounds[k].hi);
        return p;
    };
    auto eval = [&](const std::vector<double>& p) {
        const double raw = f(p);
        result.trace.push_back({p, raw});
        return sanitize(raw);
    };

    // Initial simplex: the seed plus one step along each axis, stepping inward
    // if the forward step would leave the box.
    std::vector<std::vector<double>> pts{seed};
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<double> p = seed;
        const double step = options.initial_step_fraction * (bounds[k].hi - bounds[k].lo);
        p[k] = (seed[k] + step <= bounds[k].hi) ? seed[k] + step : seed[k] - step;
        pts.push_back(clamp(p));
    }
    std::vector<double> vals;
    for (const auto& p : pts) vals.push_back(eval(p));

    const double seed_value = vals[0];
    auto evals_used = [&] { return static_cast<int>(result.trace.size()); };

    std::vector<std::size_t> order(dim + 1);
    while (evals_used() < options.max_evaluations) {
        ++result.iterations;
        std::iota(order.begin(), order.end(), 0);
        // Stable sort keeps ties in insertion order, so runs are reproducible.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        // Convergence: spread of values and of points.
        double spread_v = vals[best] - vals[worst];
        double spread_p = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                const double scale = std::max(std::abs(pts[best][k]), 1e-12);
                spread_p = std::max(spread_p, std::abs(pts[i][k] - pts[best][k]) / scale);
            }
        }
        if (std::isfinite(spread_v) && spread_v <= options.value_tol &&
            spread_p <= options.point_rel_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / double(dim);
        }
        auto along = [&](double coeff) {
            std::vector<double> p(dim);
            for (std::size_t k = 0; k < dim; ++k)
                p[k] = centroid[k] + coeff * (pts[worst][k] - centroid[k]);
            return clamp(p);
        };

        const auto reflected = along(-1.0);
        const double fr = eval(reflected);
        if (fr > vals[best]) {
            if (evals_used() >= options.max_evaluations) {
                pts[worst] = reflected;
                vals[worst] = fr;
                break;
            }
            const auto expanded = along(-2.0);
            const double fe = eval(expanded);
            if (fe > fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr > vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = fr;
            continue;
        }
        if (evals_used() >= options.max_evaluations) {
            if (fr > vals[worst]) {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            break;
        }
        const bool outside = fr > vals[worst];
        const auto contracted = along(outside ? -0.5 : 0.5);
        const double fc = eval(contracted);
        if (fc > std::max(fr, vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = fc;
            continue;
        }
        // Shrink towards the best vertex.
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            if (evals_used() >= options.max_evaluations) break;
            for (std::size_t k = 0; k < dim; ++k)
                pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            vals[i] = eval(pts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (vals[i] > vals[best]) best = i;
    if (!std::isfinite(vals[best])) {
        // Scan the whole trace before declaring failure.
        bool any = false;
        for (const auto& e : result.trace) any = any || std::isfinite(e.value);
        if (!any) {
            throw OptimizationFailure("nelder_mead: objective is non-finite at every evaluated point",
                                      result.trace);
        }
    }
    // Best over the full trace (never worse than the seed).
    double best_value = vals[best];
    std::vector<double> best_point = pts[best];
    for (const auto& e : result.trace) {
        if (std::isfinite(e.value) && e.value > best_value) {
            best_value = e.value;
            best_point = e.point;
        }
    }
    if (!(best_value >= seed_value) && std::isfinite(seed_value)) {
        best_value = seed_value;
        best_point = seed;
    }
    result.best_point = best_point;
    result.best_value = best_value;
    return result;
}

const char* to_string(Objective objective) {
    return objective == Objective::Unconditional ? "unconditional" : "conditional";
}

const char* to_string(FreeParam param) {
    switch (param) {
        case FreeParam::DeltaC: return "delta_c";
        case FreeParam::SigmaTilde: return "sigma_tilde";
        case FreeParam::TB: return "t_b";
    }
    return "unknown";
}

void OptSpec::validate() const {
    if (free_params.empty()) throw Error(ErrorKind::Config, "optimize: no free parameters");
    if (bounds.size() != free_params.size() || seed_point.size() != free_params.size()) {
        throw Error(ErrorKind::Config, "optimize: bounds and seed must match the free parameters");
    }
    std::set<FreeParam> seen(free_params.begin(), free_params.end());
    if (seen.size() != free_params.size()) {
        throw Error(ErrorKind::Config, "optimize: free parameters must be distinct");
    }
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        if (!(bounds[k].lo < bounds[k].hi) || !(bounds[k].lo <= seed_point[k]) ||
            !(seed_point[k] <= bounds[k].hi)) {
            throw Error(ErrorKind::Config,
                        std::string("optimize: bounds must contain the seed for ") +
                            to_string(free_params[k]));
        }
    }
    if (budget < 20) throw Error(ErrorKind::Config, "optimize: budget must be >= 20");
}

OptSpec default_opt_spec(const GateConfig& base, Objective objective,
                         std::vector<FreeParam> free_params, int budget) {
    const auto opt = optimal_params(double(base.ensemble.N), base.ensemble.gamma_1d);
    OptSpec spec;
    spec.objective = objective;
    spec.free_params = std::move(free_params);
    spec.budget = budget;
    for (auto p : spec.free_params) {
        switch (p) {
            case FreeParam::DeltaC:
                spec.bounds.push_back({3.0 * opt.delta_c, opt.delta_c / 3.0});
                spec.seed_point.push_back(opt.delta_c);
                break;
            case FreeParam::SigmaTilde:
                spec.bounds.push_back({opt.sigma_tilde / 3.0, std::min(3.0 * opt.sigma_tilde, 0.45)});
                spec.seed_point.push_back(std::min(opt.sigma_tilde, 0.45));
                break;
            case FreeParam::TB:
                spec.bounds.push_back({0.0, 1.0});
                spec.seed_point.push_back(1.0);
                break;
        }
    }
    return spec;
}

GateConfig apply_point(const GateConfig& base, const OptSpec& spec, const std::vector<double>& point) {
    GateConfig c = base;
    for (std::size_t k = 0; k < spec.free_params.size(); ++k) {
        switch (spec.free_params[k]) {
            case FreeParam::DeltaC: c.ensemble.delta_c = point[k]; break;
            case FreeParam::SigmaTilde: c.sigma_tilde = point[k]; break;
            case FreeParam::TB:
                c.tb_mode = TbMode::Fixed;
                c.t_b_fixed = point[k];
                break;
        }
    }
    // Δc moves the resonance, so a pinned δ_res would be stale.
    if (std::find(spec.free_params.begin(), spec.free_params.end(), FreeParam::DeltaC) !=
        spec.free_params.end()) {
        c.delta_res.reset();
    }
    return c;
}

GateOptResult maximize(const OptSpec& spec, const GateConfig& base, const NumericSettings& settings) {
    spec.validate();
    auto objective = [&](const std::vector<double>& point) {
        try {
            const auto report = evaluate_gate(apply_point(base, spec, point), settings);
            return spec.objective == Objective::Unconditional ? report.F_cj : report.F_cj_cond;
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    NelderMeadOptions nm;
    nm.max_evaluations = spec.budget;
    nm.value_tol = settings.nm_value_tol;
    nm.point_rel_tol = settings.nm_point_rel_tol;
    nm.initial_step_fraction = settings.nm_initial_step_fraction;

    GateOptResult out;
    out.opt = nelder_mead_maximize(objective, spec.seed_point, spec.bounds, nm);
    out.best_config = apply_point(base, spec, out.opt.best_point);
    out.best_report = evaluate_gate(out.best_config, settings);
    return out;
}

namespace {

constexpr SweepParam kSweepParams[] = {SweepParam::N,        SweepParam::DeltaC, SweepParam::SigmaTilde,
                                       SweepParam::Omega0,   SweepParam::D,      SweepParam::GammaOneD,
                                       SweepParam::K0L1,     SweepParam::K0L2,   SweepParam::TbFixed};

}  // namespace

const char* to_string(SweepParam param) {
    switch (param) {
        case SweepParam::N: return "N";
        case SweepParam::DeltaC: return "delta_c";
        case SweepParam::SigmaTilde: return "sigma_tilde";
        case SweepParam::Omega0: return "omega0";
        case SweepParam::D: return "d";
        case SweepParam::GammaOneD: return "gamma_1d";
        case SweepParam::K0L1: return "k0_l1";
        case SweepParam::K0L2: return "k0_l2";
        case SweepParam::TbFixed: return "t_b";
    }
    return "unknown";
}

SweepParam sweep_param_from_string(const std::string& name) {
    for (auto p : kSweepParams)
        if (name == to_string(p)) return p;
    throw Error(ErrorKind::Config, "unknown sweep parameter '" + name + "'");
}

GateConfig sweep_point(SweepParam param, double value, const GateConfig& fixed, bool follow_optimal) {
    GateConfig c = fixed;
    switch (param) {
        case SweepParam::N:
            c.ensemble.N = std::lround(value);
            // Λ-type ensembles are built from two-atom cells.
            if (c.ensemble.scheme == Scheme::Lambda && c.ensemble.N % 2 != 0) ++c.ensemble.N;
            break;
        case SweepParam::DeltaC: c.ensemble.delta_c = value; break;
        case SweepParam::SigmaTilde: c.sigma_tilde = value; break;
        case SweepParam::Omega0: c.ensemble.omega0 = value; break;
        case SweepParam::D: c.ensemble.placement.d = value; break;
        case SweepParam::GammaOneD: c.ensemble.gamma_1d = value; break;
        case SweepParam::K0L1: c.geometry.k0_l1 = value; break;
        case SweepParam::K0L2: c.geometry.k0_l2 = value; break;
        case SweepParam::TbFixed:
            c.tb_mode = TbMode::Fixed;
            c.t_b_fixed = value;
            break;
    }
    if (follow_optimal) {
        const auto opt = optimal_params(double(c.ensemble.N), c.ensemble.gamma_1d);
        c.ensemble.delta_c = opt.delta_c;
        c.sigma_tilde = std::min(opt.sigma_tilde, 0.45);
    }
    // Only the arm phases and t_b leave the resonance unchanged.
    if (param != SweepParam::K0L1 && param != SweepParam::K0L2 && param != SweepParam::TbFixed) {
        c.delta_res.reset();
    }
    return c;
}

std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& grid,
                            const GateConfig& fixed, const SweepOptions& options,
                            const NumericSettings& settings) {
    std::vector<SweepRow> rows(grid.size());
    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.value = grid[i];
        try {
            row.config = sweep_point(param, grid[i], fixed, options.follow_optimal);
            row.report = evaluate_gate(row.config, settings);
        } catch (const Error& e) {
            row.error = std::string(to_string(e.kind())) + ": " + e.what();
        } catch (const std::exception& e) {
            row.error = std::string("error: ") + e.what();
        }
    });
    return rows;
}

}  // namespace sgate
