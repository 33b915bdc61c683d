// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Derivative-free maximisation: golden-section search in one dimension and a
// bounded Nelder–Mead simplex in several; on top of these, maximisation of the
// gate fidelities over (Δc, σ̃, t_b) seeded at the analytic optimum, and a
// parallel one-parameter sweep of the gate pipeline.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgate/fidelity.hpp"
#include "sgate/settings.hpp"

namespace sgate {

struct GoldenResult {
    double x;
    double value;
    int evaluations;
};

// Maximises a unimodal f on [a, b] until the bracket is narrower than `tol`.
GoldenResult golden_section_maximize(const std::function<double(double)>& f, double a,
                                     double b, double tol);

struct Bound {
    double lo;
    double hi;
};

struct OptTraceEntry {
    std::vector<double> point;
    double value;
};

struct OptResult {
    std::vector<double> best_point;
    double best_value;
    std::vector<OptTraceEntry> trace;  // every objective evaluation, in order
    int iterations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    int max_evaluations = 200;
    double value_tol = 1e-6;
    double point_rel_tol = 1e-4;
    double initial_step_fraction = 0.1;  // of each bound span
};

// Thrown when every objective evaluation is non-finite; carries the trace.
class OptimizationFailure : public Error {
public:
    OptimizationFailure(const std::string& what, std::vector<OptTraceEntry> trace)
        : Error(ErrorKind::OptimizationFailed, what), trace_(std::move(trace)) {}
    const std::vector<OptTraceEntry>& trace() const { return trace_; }

private:
    std::vector<OptTraceEntry> trace_;
};

// Maximises f over the box `bounds` starting from `seed` (which must lie inside
// the box). Points proposed outside the box are clamped onto it. Non-finite
// objective values are treated as −∞; if every evaluation is non-finite an
// OptimizationFailure is thrown. The result is never worse than
// the seed, and the run is deterministic for a given seed and budget.
OptResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& seed,
                               const std::vector<Bound>& bounds,
                               const NelderMeadOptions& options = {});

// ------------------------------------------------------------ gate level ---

enum class Objective { Unconditional, Conditional };
enum class FreeParam { DeltaC, SigmaTilde, TB };
const char* to_string(Objective objective);
const char* to_string(FreeParam param);

struct OptSpec {
    Objective objective = Objective::Unconditional;
    std::vector<FreeParam> free_params{FreeParam::DeltaC, FreeParam::SigmaTilde};
    std::vector<Bound> bounds;        // one per free parameter
    std::vector<double> seed_point;   // one per free parameter
    int budget = 60;                  // maximum objective evaluations

    // Throws ErrorKind::Config unless sizes match, bounds contain the seed,
    // parameters are distinct and budget ≥ 20.
    void validate() const;
};

// Seed from optimal_params(N, Γ1D) (t_b seeded at 1), bounds Δc ∈ [3Δc*, Δc*/3],
// σ̃ ∈ [σ̃*/3, min(3σ̃*, 0.45)], t_b ∈ [0, 1].
OptSpec default_opt_spec(const GateConfig& base, Objective objective,
                         std::vector<FreeParam> free_params, int budget = 60);

// Applies a point (ordered as spec.free_params) to a copy of `base`. A free
// t_b switches the configuration to TbMode::Fixed.
GateConfig apply_point(const GateConfig& base, const OptSpec& spec, const std::vector<double>& point);

struct GateOptResult {
    OptResult opt;
    GateConfig best_config;
    FidelityReport best_report;
};

// Nelder–Mead over the free parameters. Failed pipeline evaluations count as
// non-finite objective values.
GateOptResult maximize(const OptSpec& spec, const GateConfig& base,
                       const NumericSettings& settings = {});

enum class SweepParam { N, DeltaC, SigmaTilde, Omega0, D, GammaOneD, K0L1, K0L2, TbFixed };
const char* to_string(SweepParam param);
// Parses the names produced by to_string; throws ErrorKind::Config otherwise.
SweepParam sweep_param_from_string(const std::string& name);

struct SweepOptions {
    int threads = 1;
    // Re-seed Δc and σ̃ from optimal_params at each point (for N / Γ1D grids).
    bool follow_optimal = false;
};

struct SweepRow {
    double value = 0.0;
    GateConfig config;
    std::optional<FidelityReport> report;
    std::optional<std::string> error;  // "<kind>: <message>" on failure
};

// Evaluates the gate at every grid value of `param` (others from `fixed`).
// Rows come back in grid order; per-point failures are recorded, not thrown.
std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& grid,
                            const GateConfig& fixed, const SweepOptions& options = {},
                            const NumericSettings& settings = {});

// Configuration at one sweep point (exposed for tests and the CLI). N values
// are rounded to the nearest integer, and up to even for Λ-type ensembles.
GateConfig sweep_point(SweepParam param, double value, const GateConfig& fixed, bool follow_optimal);

}  // namespace sgate
