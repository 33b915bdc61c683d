// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Numeric settings and the error type shared by every module.
//
// Units used throughout the library:
//   - frequencies and rates in units of the total decay rate Γ = Γ1D + Γ' = 1,
//   - times in units of 1/Γ,
//   - positions in units of π/k₀, so that the propagation phase is k₀z = π·z.
#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sgate {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Every tolerance and algorithmic constant that the numerics depend on lives
// here, so a run can be reproduced by echoing a single record.
struct NumericSettings {
    // cell_power falls back to repeated multiplication below this |sin θ|.
    double sin_theta_floor = 1e-8;
    // Reciprocal condition estimate below which a T₂₂ block counts as singular.
    double min_rcond = 1e-14;
    // Resonance search: scan step = seed/scan_divisions over [0, scan_span·seed].
    int scan_divisions = 50;
    double scan_span = 4.0;
    double bracket_retry_factor = 10.0;
    double golden_tol = 1e-10;
    // Kernel model: switch from the asymptotic to the exact Bessel form below x.
    double kernel_asymptotic_min_x = 10.0;
    // Kernel model time grid resolution (points per kernel/pulse width) and cap.
    int kernel_points_per_width = 20;
    int kernel_min_time_points = 400;
    int kernel_max_time_points = 20000;
    // Discrete ODE model.
    int discrete_max_atoms = 4000;
    int discrete_retry_budget = 4;
    // Photon-B spectral quadrature.
    int spectrum_nodes = 64;
    double spectrum_half_width_sigmas = 5.0;
    // Nelder–Mead.
    double nm_value_tol = 1e-6;
    double nm_point_rel_tol = 1e-4;
    double nm_initial_step_fraction = 0.1;
};

enum class ErrorKind {
    Dimension,
    IllConditioned,
    Pole,
    ResonanceNotFound,
    Resolution,
    Integration,
    OptimizationFailed,
    Config,
};

const char* to_string(ErrorKind kind);

// Library-wide exception. `kind` lets callers map failures to exit codes and
// lets per-point sweeps record a machine-readable marker instead of aborting.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double detail = 0.0)
        : std::runtime_error(what), kind_(kind), detail_(detail) {}

    ErrorKind kind() const { return kind_; }
    // Auxiliary number attached to the failure (e.g. the condition estimate).
    double detail() const { return detail_; }

private:
    ErrorKind kind_;
    double detail_;
};

}  // namespace sgate
