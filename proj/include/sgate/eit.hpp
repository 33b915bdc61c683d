// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// EIT storage and retrieval of photon A in three models:
//   - the dispersion relation (analytic Gaussian propagation),
//   - the discretised continuum storage/retrieval kernels,
//   - the fully discrete atomic equations with the waveguide field eliminated.
//
// Conventions: storage is symmetric (the input is split 1/√2 onto both ends of
// the ensemble), the drive is uniform with real Rabi frequency Ω, and all
// detunings are zero. Positions inside the continuum models are z̃ = z/L.
#pragma once

#include <vector>

#include "sgate/ensemble.hpp"

namespace sgate {

struct EitParams {
    long N = 10000;
    double gamma_1d = 0.05;
    double omega = 1.0;         // storage/retrieval Rabi frequency (real)
    double sigma_tilde = 0.1;   // target stored width σ/L

    double gamma_prime() const { return 1.0 - gamma_1d; }
    // Optical-depth parameter b = NΓ1D/2.
    double b() const { return 0.5 * static_cast<double>(N) * gamma_1d; }
    // Group velocity in units of L per 1/Γ: ṽ_g = |Ω|²/b.
    double v_g_tilde() const { return omega * omega / b(); }
    // Dispersion coefficient in units of L²: α̃ = −i·Γ'|Ω|²/b² (purely imaginary).
    cplx alpha_tilde() const;
    // Throws ErrorKind::Config on invalid values.
    void validate() const;
};

struct WavePacket {
    double t0 = 0.0;   // first grid time
    double dt = 0.0;   // uniform spacing
    std::vector<cplx> amplitudes;
    double sigma_in = 0.0;  // Gaussian inputs only
    double mu_in = 0.0;

    double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    // ∫|φ|² dt by the trapezoidal rule.
    double norm2() const;
};

// ⟨a|b⟩ = ∫ a* b dt (trapezoidal). Both packets must share the same grid.
cplx overlap(const WavePacket& a, const WavePacket& b);

// Stored spin wave. `modes` uses the 2N continuum layout: element j < N holds
// the e^{+ik₀z} component S₊ at z̃ = j/N and element N + m holds the e^{−ik₀z}
// component S₋ at z̃ = m/N, both with 1/√N weights so that Σ|·|² is the stored
// efficiency. `atoms` holds per-atom amplitudes for the discrete model.
struct SpinWave {
    std::vector<cplx> modes;
    std::vector<cplx> atoms;

    double norm2() const;
};

// η_EIT = (1 + Γ'/(NΓ1Dσ̃²))^{−1/2}, and its first-order form.
double eta_eit_analytic(const EitParams& params);
double eta_eit_first_order(const EitParams& params);

// Input Gaussian whose stored width is σ̃: σ_in = (σ̃/ṽ_g)/√(1 + Γ'/(2NΓ1Dσ̃²)),
// centred at μ_in = 4σ_in, on the grid [0, μ_in + 1/(2ṽ_g)] with spacing `dt`
// (chosen automatically when dt ≤ 0). Unit norm on its grid.
WavePacket gaussian_input(const EitParams& params, double dt = 0.0,
                          const NumericSettings& settings = {});

// Analytic Gaussian spin wave from the dispersion relation after the input has
// propagated to the middle of the ensemble (t = 1/(2ṽ_g)). Fills `modes`.
SpinWave store_dispersion(const WavePacket& input, const EitParams& params);
// Squared norm of the dispersion-relation spin wave: |1 + iα̃t/(2σ̃_in²)|^{−1/2}
// with t measured from entry into the medium.
double dispersion_norm2(const EitParams& params, double sigma_in_tilde, double t);

// Storage kernel K_s(z̃, t) for Δ₀ = δ₀ = 0. The Gaussian asymptotic form is
// used when x = 2|Ω|√(t·b·z̃)/γ ≥ settings.kernel_asymptotic_min_x (γ = Γ'/2),
// the exact form with exponentially scaled I₀ otherwise.
cplx storage_kernel(double z_tilde, double t, const EitParams& params,
                    const NumericSettings& settings = {});
// Retrieval kernel K_r(z̃, t) = K_s(1 − z̃, t) for real Ω.
cplx retrieval_kernel(double z_tilde, double t, const EitParams& params,
                      const NumericSettings& settings = {});
// Exact and asymptotic forms separately (for cross-validation).
cplx storage_kernel_exact(double z_tilde, double t, const EitParams& params);
cplx storage_kernel_asymptotic(double z_tilde, double t, const EitParams& params);

// Kernel-model storage: stops at T = μ_in + 1/(2ṽ_g).
SpinWave store_kernel_model(const WavePacket& input, const EitParams& params,
                            const NumericSettings& settings = {});
// Kernel-model retrieval over t ∈ [0, 1/ṽ_g]; output (Φ₊(L) + Φ₋(0))/√2.
WavePacket retrieve_kernel_model(const SpinWave& spin, const EitParams& params,
                                 const NumericSettings& settings = {});
// Time grid used by retrieve_kernel_model (so overlaps can share it).
WavePacket retrieval_grid(const EitParams& params, const NumericSettings& settings = {});

// Multiplies a kernel-layout spin wave by a per-atom factor (length N; the
// factor for atom j applies to both S₊ and S₋ at that atom) and the per-atom
// amplitudes, when present, likewise.
SpinWave apply_site_factor(const SpinWave& spin, const std::vector<cplx>& factor);

// Per-atom amplitudes s_j = S₊,j e^{ik₀z_j} + S₋,j e^{−ik₀z_j} of a
// kernel-layout spin wave at the given positions (units of π/k₀).
std::vector<cplx> project_to_atoms(const SpinWave& spin, const std::vector<double>& positions);

// Discrete model with the waveguide field eliminated (fixed-step RK4).
struct DiscreteModel {
    EitParams params;
    std::vector<double> positions;  // units of π/k₀, one per atom
};
DiscreteModel make_discrete_model(const EitParams& params, const Placement& placement);

// Stores `input` (split 1/√2 onto both ends) until T = μ_in + 1/(2ṽ_g).
// Fills `atoms`. Throws ErrorKind::Config when N exceeds the configured cap.
SpinWave store_discrete(const WavePacket& input, const DiscreteModel& model,
                        const NumericSettings& settings = {});
// Retrieves from per-atom amplitudes (projected from `modes` if `atoms` is
// empty) with zero input until t = 1/ṽ_g.
WavePacket retrieve_discrete(const SpinWave& spin, const DiscreteModel& model,
                             const NumericSettings& settings = {});

// Bookkeeping of the discrete model during storage, for conservation checks.
struct DiscreteLedger {
    double input_energy = 0.0;   // ∫(|Φ₊in|² + |Φ₋in|²) dt up to the stop time
    double output_energy = 0.0;  // ∫(|Φ₊(L)|² + |Φ₋(0)|²) dt
    double atomic_energy = 0.0;  // Σ(|P_j|² + |S_j|²) at the stop time
};
SpinWave store_discrete_with_ledger(const WavePacket& input, const DiscreteModel& model,
                                    DiscreteLedger& ledger,
                                    const NumericSettings& settings = {});

// |⟨a|b⟩|²/(‖a‖²‖b‖²) for equally sized amplitude vectors.
double profile_overlap(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace sgate
