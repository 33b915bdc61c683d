// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Gate figures of merit: the Choi–Jamiolkowski fidelity F_CJ, the success
// probability P_suc and F_CJ,cond = F_CJ/P_suc, assembled from an EIT round
// trip of photon A and the Sagnac reflections seen by photon B; plus the
// large-N closed forms and the error budgets (bandwidth, gate time,
// drive-induced decay, π-pulse imperfection, Sagnac misalignment).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgate/eit.hpp"
#include "sgate/sagnac.hpp"

namespace sgate {

// ------------------------------------------------------------ closed forms ---

enum class TbMode { One, MatchR0, Optimized, Fixed };
const char* to_string(TbMode mode);

struct AnalyticFidelities {
    double f_cj;
    double f_cj_cond;
};
// t_b = 1: 1 − πΓ'/(Γ1D√N) and 1 − π²Γ'²/(4Γ1D²N);
// t_b = R₀: 1 − 2πΓ'/(Γ1D√N) and 1 − 11π³(Γ1D+Γ')Γ'/(16Γ1D²N^{3/2}).
// Only TbMode::One and TbMode::MatchR0 are defined.
AnalyticFidelities analytic_fidelities(double n, double gamma_1d, TbMode mode);

struct OptimalParams {
    double delta_c;      // negative root of Δc² = Γ1D²N^{3/2}/(8π)
    double sigma_tilde;  // σ̃² = π^{−3/2}N^{−1/4}√(Γ'/(Γ1D+Γ'))
};
OptimalParams optimal_params(double n, double gamma_1d);

// Optimal-parameter F_CJ with the N^{−3/4} term and the bandwidth error
// Γ1D²N³σ_B²/(16|Ω₀|⁴π²).
double bandwidth_corrected_f_cj(double n, double gamma_1d, double omega0, double sigma_b);
// σ_B at which the bandwidth error equals πΓ'/(Γ1D√N).
double scattering_sigma_b(double n, double gamma_1d, double omega0);

struct GateTimeBudget {
    double t_eit_pass;        // L/v_g = NΓ1D/(2|Ω₀|²)
    double t_eit_round_trip;  // storage plus retrieval, 2·L/v_g
    double t_pi_min;          // 1/|Δc| at the optimal Δc
    double t_scatter;         // 1/σ_B
    std::optional<double> loss_hfs;  // Γ1D^{3/2}√Γ'N^{7/4}/(4π^{3/2}Δ_hfs²)
};
GateTimeBudget gate_time_budget(double n, double gamma_1d, double omega0,
                                std::optional<double> delta_hfs = std::nullopt);

struct EffectiveDecay {
    double gamma1_eff;
    double gamma2_eff;
};
// Γ_k,eff = Γ_k|Ω₀|²/(Δ_hfs² + Γ'²/4).
EffectiveDecay effective_decay_rates(double omega0, double delta_hfs, double gamma1, double gamma2,
                                     double gamma_prime = 0.95);

// cos⁴φ multiplying F_CJ and P_suc for a π pulse short by φ (|φ| < π/2).
double pi_pulse_fidelity_factor(double varphi);

// Truncated small-error expansion of F_CJ including the (k₀l₁)² bracket.
struct MisalignmentInputs {
    double n = 10000;
    double gamma_1d = 0.05;
    double delta_c = -10.0;
    double omega0 = 1.0;
    double sigma_tilde = 0.13;
    double eps_b = 0.0;
    double k0_l1 = 0.0;
};
double misalignment_error(const MisalignmentInputs& in);
// Coefficient of (k₀l₁)² in the expansion above.
double misalignment_coefficient(const MisalignmentInputs& in);
// Short form −(1/2 − 5πΓ'/(8Γ1D√N)) at the optimal Δc.
double misalignment_coefficient_short(double n, double gamma_1d);

// ------------------------------------------------------- photon B spectrum ---

struct PhotonBSpectrum {
    enum class Shape { DiracDelta, Gaussian };
    double center = 0.0;   // δ_res
    double sigma_b = 0.0;  // spectral width (|φ_B|² standard deviation)
    Shape shape = Shape::DiracDelta;
};

struct SpectralNode {
    double delta;
    double weight;  // sums to one
};
// Gauss–Legendre nodes on center ± half_width_sigmas·σ_B weighted by the
// normalised |φ_B|²; a single unit node for DiracDelta.
std::vector<SpectralNode> spectral_nodes(const PhotonBSpectrum& spectrum,
                                         const NumericSettings& settings = {});

// ------------------------------------------------------------- assembly ---

// Figures of merit from already computed overlaps.
struct GateInputs {
    double eta = 1.0;         // η_EIT = ‖φ_out,0‖²
    cplx r0_mean{1.0, 0.0};   // ∫R₀|φ_B|²
    double r0_abs2_mean = 1.0;  // ∫|R₀|²|φ_B|²
    cplx r11{-1.0, 0.0};      // ⟨φ_out,0|φ_out,1⟩/η averaged over φ_B
    double r12 = 1.0;         // ‖φ_out,1‖²/η averaged over φ_B
};
// F_CJ = (η/16)|2t_b + R̄₀ − R₁,₁|².
double f_cj(const GateInputs& in, cplx t_b);
// P_suc = (η/4)(2|t_b|² + ⟨|R₀|²⟩ + R₁,₂).
double p_suc(const GateInputs& in, cplx t_b);
// t_b maximising F_CJ/P_suc (closed form, |t_b| clamped to 1).
cplx optimal_t_b(const GateInputs& in);

enum class StorageModel { Kernel, Discrete, Dispersion };
const char* to_string(StorageModel model);

struct GateConfig {
    EnsembleSpec ensemble;            // scattering ensemble (Δc, Ω₀, scheme, placement)
    double sigma_tilde = 0.13;        // stored spin-wave width
    std::optional<double> eit_omega;  // storage/retrieval drive; defaults to Ω₀
    SagnacGeometry geometry{};
    TbMode tb_mode = TbMode::One;
    double t_b_fixed = 1.0;           // used by TbMode::Fixed
    PhotonBSpectrum::Shape photon_b_shape = PhotonBSpectrum::Shape::DiracDelta;
    double sigma_b = 0.0;
    StorageModel storage = StorageModel::Kernel;
    // Λ-type only: use the antinode value R₁ of each cell for both atoms.
    bool odd_site_adjustment = true;
    // Random placement: number of seeded realisations (seeds base+0..count−1).
    int realizations = 1;
    // Optional resonance override (otherwise found numerically).
    std::optional<double> delta_res;
};

struct FidelityReport {
    double eta_eit = 0.0;
    cplx R0{0.0, 0.0};   // R₀ at δ_res
    cplx R0_mean{0.0, 0.0};
    double R0_abs2_mean = 0.0;
    cplx R11{0.0, 0.0};
    double R12 = 0.0;
    cplx t_b{1.0, 0.0};
    double F_cj = 0.0;
    double P_suc = 0.0;
    double F_cj_cond = 0.0;
    double delta_res = 0.0;
    double sigma_tilde = 0.0;
    double delta_c = 0.0;
    double omega0 = 0.0;
    long N = 0;
    double gamma_1d = 0.0;
    SagnacGeometry geometry{};
    std::vector<std::string> flags;  // corrections applied
    std::vector<GateInputs> inputs;  // one per realisation
};

// Photon-A round trip without a stored-photon interaction (φ_out,0) and with
// the per-atom factor R₁,j inserted between storage and retrieval (φ_out,1).
struct RoundTrip {
    WavePacket phi0;
    SpinWave stored;
    EitParams eit;
    std::optional<DiscreteModel> discrete;
};
RoundTrip phi_out_0(const GateConfig& config, const NumericSettings& settings = {});
WavePacket phi_out_1(const RoundTrip& trip, const std::vector<cplx>& r1_per_atom,
                     const NumericSettings& settings = {});

// Per-atom R₁ (length N) from per-site values at detuning δ, honouring the
// Λ-type odd-site adjustment.
std::vector<cplx> r1_per_atom(const EnsembleSpec& spec, const SagnacGeometry& geom, double delta,
                              bool odd_site_adjustment, const NumericSettings& settings = {});

// Full gate evaluation (averaged over realisations for random placement).
FidelityReport evaluate_gate(const GateConfig& config, const NumericSettings& settings = {});
// Re-evaluates F_CJ, P_suc and F_CJ,cond of a report for another t_b choice
// (the overlaps do not depend on t_b).
FidelityReport with_t_b(const FidelityReport& report, TbMode mode, double t_b_fixed = 1.0);

}  // namespace sgate
