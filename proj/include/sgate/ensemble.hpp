// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Physical ensembles of Λ-type and dual-V atoms coupled to a waveguide: atom
// scattering parameters β, ensemble transfer matrices, spectra with and
// without a stored photon, resonance location/width, and the large-N
// closed-form approximations used as a cross-check layer.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgate/tmatrix.hpp"

namespace sgate {

enum class Scheme { Lambda, DualV };

struct Placement {
    enum class Kind { Regular, RandomUniform };
    Kind kind = Kind::Regular;
    double d = 0.5;          // (mean) interatomic distance, units of π/k₀
    std::uint64_t seed = 0;  // RandomUniform only
};

struct EnsembleSpec {
    long N = 10000;
    Scheme scheme = Scheme::Lambda;
    double gamma_1d = 0.05;
    double omega0 = 10.0;
    double delta_c = -10.0;
    Placement placement{};
    // Λ-type: unit-cell index (two atoms per cell); dual-V: atom index.
    std::optional<long> stored_site;

    double gamma_prime() const { return 1.0 - gamma_1d; }
    int n_modes() const { return scheme == Scheme::Lambda ? 1 : 2; }
    // Number of sites a photon can be stored at (cells for Λ, atoms for dual-V).
    long site_count() const { return scheme == Scheme::Lambda ? N / 2 : N; }
    // Ensemble length L in units of π/k₀.
    double length() const { return placement.d * static_cast<double>(N); }
    // Throws ErrorKind::Config when any invariant is violated.
    void validate() const;
};

// Single-mode scattering coefficients at one two-photon detuning. For dual-V
// ensembles these are the channel used by the gate: a σ₊ photon incident from
// the left is reflected into σ₋ and transmitted as σ₊ (and mirrored for
// incidence from the right). Cross-polarised leakage only reduces |R|.
struct ScatterResult {
    double delta = 0.0;
    cplx r_plus{0.0, 0.0};
    cplx r_minus{0.0, 0.0};
    cplx t_plus{1.0, 0.0};
    cplx t_minus{1.0, 0.0};
    bool stored = false;
    std::optional<long> stored_site;
};

// Λ-type atom at an antinode of the standing-wave drive:
// β₃ = Γ1D δ / ((Γ' − 2iΔ)δ + 2i|Ω₀|²), Δ = Δc + δ.
cplx beta_lambda_antinode(double delta, double delta_c, double omega0,
                          double gamma_1d, double gamma_prime);
// Λ-type atom at a node (effective two-level atom): β₂ = Γ1D/(Γ' − 2iΔ).
cplx beta_lambda_node(double delta, double delta_c, double gamma_1d, double gamma_prime);
// Atom holding the stored photon (resonant two-level): β₂,de = Γ1D/Γ'.
cplx beta_stored(double gamma_1d, double gamma_prime);

enum class DualVState { Ground, Stored };

// β_j = −(I + S)⁻¹ S for a dual-V atom at position z (units of π/k₀).
ComplexMat dual_v_beta(double z, DualVState state, double delta, double delta_c,
                       double omega0, double gamma_1d, double gamma_prime);

// Atom positions in units of π/k₀ (sorted ascending).
std::vector<double> atom_positions(const EnsembleSpec& spec);

// Λ-type unit cell T_f(π/2)·T_a(β₂)·T_f(π/2)·T_a(β₃); the antinode atom sits
// on the left of the cell. With `stored_at_antinode` the antinode atom is
// replaced by the stored-photon atom; with `stored_at_node` the node atom is.
ComplexMat lambda_cell(const EnsembleSpec& spec, double delta, bool stored_at_antinode = false,
                       bool stored_at_node = false);

// Bloch angle of the (photon-free) Λ-type cell from cos θ = −1 − 2β₂β₃.
BlochAngle lambda_bloch_angle(const EnsembleSpec& spec, double delta);

// Full ensemble transfer matrix (stored photon taken from spec.stored_site).
ComplexMat ensemble_matrix(const EnsembleSpec& spec, double delta,
                           const NumericSettings& settings = {});

// Scattering at one detuning (stored photon taken from spec.stored_site).
ScatterResult scatter(const EnsembleSpec& spec, double delta,
                      const NumericSettings& settings = {});

// Single-mode channel reduction of full multi-mode coefficients.
ScatterResult reduce_channel(const ScatterCoeffs& coeffs, double delta);

struct SpectrumPoint {
    ScatterResult unstored;
    std::optional<ScatterResult> stored;
    std::optional<std::string> error;  // per-point failure, not fatal
};

// Evaluates the grid (sorted ascending) without a stored photon and, when
// `stored_site` is given, also with a photon at that site.
std::vector<SpectrumPoint> spectrum(const EnsembleSpec& spec, const std::vector<double>& grid,
                                    std::optional<long> stored_site = std::nullopt,
                                    int threads = 1, const NumericSettings& settings = {});

// Scattering with a photon stored at every site, O(N) via prefix/suffix
// products (dual-V) or closed-form powers (Λ-type). `node` selects the node
// atom of each Λ cell instead of the antinode atom.
std::vector<ScatterResult> stored_scatter_all_sites(const EnsembleSpec& spec, double delta,
                                                    bool node = false,
                                                    const NumericSettings& settings = {});

// Analytic seed δ_res ≈ −4π²Δc|Ω₀|²/(Γ1D²N²).
double resonance_seed(const EnsembleSpec& spec);

// Transmission maximum of |t₀(δ)|² nearest δ = 0 on the side opposite to Δc.
double find_resonance(const EnsembleSpec& spec, const NumericSettings& settings = {});

// w = 32√2 π² Δc² |Ω₀|² / (Γ1D³ N³).
double resonance_width_analytic(const EnsembleSpec& spec);
// w = Re √(4 / ∂²r₀) at δ_res from central differences.
double resonance_width_numeric(const EnsembleSpec& spec, double delta_res,
                               const NumericSettings& settings = {});

struct AnalyticCoeffs {
    cplx r0, t0, r1, t1;
};

// Large-N approximations for the Λ-type ensemble at δ_res. t₀ and t₁ carry the
// (−1)^{n−1} propagation sign; `omega_terms` adds the |Ω₀|²-dependent
// corrections (stated at z̃ = 1/2 only).
AnalyticCoeffs analytic_coeffs(const EnsembleSpec& spec, double z_tilde = 0.5,
                               bool omega_terms = false);

struct MagneticSplittings {
    double delta_a_mhz;
    double delta_mhz;
    double adjacent_mhz;
};
// Linear-Zeeman splittings for B_z in gauss, as ordinary (not angular)
// frequencies in MHz, using μ_B/h = 1.4 MHz/G.
MagneticSplittings magnetic_splittings(double b_z_gauss);

struct DualColorCheck {
    bool separation_small;   // |Δc₊ − Δc₋| < |Δc₊ + Δc₋|/2
    bool separation_large;   // |Δc₊ − Δc₋| ≳ |Ω₀|²/|Δc₊ + Δc₋|
    double margin_small;     // |Δc₊ + Δc₋|/2 − |Δc₊ − Δc₋|
    double margin_large;     // |Δc₊ − Δc₋| − |Ω₀|²/|Δc₊ + Δc₋|
};
DualColorCheck dual_color_check(double delta_c_plus, double delta_c_minus, double omega0);

}  // namespace sgate
