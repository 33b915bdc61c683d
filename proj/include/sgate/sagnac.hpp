// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Sagnac interferometer around the ensemble: combines the two-sided ensemble
// scattering coefficients into the reflection coefficients R₀ (no stored
// photon) and R₁ (photon stored at a given site) seen by photon B.
#pragma once

#include <vector>

#include "sgate/ensemble.hpp"

namespace sgate {

struct SagnacGeometry {
    double k0_l1 = 0.0;  // arm phases, radians
    double k0_l2 = 0.0;
};

// Phase k₀d_extra of the free propagation appended to the right of the
// ensemble so that the round trip is an odd number of half wavelengths,
// e^{ik₀d_extra} = e^{−ik₀L − iπ}; returned in [0, 2π).
double d_extra_phase(const EnsembleSpec& spec);

// Applies the d_extra propagation to single-mode coefficients:
// r₊ unchanged, r₋ gains e^{2ik₀d_extra}, t₊ and t₋ gain e^{ik₀d_extra}.
ScatterResult apply_d_extra(const ScatterResult& s, double d_extra);

// M_Sagnac = H·M_f·S·M_f·H with H the Hadamard, M_f = diag(e^{ik₀l₁}, e^{ik₀l₂})
// and S = [[r₊, t₊], [t₋, r₋]]. No d_extra correction is applied here.
ComplexMat sagnac_matrix(const ScatterResult& s, const SagnacGeometry& geom);

// R = −½(r₊e^{2ik₀l₁} − (t₊ + t₋)e^{ik₀(l₁+l₂)} + r₋e^{2ik₀l₂}) = −M₂₂.
cplx sagnac_reflection(const ScatterResult& s, const SagnacGeometry& geom);

struct GateReflections {
    cplx R0;
    // R₁ per storage site (Λ-type: per unit cell; dual-V: per atom).
    std::vector<cplx> R1;
};

// R₀ and R₁ at detuning δ including the d_extra correction. R₁ is evaluated
// for every site when `with_r1` is set.
GateReflections gate_reflections(const EnsembleSpec& spec, const SagnacGeometry& geom,
                                 double delta, bool with_r1 = true,
                                 const NumericSettings& settings = {});

// R₁,s(z̃) = (R₁(z̃) + R₁(1 − z̃))/2 for R₁ sampled on sites z̃ = k/M; the
// mirror value is linearly interpolated between neighbouring sites.
cplx symmetrized_R1(const std::vector<cplx>& R1, double z_tilde);

}  // namespace sgate
