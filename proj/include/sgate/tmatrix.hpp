// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Multi-mode transfer-matrix algebra.
//
// A transfer matrix maps the field amplitudes on the left of a region to those
// on the right, E_R = T·E_L, where each side is the stacked vector
// (right-moving amplitudes E₊, left-moving amplitudes E₋), each of length n_m.
// n_m = 1 for the Λ-type scheme and n_m = 2 (σ₊, σ₋) for the dual-V scheme, so
// matrices are at most 4×4 and are stored inline without heap allocation.
#pragma once

#include <Eigen/Dense>

#include "sgate/settings.hpp"

namespace sgate {

using ComplexMat =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;
using ComplexVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;

// Right- and left-moving amplitudes on one side of a region.
struct FieldVec {
    ComplexVec plus;
    ComplexVec minus;
};

// Bloch angle of a periodic 2×2 cell: cos θ = tr(T_cell)/2.
//
// Branch convention (the only place it is fixed): θ = acos(tr/2) on the
// principal branch, negated if necessary so that Im θ ≤ 0 (decaying Bloch
// modes). cos(nθ) and sin(nθ)/sin θ are even in θ, so the matrix power itself
// does not depend on this choice.
struct BlochAngle {
    cplx theta;
};

BlochAngle bloch_angle(const ComplexMat& cell);

// T_a(β) = [[I−β, −β], [β, I+β]] in n_m×n_m blocks.
ComplexMat atom_matrix(const ComplexMat& beta);
ComplexMat atom_matrix(cplx beta);

// T_f(φ) = diag(e^{iφ} I, e^{−iφ} I) for the propagation phase φ = k₀d.
ComplexMat free_matrix(cplx phase, int n_modes);

// a·b: `b` acts first (it describes the region to the left of `a`).
ComplexMat compose(const ComplexMat& a, const ComplexMat& b);

struct PowerResult {
    ComplexMat matrix;
    BlochAngle angle;
    bool fallback = false;  // true when repeated multiplication was used
};

// T^n for a 2×2 cell via the Chebyshev closed form
//   T^n = cos(nθ) I + (sin(nθ)/sin θ)(T − cos θ I),
// which equals cos(nθ) I + i sin(nθ) A with A the traceless generator. Falls
// back to repeated multiplication when |sin θ| is below the settings floor.
PowerResult cell_power(const ComplexMat& cell, long n,
                       const NumericSettings& settings = {});

// Same for a unimodular cell whose Bloch angle the caller already knows more
// accurately than acos(tr/2) can deliver: when tr/2 is within ε of ±1,
// acos loses half the digits, and n·θ multiplies that loss.
PowerResult cell_power(const ComplexMat& cell, long n, const BlochAngle& angle,
                       const NumericSettings& settings = {});

// Scattering coefficients for unit incidence from either side; each entry is
// an n_m×n_m matrix (column = incident mode, row = outgoing mode).
struct ScatterCoeffs {
    ComplexMat r_plus;   // reflection for incidence from the left
    ComplexMat t_plus;   // transmission for incidence from the left
    ComplexMat r_minus;  // reflection for incidence from the right
    ComplexMat t_minus;  // transmission for incidence from the right
};

// Left incidence:  r₊ = −T₂₂⁻¹T₂₁, t₊ = T₁₁ − T₁₂T₂₂⁻¹T₂₁.
// Right incidence: t₋ = T₂₂⁻¹,     r₋ = T₁₂T₂₂⁻¹.
// Throws ErrorKind::IllConditioned (detail = reciprocal condition estimate)
// when T₂₂ is numerically singular.
ScatterCoeffs extract_scattering(const ComplexMat& t_e,
                                 const NumericSettings& settings = {});

}  // namespace sgate
