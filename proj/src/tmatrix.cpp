// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/tmatrix.hpp"

#include <cmath>
#include <string>

namespace sgate {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::IllConditioned: return "ill-conditioned";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::ResonanceNotFound: return "resonance-not-found";
        case ErrorKind::Resolution: return "resolution";
        case ErrorKind::Integration: return "integration";
        case ErrorKind::OptimizationFailed: return "optimization-failed";
        case ErrorKind::Config: return "config";
    }
    return "unknown";
}

namespace {

void require_finite(const ComplexMat& m, const char* where) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::IllConditioned,
                    std::string(where) + ": result contains non-finite entries");
    }
}

}  // namespace

BlochAngle bloch_angle(const ComplexMat& cell) {
    if (cell.rows() != 2 || cell.cols() != 2) {
        throw Error(ErrorKind::Dimension, "bloch_angle: cell must be 2x2");
    }
    cplx theta = std::acos(0.5 * cell.trace());
    if (theta.imag() > 0.0) theta = -theta;
    return {theta};
}

ComplexMat atom_matrix(const ComplexMat& beta) {
    if (beta.rows() != beta.cols() || beta.rows() < 1 || beta.rows() > 2) {
        throw Error(ErrorKind::Dimension, "atom_matrix: beta must be square with n_m <= 2");
    }
    if (!beta.allFinite()) {
        throw Error(ErrorKind::Pole, "atom_matrix: beta is not finite");
    }
    const Eigen::Index m = beta.rows();
    ComplexMat id = ComplexMat::Identity(m, m);
    ComplexMat t(2 * m, 2 * m);
    t.topLeftCorner(m, m) = id - beta;
    t.topRightCorner(m, m) = -beta;
    t.bottomLeftCorner(m, m) = beta;
    t.bottomRightCorner(m, m) = id + beta;
    return t;
}

ComplexMat atom_matrix(cplx beta) {
    ComplexMat b(1, 1);
    b(0, 0) = beta;
    return atom_matrix(b);
}

ComplexMat free_matrix(cplx phase, int n_modes) {
    if (n_modes < 1 || n_modes > 2) {
        throw Error(ErrorKind::Dimension, "free_matrix: n_modes must be 1 or 2");
    }
    const cplx forward = std::exp(I * phase);
    const cplx backward = std::exp(-I * phase);
    ComplexMat t = ComplexMat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        t(k, k) = forward;
        t(n_modes + k, n_modes + k) = backward;
    }
    return t;
}

ComplexMat compose(const ComplexMat& a, const ComplexMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw Error(ErrorKind::Dimension, "compose: dimension mismatch");
    }
    return a * b;
}

namespace {

void check_power_args(const ComplexMat& cell, long n) {
    if (cell.rows() != 2 || cell.cols() != 2) {
        throw Error(ErrorKind::Dimension, "cell_power: cell must be 2x2");
    }
    if (n < 0) {
        throw Error(ErrorKind::Dimension, "cell_power: n must be non-negative");
    }
}

// Chebyshev power of a unimodular cell with Bloch angle θ (cos θ = tr/2).
PowerResult unimodular_power(const ComplexMat& unit, long n, cplx theta,
                             const NumericSettings& settings) {
    PowerResult out;
    out.angle = {theta.imag() > 0.0 ? -theta : theta};
    if (n == 0) {
        out.matrix = ComplexMat::Identity(2, 2);
        return out;
    }
    const cplx c = std::cos(theta);
    const cplx s = std::sin(theta);
    if (std::abs(s) < settings.sin_theta_floor) {
        // Degenerate (band-edge) cell: the closed form divides by sin θ.
        ComplexMat acc = ComplexMat::Identity(2, 2);
        for (long k = 0; k < n; ++k) acc = unit * acc;
        out.matrix = acc;
        out.fallback = true;
        return out;
    }
    const cplx nt = static_cast<double>(n) * theta;
    const ComplexMat id = ComplexMat::Identity(2, 2);
    out.matrix = std::cos(nt) * id + (std::sin(nt) / s) * (unit - c * id);
    return out;
}

}  // namespace

PowerResult cell_power(const ComplexMat& cell, long n, const NumericSettings& settings) {
    check_power_args(cell, n);
    if (n == 0) return {ComplexMat::Identity(2, 2), bloch_angle(cell), false};

    // Physical cells are unimodular; anything else is normalised so the
    // Chebyshev identity applies, and the determinant is restored afterwards.
    const cplx det = cell.determinant();
    if (std::abs(det) == 0.0) {
        throw Error(ErrorKind::IllConditioned, "cell_power: singular cell");
    }
    const cplx root_det = std::sqrt(det);
    const ComplexMat unit = cell / root_det;
    PowerResult out = unimodular_power(unit, n, std::acos(0.5 * unit.trace()), settings);
    out.matrix *= std::pow(root_det, static_cast<double>(n));
    require_finite(out.matrix, "cell_power");
    return out;
}

PowerResult cell_power(const ComplexMat& cell, long n, const BlochAngle& angle,
                       const NumericSettings& settings) {
    check_power_args(cell, n);
    PowerResult out = unimodular_power(cell, n, angle.theta, settings);
    require_finite(out.matrix, "cell_power");
    return out;
}

ScatterCoeffs extract_scattering(const ComplexMat& t_e, const NumericSettings& settings) {
    if (t_e.rows() != t_e.cols() || t_e.rows() % 2 != 0 || t_e.rows() < 2 || t_e.rows() > 4) {
        throw Error(ErrorKind::Dimension, "extract_scattering: matrix must be 2x2 or 4x4");
    }
    if (!t_e.allFinite()) {
        throw Error(ErrorKind::IllConditioned, "extract_scattering: non-finite transfer matrix");
    }
    const Eigen::Index m = t_e.rows() / 2;
    const ComplexMat t11 = t_e.topLeftCorner(m, m);
    const ComplexMat t12 = t_e.topRightCorner(m, m);
    const ComplexMat t21 = t_e.bottomLeftCorner(m, m);
    const ComplexMat t22 = t_e.bottomRightCorner(m, m);

    ScatterCoeffs out;
    if (m == 1) {
        const cplx d = t22(0, 0);
        const double scale = t_e.cwiseAbs().maxCoeff();
        const double rcond = std::abs(d) / (scale > 0.0 ? scale : 1.0);
        if (!(rcond > settings.min_rcond)) {
            throw Error(ErrorKind::IllConditioned,
                        "extract_scattering: T22 is singular", rcond);
        }
        out.r_plus = ComplexMat::Constant(1, 1, -t21(0, 0) / d);
        out.t_plus = ComplexMat::Constant(1, 1, 1.0 / d);
        out.r_minus = ComplexMat::Constant(1, 1, t12(0, 0) / d);
        out.t_minus = out.t_plus;
        return out;
    }

    Eigen::FullPivLU<ComplexMat> lu(t22);
    const double rcond = lu.rcond();
    if (!(rcond > settings.min_rcond)) {
        throw Error(ErrorKind::IllConditioned, "extract_scattering: T22 is singular", rcond);
    }
    const ComplexMat inv22 = lu.inverse();
    out.r_plus = -inv22 * t21;
    out.t_plus = t11 + t12 * out.r_plus;
    out.t_minus = inv22;
    out.r_minus = t12 * inv22;
    return out;
}

}  // namespace sgate
