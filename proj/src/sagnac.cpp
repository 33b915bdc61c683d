// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/sagnac.hpp"

#include <algorithm>
#include <cmath>

namespace sgate {

double d_extra_phase(const EnsembleSpec& spec) {
    double phase = std::fmod(-pi * spec.length() - pi, 2.0 * pi);
    if (phase < 0.0) phase += 2.0 * pi;
    return phase;
}

ScatterResult apply_d_extra(const ScatterResult& s, double d_extra) {
    const cplx once = std::exp(I * d_extra);
    ScatterResult out = s;
    out.r_minus = s.r_minus * once * once;
    out.t_plus = s.t_plus * once;
    out.t_minus = s.t_minus * once;
    return out;
}

ComplexMat sagnac_matrix(const ScatterResult& s, const SagnacGeometry& geom) {
    ComplexMat h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    ComplexMat mf = ComplexMat::Zero(2, 2);
    mf(0, 0) = std::exp(I * geom.k0_l1);
    mf(1, 1) = std::exp(I * geom.k0_l2);
    ComplexMat sm(2, 2);
    sm << s.r_plus, s.t_plus, s.t_minus, s.r_minus;
    return h * mf * sm * mf * h;
}

cplx sagnac_reflection(const ScatterResult& s, const SagnacGeometry& geom) {
    const cplx a = std::exp(I * geom.k0_l1);
    const cplx b = std::exp(I * geom.k0_l2);
    return -0.5 * (s.r_plus * a * a - (s.t_plus + s.t_minus) * a * b + s.r_minus * b * b);
}

GateReflections gate_reflections(const EnsembleSpec& spec, const SagnacGeometry& geom,
                                 double delta, bool with_r1, const NumericSettings& settings) {
    EnsembleSpec base = spec;
    base.stored_site.reset();
    const double extra = d_extra_phase(base);
    GateReflections out;
    out.R0 = sagnac_reflection(apply_d_extra(scatter(base, delta, settings), extra), geom);
    if (with_r1) {
        const auto stored = stored_scatter_all_sites(base, delta, false, settings);
        out.R1.reserve(stored.size());
        for (const auto& s : stored) out.R1.push_back(sagnac_reflection(apply_d_extra(s, extra), geom));
    }
    return out;
}

cplx symmetrized_R1(const std::vector<cplx>& R1, double z_tilde) {
    if (R1.empty()) throw Error(ErrorKind::Dimension, "symmetrized_R1: empty site list");
    const double m = static_cast<double>(R1.size());
    auto sample = [&](double z) {
        const double pos = std::clamp(z * m, 0.0, m - 1.0);
        const auto k = static_cast<std::size_t>(std::floor(pos));
        const double frac = pos - double(k);
        if (k + 1 >= R1.size()) return R1.back();
        return (1.0 - frac) * R1[k] + frac * R1[k + 1];
    };
    return 0.5 * (sample(z_tilde) + sample(1.0 - z_tilde));
}

}  // namespace sgate
