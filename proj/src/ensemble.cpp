// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sgate/optimize.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

void EnsembleSpec::validate() const {
    if (N < 0) throw Error(ErrorKind::Config, "ensemble: N must be non-negative");
    // The endpoints are allowed: Γ1D = 0 is an empty waveguide, Γ' = 0 a lossless one.
    if (!(gamma_1d >= 0.0 && gamma_1d <= 1.0)) {
        throw Error(ErrorKind::Config, "ensemble: gamma_1d must lie in [0, 1]");
    }
    if (!std::isfinite(omega0) || !std::isfinite(delta_c)) {
        throw Error(ErrorKind::Config, "ensemble: omega0 and delta_c must be finite");
    }
    if (!(placement.d > 0.0) || !std::isfinite(placement.d)) {
        throw Error(ErrorKind::Config, "ensemble: interatomic distance must be positive");
    }
    if (scheme == Scheme::Lambda) {
        // The standing-wave β assignment is only defined for quarter-wave spacing.
        if (placement.kind != Placement::Kind::Regular || std::abs(placement.d - 0.5) > 1e-12) {
            throw Error(ErrorKind::Config,
                        "ensemble: Lambda scheme requires regular placement with d = 0.5 (pi/(2 k0))");
        }
        if (N % 2 != 0) throw Error(ErrorKind::Config, "ensemble: Lambda scheme requires even N");
    }
    if (stored_site && (*stored_site < 0 || *stored_site >= site_count())) {
        throw Error(ErrorKind::Config, "ensemble: stored_site out of range");
    }
}

cplx beta_lambda_antinode(double delta, double delta_c, double omega0, double gamma_1d,
                          double gamma_prime) {
    const double big_delta = delta_c + delta;
    const cplx den = (gamma_prime - 2.0 * I * big_delta) * delta + 2.0 * I * omega0 * omega0;
    if (den == cplx(0.0, 0.0)) {
        throw Error(ErrorKind::Pole, "beta_lambda_antinode: zero denominator");
    }
    return gamma_1d * delta / den;
}

cplx beta_lambda_node(double delta, double delta_c, double gamma_1d, double gamma_prime) {
    const double big_delta = delta_c + delta;
    const cplx den = gamma_prime - 2.0 * I * big_delta;
    if (den == cplx(0.0, 0.0)) throw Error(ErrorKind::Pole, "beta_lambda_node: zero denominator");
    return gamma_1d / den;
}

cplx beta_stored(double gamma_1d, double gamma_prime) {
    if (!(gamma_prime > 0.0)) throw Error(ErrorKind::Pole, "beta_stored: gamma_prime must be positive");
    return gamma_1d / gamma_prime;
}

ComplexMat dual_v_beta(double z, DualVState state, double delta, double delta_c, double omega0,
                       double gamma_1d, double /*gamma_prime*/) {
    ComplexMat s(2, 2);
    if (state == DualVState::Stored) {
        // Resonant V-type atom: only same-mode reflection.
        s << -gamma_1d, 0.0, 0.0, -gamma_1d;
    } else {
        const cplx delta_gamma = (delta_c + delta) + 0.5 * I;
        const double w2 = omega0 * omega0;
        const cplx den = delta_gamma * delta_gamma * delta - 2.0 * delta_gamma * w2;
        if (den == cplx(0.0, 0.0)) throw Error(ErrorKind::Pole, "dual_v_beta: zero denominator");
        const cplx r_same = -I * (0.5 * gamma_1d) * (delta_gamma * delta - w2) / den;
        const cplx r_cross = -I * (0.5 * gamma_1d) * w2 / den;
        const cplx phase = std::exp(2.0 * I * pi * z);
        // Rows: outgoing (σ₊, σ₋); columns: incoming (σ₊, σ₋).
        s << r_same, r_cross * phase, r_cross / phase, r_same;
    }
    const ComplexMat id = ComplexMat::Identity(2, 2);
    Eigen::FullPivLU<ComplexMat> lu(id + s);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) {
        throw Error(ErrorKind::Pole, "dual_v_beta: I + S is singular");
    }
    return -lu.solve(s);
}

std::vector<double> atom_positions(const EnsembleSpec& spec) {
    std::vector<double> z(static_cast<std::size_t>(std::max<long>(spec.N, 0)));
    if (spec.placement.kind == Placement::Kind::Regular) {
        for (std::size_t j = 0; j < z.size(); ++j) z[j] = spec.placement.d * double(j);
        return z;
    }
    std::mt19937_64 rng(spec.placement.seed);
    std::uniform_real_distribution<double> uni(0.0, spec.length());
    for (auto& v : z) v = uni(rng);
    std::sort(z.begin(), z.end());
    return z;
}

ComplexMat lambda_cell(const EnsembleSpec& spec, double delta, bool stored_at_antinode,
                       bool stored_at_node) {
    const double gp = spec.gamma_prime();
    const cplx b3 = stored_at_antinode
                        ? beta_stored(spec.gamma_1d, gp)
                        : beta_lambda_antinode(delta, spec.delta_c, spec.omega0, spec.gamma_1d, gp);
    const cplx b2 = stored_at_node ? beta_stored(spec.gamma_1d, gp)
                                   : beta_lambda_node(delta, spec.delta_c, spec.gamma_1d, gp);
    const ComplexMat quarter = free_matrix(pi / 2.0, 1);
    return quarter * atom_matrix(b2) * quarter * atom_matrix(b3);
}

BlochAngle lambda_bloch_angle(const EnsembleSpec& spec, double delta) {
    // With T_f(π/2) = iσ_z the cell is −(I + β₂M₂)(I + β₃M₃), whose half-trace
    // is exactly −1 − 2β₂β₃; hence θ = π − 2 asin √(−β₂β₃) without cancellation.
    const double gp = spec.gamma_prime();
    const cplx b3 = beta_lambda_antinode(delta, spec.delta_c, spec.omega0, spec.gamma_1d, gp);
    const cplx b2 = beta_lambda_node(delta, spec.delta_c, spec.gamma_1d, gp);
    return {pi - 2.0 * std::asin(std::sqrt(-b2 * b3))};
}

namespace {

// Per-atom factors of a dual-V (or general explicit) ensemble:
// T = A_{N−1} ⋯ A_0 · head with A_j = T_f(gap_j)·T_a(β_j), head = T_f(z_0).
struct Segments {
    ComplexMat head;
    std::vector<ComplexMat> atoms;  // A_j
    std::vector<double> gaps;
    std::vector<double> z;
};

Segments dual_v_segments(const EnsembleSpec& spec, double delta) {
    Segments seg;
    seg.z = atom_positions(spec);
    const std::size_t n = seg.z.size();
    seg.head = free_matrix(pi * (n ? seg.z[0] : spec.length()), 2);
    seg.gaps.resize(n);
    seg.atoms.resize(n);
    const double gp = spec.gamma_prime();
    for (std::size_t j = 0; j < n; ++j) {
        const double next = (j + 1 < n) ? seg.z[j + 1] : spec.length();
        seg.gaps[j] = next - seg.z[j];
        const ComplexMat beta = dual_v_beta(seg.z[j], DualVState::Ground, delta, spec.delta_c,
                                            spec.omega0, spec.gamma_1d, gp);
        seg.atoms[j] = free_matrix(pi * seg.gaps[j], 2) * atom_matrix(beta);
    }
    return seg;
}

ComplexMat dual_v_stored_factor(const EnsembleSpec& spec, const Segments& seg, std::size_t j,
                                double delta) {
    const ComplexMat beta = dual_v_beta(seg.z[j], DualVState::Stored, delta, spec.delta_c,
                                        spec.omega0, spec.gamma_1d, spec.gamma_prime());
    return free_matrix(pi * seg.gaps[j], 2) * atom_matrix(beta);
}

ScatterResult to_result(const ComplexMat& t_e, double delta, std::optional<long> site,
                        const NumericSettings& settings) {
    ScatterResult r = reduce_channel(extract_scattering(t_e, settings), delta);
    r.stored = site.has_value();
    r.stored_site = site;
    return r;
}

}  // namespace

ComplexMat ensemble_matrix(const EnsembleSpec& spec, double delta, const NumericSettings& settings) {
    spec.validate();
    const int nm = spec.n_modes();
    if (spec.N == 0) return ComplexMat::Identity(2 * nm, 2 * nm);

    if (spec.scheme == Scheme::Lambda) {
        const long n = spec.N / 2;
        const ComplexMat cell = lambda_cell(spec, delta);
        const BlochAngle angle = lambda_bloch_angle(spec, delta);
        if (!spec.stored_site) return cell_power(cell, n, angle, settings).matrix;
        const long c = *spec.stored_site;
        const ComplexMat ph = lambda_cell(spec, delta, true, false);
        return cell_power(cell, n - 1 - c, angle, settings).matrix * ph *
               cell_power(cell, c, angle, settings).matrix;
    }

    const Segments seg = dual_v_segments(spec, delta);
    ComplexMat t = seg.head;
    for (std::size_t j = 0; j < seg.atoms.size(); ++j) {
        if (spec.stored_site && static_cast<long>(j) == *spec.stored_site) {
            t = dual_v_stored_factor(spec, seg, j, delta) * t;
        } else {
            t = seg.atoms[j] * t;
        }
    }
    if (!t.allFinite()) throw Error(ErrorKind::IllConditioned, "ensemble_matrix: overflow");
    return t;
}

ScatterResult reduce_channel(const ScatterCoeffs& c, double delta) {
    ScatterResult r;
    r.delta = delta;
    if (c.r_plus.rows() == 1) {
        r.r_plus = c.r_plus(0, 0);
        r.t_plus = c.t_plus(0, 0);
        r.r_minus = c.r_minus(0, 0);
        r.t_minus = c.t_minus(0, 0);
    } else {
        // σ₊ incident from the left: reflected σ₋, transmitted σ₊;
        // σ₋ incident from the right: reflected σ₊, transmitted σ₋.
        r.r_plus = c.r_plus(1, 0);
        r.t_plus = c.t_plus(0, 0);
        r.r_minus = c.r_minus(0, 1);
        r.t_minus = c.t_minus(1, 1);
    }
    return r;
}

ScatterResult scatter(const EnsembleSpec& spec, double delta, const NumericSettings& settings) {
    return to_result(ensemble_matrix(spec, delta, settings), delta, spec.stored_site, settings);
}

std::vector<SpectrumPoint> spectrum(const EnsembleSpec& spec, const std::vector<double>& grid,
                                    std::optional<long> stored_site, int threads,
                                    const NumericSettings& settings) {
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw Error(ErrorKind::Config, "spectrum: grid must be sorted ascending");
    }
    EnsembleSpec base = spec;
    base.stored_site.reset();
    base.validate();
    EnsembleSpec with_photon = spec;
    with_photon.stored_site = stored_site;
    if (stored_site) with_photon.validate();

    std::vector<SpectrumPoint> out(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        SpectrumPoint& p = out[i];
        p.unstored.delta = grid[i];
        try {
            p.unstored = scatter(base, grid[i], settings);
            if (stored_site) p.stored = scatter(with_photon, grid[i], settings);
        } catch (const Error& e) {
            p.error = std::string(to_string(e.kind())) + ": " + e.what();
        }
    });
    return out;
}

std::vector<ScatterResult> stored_scatter_all_sites(const EnsembleSpec& spec, double delta,
                                                    bool node, const NumericSettings& settings) {
    EnsembleSpec base = spec;
    base.stored_site.reset();
    base.validate();
    std::vector<ScatterResult> out;
    if (spec.N == 0) return out;

    if (spec.scheme == Scheme::Lambda) {
        const long n = spec.N / 2;
        const ComplexMat cell = lambda_cell(spec, delta);
        const BlochAngle angle = lambda_bloch_angle(spec, delta);
        const ComplexMat ph = lambda_cell(spec, delta, !node, node);
        out.reserve(static_cast<std::size_t>(n));
        for (long c = 0; c < n; ++c) {
            const ComplexMat t = cell_power(cell, n - 1 - c, angle, settings).matrix * ph *
                                 cell_power(cell, c, angle, settings).matrix;
            out.push_back(to_result(t, delta, c, settings));
        }
        return out;
    }

    const Segments seg = dual_v_segments(base, delta);
    const std::size_t n = seg.atoms.size();
    // prefix[j] = A_{j−1} ⋯ A_0 · head, suffix[j] = A_{N−1} ⋯ A_{j+1}.
    std::vector<ComplexMat> prefix(n), suffix(n);
    prefix[0] = seg.head;
    for (std::size_t j = 1; j < n; ++j) prefix[j] = seg.atoms[j - 1] * prefix[j - 1];
    suffix[n - 1] = ComplexMat::Identity(4, 4);
    for (std::size_t j = n - 1; j-- > 0;) suffix[j] = suffix[j + 1] * seg.atoms[j + 1];
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMat t = suffix[j] * dual_v_stored_factor(base, seg, j, delta) * prefix[j];
        out.push_back(to_result(t, delta, static_cast<long>(j), settings));
    }
    return out;
}

double resonance_seed(const EnsembleSpec& spec) {
    const double n = static_cast<double>(spec.N);
    return -4.0 * pi * pi * spec.delta_c * spec.omega0 * spec.omega0 /
           (spec.gamma_1d * spec.gamma_1d * n * n);
}

double find_resonance(const EnsembleSpec& spec, const NumericSettings& settings) {
    EnsembleSpec base = spec;
    base.stored_site.reset();
    base.validate();
    const double seed = resonance_seed(base);
    if (!(std::abs(seed) > 0.0) || !std::isfinite(seed)) {
        throw Error(ErrorKind::ResonanceNotFound,
                    "find_resonance: analytic seed is zero (needs |delta_c| > 0 and omega0 != 0)");
    }
    auto transmittance = [&](double delta) {
        try {
            return std::norm(scatter(base, delta, settings).t_plus);
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    auto attempt = [&](double factor, double& found) {
        const int steps = static_cast<int>(std::lround(settings.scan_span * settings.scan_divisions));
        const double step = factor * seed / settings.scan_divisions;
        std::vector<double> vals(static_cast<std::size_t>(steps) + 1);
        for (int k = 0; k <= steps; ++k) vals[std::size_t(k)] = transmittance(step * k);
        for (int k = 1; k < steps; ++k) {
            const double prev = vals[std::size_t(k - 1)], cur = vals[std::size_t(k)],
                         next = vals[std::size_t(k + 1)];
            if (std::isfinite(cur) && cur >= prev && cur > next) {
                const auto g = golden_section_maximize(transmittance, step * (k - 1),
                                                       step * (k + 1), settings.golden_tol);
                found = g.x;
                return true;
            }
        }
        return false;
    };

    double found = 0.0;
    if (attempt(1.0, found)) return found;
    if (attempt(settings.bracket_retry_factor, found)) return found;
    throw Error(ErrorKind::ResonanceNotFound,
                "find_resonance: no transmission maximum in the scan bracket", seed);
}

double resonance_width_analytic(const EnsembleSpec& spec) {
    const double n = static_cast<double>(spec.N);
    const double g = spec.gamma_1d;
    return 32.0 * std::sqrt(2.0) * pi * pi * spec.delta_c * spec.delta_c * spec.omega0 *
           spec.omega0 / (g * g * g * n * n * n);
}

double resonance_width_numeric(const EnsembleSpec& spec, double delta_res,
                               const NumericSettings& settings) {
    EnsembleSpec base = spec;
    base.stored_site.reset();
    double h = 0.05 * resonance_width_analytic(base);
    if (!(h > 0.0) || !std::isfinite(h)) h = 1e-3 * std::max(std::abs(delta_res), 1e-6);
    const cplx r_m = scatter(base, delta_res - h, settings).r_plus;
    const cplx r_0 = scatter(base, delta_res, settings).r_plus;
    const cplx r_p = scatter(base, delta_res + h, settings).r_plus;
    const cplx curvature = (r_p - 2.0 * r_0 + r_m) / (h * h);
    return std::sqrt(4.0 / curvature).real();
}

AnalyticCoeffs analytic_coeffs(const EnsembleSpec& spec, double z_tilde, bool omega_terms) {
    const double big_n = static_cast<double>(spec.N);
    const double n = 0.5 * big_n;
    const double g = spec.gamma_1d;
    const double gp = spec.gamma_prime();
    const double dc = spec.delta_c;
    const double w2 = spec.omega0 * spec.omega0;
    const double pi2 = pi * pi;
    const double pi4 = pi2 * pi2;
    const double x = z_tilde - 0.5;
    const long n_cells = spec.N / 2;
    const double sign = (n_cells - 1) % 2 == 0 ? 1.0 : -1.0;

    AnalyticCoeffs out;
    double r0 = g * gp * big_n / (16.0 * dc * dc);
    if (omega_terms) r0 += pi2 * gp * w2 / (4.0 * dc * dc * g * n);
    out.r0 = r0;
    out.t0 = sign * (1.0 - r0);

    const double a = 4.0 * pi2 * dc * dc * gp / (g * g * g * big_n * big_n);
    cplx r1 = 1.0 - a - 4.0 * I * pi2 * dc / (g * big_n) * x -
              4.0 * pi4 * dc * dc * (2.0 * g + gp) / (g * g * g * big_n * big_n) * x * x;
    double t1 = a + 8.0 * pi4 * dc * dc * gp / (g * g * g * big_n * big_n * big_n) * x +
                4.0 * pi4 * dc * dc * gp / (g * g * g * big_n * big_n) * x * x;
    if (omega_terms) {
        const double corr = 2.0 * pi4 * dc * dc * gp * w2 / (std::pow(g, 5) * std::pow(n, 4));
        r1 += corr;
        t1 -= corr;
    }
    out.r1 = r1;
    out.t1 = sign * t1;
    return out;
}

MagneticSplittings magnetic_splittings(double b_z_gauss) {
    const double delta = 1.4 * b_z_gauss;
    return {delta / 6.0, delta, -delta / 2.0};
}

DualColorCheck dual_color_check(double delta_c_plus, double delta_c_minus, double omega0) {
    const double diff = std::abs(delta_c_plus - delta_c_minus);
    const double sum = std::abs(delta_c_plus + delta_c_minus);
    DualColorCheck out;
    out.margin_small = 0.5 * sum - diff;
    const double needed = sum > 0.0 ? omega0 * omega0 / sum
                                     : (omega0 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    out.margin_large = diff - needed;
    out.separation_small = out.margin_small > 0.0;
    out.separation_large = out.margin_large >= 0.0;
    return out;
}

}  // namespace sgate
