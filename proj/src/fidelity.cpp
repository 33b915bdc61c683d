// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sgate {

const char* to_string(TbMode mode) {
    switch (mode) {
        case TbMode::One: return "one";
        case TbMode::MatchR0: return "match_r0";
        case TbMode::Optimized: return "optimized";
        case TbMode::Fixed: return "fixed";
    }
    return "unknown";
}

const char* to_string(StorageModel model) {
    switch (model) {
        case StorageModel::Kernel: return "kernel";
        case StorageModel::Discrete: return "discrete";
        case StorageModel::Dispersion: return "dispersion";
    }
    return "unknown";
}

AnalyticFidelities analytic_fidelities(double n, double gamma_1d, TbMode mode) {
    const double gp = 1.0 - gamma_1d;
    const double sq = std::sqrt(n);
    switch (mode) {
        case TbMode::One:
            return {1.0 - pi * gp / (gamma_1d * sq),
                    1.0 - pi * pi * gp * gp / (4.0 * gamma_1d * gamma_1d * n)};
        case TbMode::MatchR0:
            return {1.0 - 2.0 * pi * gp / (gamma_1d * sq),
                    1.0 - 11.0 * pi * pi * pi * (gamma_1d + gp) * gp /
                              (16.0 * gamma_1d * gamma_1d * n * sq)};
        default:
            throw Error(ErrorKind::Config, "analytic_fidelities: only t_b = 1 and t_b = R0 have closed forms");
    }
}

OptimalParams optimal_params(double n, double gamma_1d) {
    const double gp = 1.0 - gamma_1d;
    OptimalParams p;
    p.delta_c = -std::sqrt(gamma_1d * gamma_1d * std::pow(n, 1.5) / (8.0 * pi));
    p.sigma_tilde = std::sqrt(std::pow(pi, -1.5) * std::pow(n, -0.25) * std::sqrt(gp / (gamma_1d + gp)));
    return p;
}

double bandwidth_corrected_f_cj(double n, double gamma_1d, double omega0, double sigma_b) {
    const double gp = 1.0 - gamma_1d;
    const double w4 = std::pow(omega0, 4);
    return 1.0 - pi * gp / (gamma_1d * std::sqrt(n)) -
           std::pow(pi, 1.5) * std::sqrt(gamma_1d + gp) * std::sqrt(gp) / (gamma_1d * std::pow(n, 0.75)) -
           gamma_1d * gamma_1d * n * n * n * sigma_b * sigma_b / (16.0 * w4 * pi * pi);
}

double scattering_sigma_b(double n, double gamma_1d, double omega0) {
    const double gp = 1.0 - gamma_1d;
    const double inv = std::pow(gamma_1d, 1.5) * std::pow(n, 1.75) /
                       (4.0 * std::pow(pi, 1.5) * std::sqrt(gp) * omega0 * omega0);
    return 1.0 / inv;
}

GateTimeBudget gate_time_budget(double n, double gamma_1d, double omega0,
                                std::optional<double> delta_hfs) {
    GateTimeBudget g;
    g.t_eit_pass = n * gamma_1d / (2.0 * omega0 * omega0);
    g.t_eit_round_trip = 2.0 * g.t_eit_pass;
    g.t_pi_min = 1.0 / std::abs(optimal_params(n, gamma_1d).delta_c);
    g.t_scatter = 1.0 / scattering_sigma_b(n, gamma_1d, omega0);
    if (delta_hfs) {
        const double gp = 1.0 - gamma_1d;
        g.loss_hfs = std::pow(gamma_1d, 1.5) * std::sqrt(gp) * std::pow(n, 1.75) /
                     (4.0 * std::pow(pi, 1.5) * (*delta_hfs) * (*delta_hfs));
    }
    return g;
}

EffectiveDecay effective_decay_rates(double omega0, double delta_hfs, double gamma1, double gamma2,
                                     double gamma_prime) {
    const double den = delta_hfs * delta_hfs + 0.25 * gamma_prime * gamma_prime;
    const double w2 = omega0 * omega0;
    return {gamma1 * w2 / den, gamma2 * w2 / den};
}

double pi_pulse_fidelity_factor(double varphi) {
    if (!(std::abs(varphi) < 0.5 * pi)) {
        throw Error(ErrorKind::Config, "pi_pulse_fidelity_factor: |phi| must be below pi/2");
    }
    return std::pow(std::cos(varphi), 4);
}

namespace {

struct MisalignmentTerms {
    double aligned;
    double bracket;
};

MisalignmentTerms misalignment_terms(const MisalignmentInputs& in) {
    const double g = in.gamma_1d, gp = 1.0 - in.gamma_1d, n = in.n;
    const double dc2 = in.delta_c * in.delta_c, w2 = in.omega0 * in.omega0;
    const double s2 = in.sigma_tilde * in.sigma_tilde;
    const double p2 = pi * pi, p4 = p2 * p2;
    MisalignmentTerms t;
    t.aligned = 1.0 - in.eps_b - g * gp * n / (16.0 * dc2) - 4.0 * p2 * dc2 * gp / (g * g * g * n * n) -
                p2 * gp * w2 / (2.0 * dc2 * g * n) + 32.0 * p4 * dc2 * gp * w2 / (std::pow(g, 5) * std::pow(n, 4)) -
                4.0 * p4 * dc2 * (g + gp) * s2 / (g * g * g * n * n) - 0.5 * gp / (n * g * s2);
    t.bracket = -0.5 + 3.0 / 8.0 * in.eps_b + 5.0 * g * gp * n / (128.0 * dc2) +
                5.0 * p2 * dc2 * gp / (2.0 * g * g * g * n * n) + 5.0 * p2 * gp * w2 / (16.0 * dc2 * g * n) -
                20.0 * p4 * dc2 * gp * w2 / (std::pow(g, 5) * std::pow(n, 4)) +
                7.0 * p4 * dc2 * s2 / (2.0 * g * g * n * n) + 5.0 * p4 * dc2 * gp * s2 / (2.0 * g * g * g * n * n);
    return t;
}

}  // namespace

double misalignment_error(const MisalignmentInputs& in) {
    const MisalignmentTerms t = misalignment_terms(in);
    return t.aligned + t.bracket * in.k0_l1 * in.k0_l1;
}

double misalignment_coefficient(const MisalignmentInputs& in) { return misalignment_terms(in).bracket; }

double misalignment_coefficient_short(double n, double gamma_1d) {
    return -(0.5 - 5.0 * pi * (1.0 - gamma_1d) / (8.0 * gamma_1d * std::sqrt(n)));
}

std::vector<SpectralNode> spectral_nodes(const PhotonBSpectrum& spectrum, const NumericSettings& settings) {
    if (spectrum.shape == PhotonBSpectrum::Shape::DiracDelta || spectrum.sigma_b == 0.0) {
        return {{spectrum.center, 1.0}};
    }
    if (!(spectrum.sigma_b > 0.0)) throw Error(ErrorKind::Config, "photon B: sigma_b must be positive");
    const int m = settings.spectrum_nodes;
    if (m < 2) throw Error(ErrorKind::Config, "photon B: need at least two quadrature nodes");
    // Golub–Welsch: Legendre nodes are the eigenvalues of the Jacobi matrix.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
    const double half = settings.spectrum_half_width_sigmas * spectrum.sigma_b;
    std::vector<SpectralNode> nodes(static_cast<std::size_t>(m));
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
        const double x = eig.eigenvalues()(k);
        const double v0 = eig.eigenvectors()(0, k);
        const double legendre_weight = 2.0 * v0 * v0;
        const double delta = spectrum.center + half * x;
        const double u = (delta - spectrum.center) / spectrum.sigma_b;
        const double density = std::exp(-0.5 * u * u) / (std::sqrt(2.0 * pi) * spectrum.sigma_b);
        nodes[std::size_t(k)] = {delta, legendre_weight * half * density};
        total += nodes[std::size_t(k)].weight;
    }
    for (auto& node : nodes) node.weight /= total;
    return nodes;
}

double f_cj(const GateInputs& in, cplx t_b) {
    return in.eta / 16.0 * std::norm(2.0 * t_b + in.r0_mean - in.r11);
}

double p_suc(const GateInputs& in, cplx t_b) {
    return in.eta / 4.0 * (2.0 * std::norm(t_b) + in.r0_abs2_mean + in.r12);
}

cplx optimal_t_b(const GateInputs& in) {
    const cplx a = in.r0_mean - in.r11;
    const double c = in.r0_abs2_mean + in.r12;
    if (std::norm(a) == 0.0) return 1.0;
    cplx t = c * a / std::norm(a);
    if (std::abs(t) > 1.0) t /= std::abs(t);
    return t;
}

RoundTrip phi_out_0(const GateConfig& config, const NumericSettings& settings) {
    RoundTrip trip;
    trip.eit.N = config.ensemble.N;
    trip.eit.gamma_1d = config.ensemble.gamma_1d;
    trip.eit.omega = config.eit_omega.value_or(std::abs(config.ensemble.omega0));
    trip.eit.sigma_tilde = config.sigma_tilde;
    trip.eit.validate();
    const WavePacket input = gaussian_input(trip.eit, 0.0, settings);
    switch (config.storage) {
        case StorageModel::Kernel:
            trip.stored = store_kernel_model(input, trip.eit, settings);
            trip.phi0 = retrieve_kernel_model(trip.stored, trip.eit, settings);
            break;
        case StorageModel::Dispersion:
            trip.stored = store_dispersion(input, trip.eit);
            trip.phi0 = retrieve_kernel_model(trip.stored, trip.eit, settings);
            break;
        case StorageModel::Discrete:
            trip.discrete = make_discrete_model(trip.eit, config.ensemble.placement);
            trip.stored = store_discrete(input, *trip.discrete, settings);
            trip.phi0 = retrieve_discrete(trip.stored, *trip.discrete, settings);
            break;
    }
    return trip;
}

WavePacket phi_out_1(const RoundTrip& trip, const std::vector<cplx>& r1_atoms, const NumericSettings& settings) {
    const SpinWave scattered = apply_site_factor(trip.stored, r1_atoms);
    if (trip.discrete) return retrieve_discrete(scattered, *trip.discrete, settings);
    return retrieve_kernel_model(scattered, trip.eit, settings);
}

std::vector<cplx> r1_per_atom(const EnsembleSpec& spec, const SagnacGeometry& geom, double delta,
                              bool odd_site_adjustment, const NumericSettings& settings) {
    EnsembleSpec base = spec;
    base.stored_site.reset();
    const double extra = d_extra_phase(base);
    auto sagnac_all = [&](bool node) {
        const auto stored = stored_scatter_all_sites(base, delta, node, settings);
        std::vector<cplx> r(stored.size());
        for (std::size_t i = 0; i < stored.size(); ++i) {
            r[i] = sagnac_reflection(apply_d_extra(stored[i], extra), geom);
        }
        return r;
    };
    const auto n = static_cast<std::size_t>(spec.N);
    if (spec.scheme == Scheme::DualV) return sagnac_all(false);
    const std::vector<cplx> antinode = sagnac_all(false);
    std::vector<cplx> node;
    if (!odd_site_adjustment) node = sagnac_all(true);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cell = i / 2;
        out[i] = (i % 2 == 0 || odd_site_adjustment) ? antinode[cell] : node[cell];
    }
    return out;
}

FidelityReport evaluate_gate(const GateConfig& config, const NumericSettings& settings) {
    EnsembleSpec spec = config.ensemble;
    spec.stored_site.reset();
    spec.validate();
    if (config.sigma_b < 0.0) throw Error(ErrorKind::Config, "photon B: sigma_b must be non-negative");

    FidelityReport report;
    report.N = spec.N;
    report.gamma_1d = spec.gamma_1d;
    report.delta_c = spec.delta_c;
    report.omega0 = spec.omega0;
    report.sigma_tilde = config.sigma_tilde;
    report.geometry = config.geometry;
    report.delta_res = config.delta_res ? *config.delta_res : find_resonance(spec, settings);

    const PhotonBSpectrum spectrum{report.delta_res, config.sigma_b, config.photon_b_shape};
    const auto nodes = spectral_nodes(spectrum, settings);
    if (nodes.size() > 1) report.flags.emplace_back("photon_b_bandwidth");
    if (spec.scheme == Scheme::Lambda && config.odd_site_adjustment) report.flags.emplace_back("odd_site_adjustment");
    if (config.geometry.k0_l1 != 0.0 || config.geometry.k0_l2 != 0.0) report.flags.emplace_back("sagnac_misalignment");

    const bool random = spec.placement.kind == Placement::Kind::RandomUniform;
    const int count = random ? std::max(config.realizations, 1) : 1;
    if (random) report.flags.emplace_back("random_placement_average");

    // Photon A without interaction; the kernel models do not depend on the
    // actual positions, so one round trip serves every realisation.
    std::optional<RoundTrip> shared;
    if (config.storage != StorageModel::Discrete || !random) shared = phi_out_0(config, settings);

    std::vector<GateInputs> inputs(static_cast<std::size_t>(count));
    for (int r = 0; r < count; ++r) {
        EnsembleSpec spec_r = spec;
        spec_r.placement.seed = spec.placement.seed + static_cast<std::uint64_t>(r);
        RoundTrip trip;
        if (shared) {
            trip = *shared;
        } else {
            GateConfig cfg_r = config;
            cfg_r.ensemble = spec_r;
            trip = phi_out_0(cfg_r, settings);
        }
        GateInputs& in = inputs[std::size_t(r)];
        in.eta = trip.phi0.norm2();
        if (!(in.eta > 0.0)) throw Error(ErrorKind::Integration, "evaluate_gate: photon A was not retrieved");
        in.r0_mean = 0.0;
        in.r0_abs2_mean = 0.0;
        in.r11 = 0.0;
        in.r12 = 0.0;
        for (const auto& node : nodes) {
            const cplx r0 = gate_reflections(spec_r, config.geometry, node.delta, false, settings).R0;
            const WavePacket phi1 =
                phi_out_1(trip, r1_per_atom(spec_r, config.geometry, node.delta, config.odd_site_adjustment, settings),
                          settings);
            in.r0_mean += node.weight * r0;
            in.r0_abs2_mean += node.weight * std::norm(r0);
            in.r11 += node.weight * overlap(trip.phi0, phi1) / in.eta;
            in.r12 += node.weight * phi1.norm2() / in.eta;
        }
        report.R0 += gate_reflections(spec_r, config.geometry, report.delta_res, false, settings).R0 / double(count);
    }

    GateInputs mean{};
    mean.eta = 0.0;
    mean.r0_mean = 0.0;
    mean.r0_abs2_mean = 0.0;
    mean.r11 = 0.0;
    mean.r12 = 0.0;
    for (const auto& in : inputs) {
        mean.eta += in.eta / count;
        mean.r0_mean += in.r0_mean / double(count);
        mean.r0_abs2_mean += in.r0_abs2_mean / count;
        mean.r11 += in.r11 / double(count);
        mean.r12 += in.r12 / count;
    }
    report.eta_eit = mean.eta;
    report.R0_mean = mean.r0_mean;
    report.R11 = mean.r11;
    report.R12 = mean.r12;
    report.R0_abs2_mean = mean.r0_abs2_mean;
    report.inputs = std::move(inputs);
    return with_t_b(report, config.tb_mode, config.t_b_fixed);
}

FidelityReport with_t_b(const FidelityReport& base, TbMode mode, double t_b_fixed) {
    if (base.inputs.empty()) throw Error(ErrorKind::Dimension, "with_t_b: report carries no gate inputs");
    FidelityReport report = base;
    GateInputs mean{report.eta_eit, report.R0_mean, report.R0_abs2_mean, report.R11, report.R12};
    switch (mode) {
        case TbMode::One: report.t_b = 1.0; break;
        case TbMode::MatchR0: report.t_b = report.R0.real(); break;
        case TbMode::Optimized: report.t_b = optimal_t_b(mean); break;
        case TbMode::Fixed: report.t_b = t_b_fixed; break;
    }
    const double count = double(report.inputs.size());
    report.F_cj = 0.0;
    report.P_suc = 0.0;
    for (const auto& in : report.inputs) {
        report.F_cj += f_cj(in, report.t_b) / count;
        report.P_suc += p_suc(in, report.t_b) / count;
    }
    report.F_cj_cond = report.P_suc > 0.0 ? report.F_cj / report.P_suc : 0.0;
    return report;
}

}  // namespace sgate
