// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/eit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

namespace sgate {

namespace {

double trapezoid_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

// e^{−x}·I₀(x) for x ≥ 0 without overflow.
double scaled_bessel_i0(double x) {
    if (x < 700.0) return std::exp(-x) * boost::math::cyl_bessel_i(0, x);
    // Hankel asymptotic series; at x ≥ 700 four terms reach double precision.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 6; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
    }
    return sum / std::sqrt(2.0 * pi * x);
}

// Kernel ingredients shared by the exact and asymptotic forms:
// u = |Ω|√t, v = √(b·z̃), γ = Γ'/2, x = 2uv/γ.
struct KernelArgs {
    double prefactor;  // √b·|Ω|/γ
    double u, v, gamma, x;
};

KernelArgs kernel_args(double z_tilde, double t, const EitParams& params) {
    if (t < 0.0) throw Error(ErrorKind::Dimension, "kernel: negative time");
    KernelArgs k{};
    k.gamma = 0.5 * params.gamma_prime();
    k.prefactor = std::sqrt(params.b()) * params.omega / k.gamma;
    k.u = std::abs(params.omega) * std::sqrt(t);
    k.v = std::sqrt(params.b() * std::max(z_tilde, 0.0));
    k.x = 2.0 * k.u * k.v / k.gamma;
    return k;
}

double gaussian_value(double t, double sigma, double mu) {
    const double s = t - mu;
    return std::exp(-s * s / (4.0 * sigma * sigma)) / std::pow(2.0 * pi * sigma * sigma, 0.25);
}

// Kernel-model time step: resolve both the input pulse and the kernel width
// ≈ 2√(γ·b·z̃)/|Ω|² evaluated at the inner edge of the stored wave.
double kernel_time_step(const EitParams& params, double sigma_in,
                        const NumericSettings& settings) {
    const double gamma = 0.5 * params.gamma_prime();
    const double z_edge = std::max(0.5 - 3.0 * params.sigma_tilde, 1.0 / double(std::max(params.N, 1L)));
    const double kernel_width = 2.0 * std::sqrt(gamma * params.b() * z_edge) / (params.omega * params.omega);
    double width = kernel_width;
    if (sigma_in > 0.0) width = std::min(width, sigma_in);
    return width / settings.kernel_points_per_width;
}

// Chooses the number of intervals for [0, span] given a target step.
std::size_t grid_points(double span, double target_dt, const NumericSettings& settings) {
    double intervals = std::ceil(span / target_dt);
    intervals = std::max(intervals, double(settings.kernel_min_time_points - 1));
    intervals = std::min(intervals, double(settings.kernel_max_time_points - 1));
    return static_cast<std::size_t>(intervals) + 1;
}

// Catmull–Rom interpolation of a uniformly sampled packet (zero outside).
cplx sample_packet(const WavePacket& p, double t) {
    if (p.amplitudes.empty() || p.dt <= 0.0) return 0.0;
    const double pos = (t - p.t0) / p.dt;
    const auto n = static_cast<long>(p.amplitudes.size());
    const long k = static_cast<long>(std::floor(pos));
    if (k < -1 || k > n - 1) return 0.0;
    auto at = [&](long i) -> cplx { return (i < 0 || i >= n) ? cplx{} : p.amplitudes[std::size_t(i)]; };
    const double s = pos - double(k);
    const cplx p0 = at(k - 1), p1 = at(k), p2 = at(k + 1), p3 = at(k + 2);
    return 0.5 * (2.0 * p1 + (p2 - p0) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                  (3.0 * (p1 - p2) + p3 - p0) * s * s * s);
}

}  // namespace

cplx EitParams::alpha_tilde() const {
    const double bb = b();
    return -I * gamma_prime() * omega * omega / (bb * bb);
}

void EitParams::validate() const {
    if (N < 1) throw Error(ErrorKind::Config, "eit: N must be positive");
    if (!(gamma_1d > 0.0 && gamma_1d <= 1.0)) throw Error(ErrorKind::Config, "eit: gamma_1d must lie in (0, 1]");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorKind::Config, "eit: omega must be positive");
    if (!(sigma_tilde > 0.0) || !std::isfinite(sigma_tilde)) {
        throw Error(ErrorKind::Config, "eit: sigma_tilde must be positive");
    }
}

double WavePacket::norm2() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        sum += trapezoid_weight(i, amplitudes.size()) * std::norm(amplitudes[i]);
    }
    return sum * dt;
}

cplx overlap(const WavePacket& a, const WavePacket& b) {
    if (a.amplitudes.size() != b.amplitudes.size() || std::abs(a.dt - b.dt) > 1e-12 * std::abs(a.dt) ||
        std::abs(a.t0 - b.t0) > 1e-12 * std::max(1.0, std::abs(a.t0))) {
        throw Error(ErrorKind::Dimension, "overlap: wave packets are on different grids");
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        sum += trapezoid_weight(i, a.amplitudes.size()) * std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return sum * a.dt;
}

double SpinWave::norm2() const {
    double sum = 0.0;
    for (const cplx& s : modes) sum += std::norm(s);
    if (modes.empty()) {
        for (const cplx& s : atoms) sum += std::norm(s);
    }
    return sum;
}

double eta_eit_analytic(const EitParams& params) {
    const double s2 = params.sigma_tilde * params.sigma_tilde;
    return 1.0 / std::sqrt(1.0 + params.gamma_prime() / (double(params.N) * params.gamma_1d * s2));
}

double eta_eit_first_order(const EitParams& params) {
    const double s2 = params.sigma_tilde * params.sigma_tilde;
    return 1.0 - 0.5 * params.gamma_prime() / (double(params.N) * params.gamma_1d * s2);
}

WavePacket gaussian_input(const EitParams& params, double dt, const NumericSettings& settings) {
    params.validate();
    const double v = params.v_g_tilde();
    const double s2 = params.sigma_tilde * params.sigma_tilde;
    const double broadening = 1.0 + params.gamma_prime() / (2.0 * double(params.N) * params.gamma_1d * s2);
    WavePacket p;
    p.sigma_in = (params.sigma_tilde / v) / std::sqrt(broadening);
    p.mu_in = 4.0 * p.sigma_in;
    const double stop = p.mu_in + 0.5 / v;
    if (dt <= 0.0) {
        const std::size_t n = grid_points(stop, kernel_time_step(params, p.sigma_in, settings), settings);
        dt = stop / double(n - 1);
    }
    if (p.sigma_in < 4.0 * dt) {
        throw Error(ErrorKind::Resolution,
                    "gaussian_input: grid too coarse (sigma_in < 4 dt)", p.sigma_in / dt);
    }
    const auto n = static_cast<std::size_t>(std::llround(stop / dt)) + 1;
    p.t0 = 0.0;
    p.dt = dt;
    p.amplitudes.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.amplitudes[i] = gaussian_value(p.time(i), p.sigma_in, p.mu_in);
    // Renormalise on the grid so the discrete norm is exactly one.
    const double norm = std::sqrt(p.norm2());
    for (cplx& a : p.amplitudes) a /= norm;
    return p;
}

double dispersion_norm2(const EitParams& params, double sigma_in_tilde, double t) {
    const cplx factor = 1.0 + I * params.alpha_tilde() * t / (2.0 * sigma_in_tilde * sigma_in_tilde);
    return 1.0 / std::sqrt(std::abs(factor));
}

SpinWave store_dispersion(const WavePacket& input, const EitParams& params) {
    params.validate();
    if (!(input.sigma_in > 0.0)) {
        throw Error(ErrorKind::Config, "store_dispersion: input must be a Gaussian packet");
    }
    const double v = params.v_g_tilde();
    const double sigma0 = input.sigma_in * v;  // spatial width on entering the medium
    const double t = 0.5 / v;                  // propagate to the middle
    const cplx broad = 1.0 + I * params.alpha_tilde() * t / (2.0 * sigma0 * sigma0);
    const cplx amp = std::pow(2.0 * pi * sigma0 * sigma0, -0.25) / std::sqrt(broad);
    const auto n = static_cast<std::size_t>(params.N);
    const double weight = 1.0 / std::sqrt(2.0 * double(n));
    SpinWave s;
    s.modes.assign(2 * n, 0.0);
    auto profile = [&](double z) {
        const double d = z - v * t;
        // Sign matches the kernel model (the spin wave is −E·g/Ω for a dark state).
        return -amp * std::exp(-d * d / (4.0 * sigma0 * sigma0 * broad));
    };
    for (std::size_t j = 0; j < n; ++j) {
        const double z = double(j) / double(n);
        s.modes[j] = weight * profile(z);
        s.modes[n + j] = weight * profile(1.0 - z);
    }
    return s;
}

cplx storage_kernel_exact(double z_tilde, double t, const EitParams& params) {
    const KernelArgs k = kernel_args(z_tilde, t, params);
    const double d = k.u - k.v;
    return -k.prefactor * scaled_bessel_i0(k.x) * std::exp(-d * d / k.gamma);
}

cplx storage_kernel_asymptotic(double z_tilde, double t, const EitParams& params) {
    const KernelArgs k = kernel_args(z_tilde, t, params);
    if (!(k.x > 0.0)) throw Error(ErrorKind::Dimension, "kernel: asymptotic form needs x > 0");
    const double d = k.u - k.v;
    return -k.prefactor * std::exp(-d * d / k.gamma) / std::sqrt(2.0 * pi * k.x);
}

cplx storage_kernel(double z_tilde, double t, const EitParams& params, const NumericSettings& settings) {
    const KernelArgs k = kernel_args(z_tilde, t, params);
    const double d = k.u - k.v;
    const double gauss = std::exp(-d * d / k.gamma);
    if (k.x >= settings.kernel_asymptotic_min_x) return -k.prefactor * gauss / std::sqrt(2.0 * pi * k.x);
    return -k.prefactor * scaled_bessel_i0(k.x) * gauss;
}

cplx retrieval_kernel(double z_tilde, double t, const EitParams& params, const NumericSettings& settings) {
    return storage_kernel(1.0 - z_tilde, t, params, settings);
}

SpinWave store_kernel_model(const WavePacket& input, const EitParams& params,
                            const NumericSettings& settings) {
    params.validate();
    const auto n = static_cast<std::size_t>(params.N);
    const double stop = input.mu_in + 0.5 / params.v_g_tilde();
    const std::size_t nt = input.amplitudes.size();
    // Only samples up to the stop time contribute.
    double peak = 0.0;
    for (const cplx& a : input.amplitudes) peak = std::max(peak, std::abs(a));
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < nt; ++i) {
        if (input.time(i) <= stop + 1e-12 * stop && std::abs(input.amplitudes[i]) > 1e-17 * peak) {
            active.push_back(i);
        }
    }
    // A_k = ∫K_s(k/N, T − t)φ(t)dt on the z-grid k = 0..N; then
    // S₊,j = A_j/√(2N) and S₋,m = A_{N−m}/√(2N) (input split 1/√2, weight 1/√N).
    std::vector<cplx> acc(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        const double z = double(k) / double(n);
        cplx sum = 0.0;
        for (std::size_t i : active) {
            const double tau = std::max(stop - input.time(i), 0.0);
            sum += trapezoid_weight(i, nt) * storage_kernel(z, tau, params, settings) * input.amplitudes[i];
        }
        acc[k] = sum * input.dt;
    }
    const double weight = 1.0 / std::sqrt(2.0 * double(n));
    SpinWave s;
    s.modes.resize(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        s.modes[j] = acc[j] * weight;
        s.modes[n + j] = acc[n - j] * weight;
    }
    return s;
}

WavePacket retrieval_grid(const EitParams& params, const NumericSettings& settings) {
    params.validate();
    const double stop = 1.0 / params.v_g_tilde();
    const std::size_t n = grid_points(stop, kernel_time_step(params, 0.0, settings), settings);
    WavePacket p;
    p.t0 = 0.0;
    p.dt = stop / double(n - 1);
    p.amplitudes.assign(n, 0.0);
    return p;
}

WavePacket retrieve_kernel_model(const SpinWave& spin, const EitParams& params,
                                 const NumericSettings& settings) {
    const auto n = static_cast<std::size_t>(params.N);
    if (spin.modes.size() != 2 * n) {
        throw Error(ErrorKind::Dimension, "retrieve_kernel_model: spin wave must have 2N modes");
    }
    // Gather onto the kernel grid: Φ₊ uses K_r(j/N) on S₊,j and Φ₋ uses
    // K_r(1 − m/N) = K_r((N−m)/N) on S₋,m.
    std::vector<cplx> c(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        c[j] += spin.modes[j];
        c[n - j] += spin.modes[n + j];
    }
    double peak = 0.0;
    for (const cplx& v : c) peak = std::max(peak, std::abs(v));
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k <= n; ++k) {
        if (std::abs(c[k]) > 1e-17 * peak) active.push_back(k);
    }
    WavePacket out = retrieval_grid(params, settings);
    const double weight = 1.0 / std::sqrt(2.0 * double(n));
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
        const double t = out.time(i);
        cplx sum = 0.0;
        for (std::size_t k : active) {
            sum += retrieval_kernel(double(k) / double(n), t, params, settings) * c[k];
        }
        out.amplitudes[i] = sum * weight;
    }
    return out;
}

SpinWave apply_site_factor(const SpinWave& spin, const std::vector<cplx>& factor) {
    SpinWave out = spin;
    if (!spin.modes.empty()) {
        const std::size_t n = spin.modes.size() / 2;
        if (factor.size() != n) throw Error(ErrorKind::Dimension, "apply_site_factor: factor length != N");
        for (std::size_t j = 0; j < n; ++j) {
            out.modes[j] *= factor[j];
            out.modes[n + j] *= factor[j];
        }
    }
    if (!spin.atoms.empty()) {
        if (factor.size() != spin.atoms.size()) {
            throw Error(ErrorKind::Dimension, "apply_site_factor: factor length != atom count");
        }
        for (std::size_t j = 0; j < spin.atoms.size(); ++j) out.atoms[j] *= factor[j];
    }
    return out;
}

std::vector<cplx> project_to_atoms(const SpinWave& spin, const std::vector<double>& positions) {
    const std::size_t n = spin.modes.size() / 2;
    if (spin.modes.size() != 2 * n || positions.size() != n) {
        throw Error(ErrorKind::Dimension, "project_to_atoms: need 2N modes and N positions");
    }
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx phase = std::exp(I * pi * positions[j]);
        out[j] = spin.modes[j] * phase + spin.modes[n + j] / phase;
    }
    return out;
}

DiscreteModel make_discrete_model(const EitParams& params, const Placement& placement) {
    params.validate();
    EnsembleSpec spec;
    spec.N = params.N;
    spec.scheme = Scheme::DualV;  // only the placement is used here
    spec.gamma_1d = params.gamma_1d;
    spec.placement = placement;
    DiscreteModel m;
    m.params = params;
    m.positions = atom_positions(spec);
    return m;
}

namespace {

// State of the discrete model: P and S per atom plus the two accumulated
// energies used by the conservation ledger.
struct DiscreteState {
    std::vector<cplx> P, S;
    double e_in = 0.0, e_out = 0.0;
};

class DiscreteSystem {
public:
    explicit DiscreteSystem(const DiscreteModel& model) : model_(model) {
        const std::size_t n = model.positions.size();
        phase_.resize(n);
        for (std::size_t j = 0; j < n; ++j) phase_[j] = std::exp(I * pi * model.positions[j]);
        coupling_ = std::sqrt(0.5 * model.params.gamma_1d);
        left_.resize(n);
    }

    std::size_t size() const { return phase_.size(); }

    // Outgoing fields Φ₊(L) (phase referenced to z = 0) and Φ₋(0).
    std::pair<cplx, cplx> outputs(const std::vector<cplx>& P, cplx a, cplx b) const {
        cplx sp = 0.0, sm = 0.0;
        for (std::size_t j = 0; j < P.size(); ++j) {
            sp += P[j] / phase_[j];
            sm += P[j] * phase_[j];
        }
        return {a + I * coupling_ * sp, b + I * coupling_ * sm};
    }

    // Derivative at inputs (a, b) = (Φ₊in, Φ₋in) referenced to z = 0.
    void rhs(const DiscreteState& x, cplx a, cplx b, DiscreteState& dx) {
        const std::size_t n = size();
        const double g1d = model_.params.gamma_1d;
        const double gp = 1.0 - g1d;
        const double om = model_.params.omega;
        // C_j = Σ P_j' e^{ik|z_j − z_j'|} split into j' ≤ j and j' > j sweeps.
        cplx run = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            run += x.P[j] / phase_[j];
            left_[j] = run;
        }
        cplx right = 0.0;
        dx.P.resize(n);
        dx.S.resize(n);
        for (std::size_t jj = n; jj-- > 0;) {
            const cplx c = phase_[jj] * left_[jj] + right / phase_[jj];
            right += x.P[jj] * phase_[jj];
            dx.P[jj] = -0.5 * gp * x.P[jj] + I * om * x.S[jj] - 0.5 * g1d * c +
                       I * coupling_ * (a * phase_[jj] + b / phase_[jj]);
            dx.S[jj] = I * om * x.P[jj];
        }
        const auto [op, om_out] = outputs(x.P, a, b);
        dx.e_in = std::norm(a) + std::norm(b);
        dx.e_out = std::norm(op) + std::norm(om_out);
    }

private:
    const DiscreteModel& model_;
    std::vector<cplx> phase_;
    std::vector<cplx> left_;
    double coupling_;
};

void axpy(DiscreteState& out, const DiscreteState& x, double h, const DiscreteState& k) {
    const std::size_t n = x.P.size();
    out.P.resize(n);
    out.S.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.P[j] = x.P[j] + h * k.P[j];
        out.S[j] = x.S[j] + h * k.S[j];
    }
    out.e_in = x.e_in + h * k.e_in;
    out.e_out = x.e_out + h * k.e_out;
}

bool finite_state(const DiscreteState& x) {
    for (std::size_t j = 0; j < x.P.size(); ++j) {
        if (!std::isfinite(x.P[j].real()) || !std::isfinite(x.P[j].imag()) ||
            !std::isfinite(x.S[j].real()) || !std::isfinite(x.S[j].imag())) {
            return false;
        }
    }
    return std::isfinite(x.e_in) && std::isfinite(x.e_out);
}

double atomic_energy(const DiscreteState& x) {
    double e = 0.0;
    for (std::size_t j = 0; j < x.P.size(); ++j) e += std::norm(x.P[j]) + std::norm(x.S[j]);
    return e;
}

struct DiscreteRun {
    DiscreteState state;
    WavePacket output;  // (Φ₊(L) + Φ₋(0))/√2 at every step
};

// Integrates from `initial` over [0, stop] with input φ(t)/√2 on both sides
// (`input` may be null for zero input). Halves the step on failure.
DiscreteRun integrate_discrete(const DiscreteModel& model, const DiscreteState& initial,
                               const WavePacket* input, double stop, double sigma_in,
                               const NumericSettings& settings) {
    const double om = model.params.omega;
    double h = std::min({0.05 / om, 0.05, sigma_in > 0.0 ? sigma_in / 50.0 : 0.05});
    const cplx split = 1.0 / std::sqrt(2.0);
    DiscreteSystem sys(model);
    // Energy the atoms may legitimately hold: initial content plus all input.
    const double budget = atomic_energy(initial) + (input ? input->norm2() : 0.0);
    for (int attempt = 0; attempt <= settings.discrete_retry_budget; ++attempt, h *= 0.5) {
        const auto steps = static_cast<std::size_t>(std::ceil(stop / h));
        const double step = stop / double(std::max<std::size_t>(steps, 1));
        DiscreteRun run;
        run.state = initial;
        run.output.t0 = 0.0;
        run.output.dt = step;
        run.output.amplitudes.reserve(steps + 1);
        DiscreteState k1, k2, k3, k4, tmp;
        auto in = [&](double t) -> cplx { return input ? split * sample_packet(*input, t) : cplx{}; };
        auto record = [&](double t) {
            const cplx a = in(t);
            const auto [op, omn] = sys.outputs(run.state.P, a, a);
            run.output.amplitudes.push_back((op + omn) * split);
        };
        record(0.0);
        bool ok = true;
        for (std::size_t s = 0; s < steps; ++s) {
            const double t = double(s) * step;
            const cplx a0 = in(t), a1 = in(t + 0.5 * step), a2 = in(t + step);
            sys.rhs(run.state, a0, a0, k1);
            axpy(tmp, run.state, 0.5 * step, k1);
            sys.rhs(tmp, a1, a1, k2);
            axpy(tmp, run.state, 0.5 * step, k2);
            sys.rhs(tmp, a1, a1, k3);
            axpy(tmp, run.state, step, k3);
            sys.rhs(tmp, a2, a2, k4);
            DiscreteState& x = run.state;
            for (std::size_t j = 0; j < x.P.size(); ++j) {
                x.P[j] += step / 6.0 * (k1.P[j] + 2.0 * k2.P[j] + 2.0 * k3.P[j] + k4.P[j]);
                x.S[j] += step / 6.0 * (k1.S[j] + 2.0 * k2.S[j] + 2.0 * k3.S[j] + k4.S[j]);
            }
            x.e_in += step / 6.0 * (k1.e_in + 2.0 * k2.e_in + 2.0 * k3.e_in + k4.e_in);
            x.e_out += step / 6.0 * (k1.e_out + 2.0 * k2.e_out + 2.0 * k3.e_out + k4.e_out);
            // A passive system can never hold more than it was given.
            if (!finite_state(x) || atomic_energy(x) > budget * (1.0 + 1e-6) + 1e-12) {
                ok = false;
                break;
            }
            record(t + step);
        }
        if (ok) return run;
    }
    throw Error(ErrorKind::Integration, "discrete model: step rejected beyond the retry budget",
                double(settings.discrete_retry_budget));
}

void check_atom_cap(const DiscreteModel& model, const NumericSettings& settings) {
    if (model.positions.empty()) throw Error(ErrorKind::Config, "discrete model: no atoms");
    if (static_cast<long>(model.positions.size()) > settings.discrete_max_atoms) {
        throw Error(ErrorKind::Config, "discrete model: N = " + std::to_string(model.positions.size()) +
                                           " exceeds the configured cap of " +
                                           std::to_string(settings.discrete_max_atoms) + " atoms");
    }
}

}  // namespace

SpinWave store_discrete_with_ledger(const WavePacket& input, const DiscreteModel& model,
                                    DiscreteLedger& ledger, const NumericSettings& settings) {
    check_atom_cap(model, settings);
    const std::size_t n = model.positions.size();
    DiscreteState x0;
    x0.P.assign(n, 0.0);
    x0.S.assign(n, 0.0);
    const double stop = input.mu_in + 0.5 / model.params.v_g_tilde();
    const DiscreteRun run = integrate_discrete(model, x0, &input, stop, input.sigma_in, settings);
    ledger.input_energy = run.state.e_in;
    ledger.output_energy = run.state.e_out;
    ledger.atomic_energy = atomic_energy(run.state);
    SpinWave s;
    s.atoms = run.state.S;
    return s;
}

SpinWave store_discrete(const WavePacket& input, const DiscreteModel& model,
                        const NumericSettings& settings) {
    DiscreteLedger ledger;
    return store_discrete_with_ledger(input, model, ledger, settings);
}

WavePacket retrieve_discrete(const SpinWave& spin, const DiscreteModel& model,
                             const NumericSettings& settings) {
    check_atom_cap(model, settings);
    const std::size_t n = model.positions.size();
    DiscreteState x0;
    x0.P.assign(n, 0.0);
    x0.S = spin.atoms.empty() ? project_to_atoms(spin, model.positions) : spin.atoms;
    if (x0.S.size() != n) throw Error(ErrorKind::Dimension, "retrieve_discrete: spin wave size != N");
    const double stop = 1.0 / model.params.v_g_tilde();
    return integrate_discrete(model, x0, nullptr, stop, 0.0, settings).output;
}

double profile_overlap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::Dimension, "profile_overlap: size mismatch");
    cplx ab = 0.0;
    double aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += std::conj(a[i]) * b[i];
        aa += std::norm(a[i]);
        bb += std::norm(b[i]);
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return std::norm(ab) / (aa * bb);
}

}  // namespace sgate
