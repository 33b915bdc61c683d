// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include "sgate/optimize.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

ComplexMat random_cell(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::uniform_real_distribution<double> phase(0.05, 3.0);
    const cplx beta{u(rng), u(rng)};
    return compose(free_matrix(phase(rng), 1), atom_matrix(beta));
}

// ------------------------------------------------------------ quick checks ---

Outcome check_cell_power(const NumericSettings& s) {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const ComplexMat cell = random_cell(rng);
        for (long n : {2L, 10L, 100L}) {
            ComplexMat direct = ComplexMat::Identity(2, 2);
            for (long i = 0; i < n; ++i) direct = cell * direct;
            const ComplexMat fast = cell_power(cell, n, s).matrix;
            worst = std::max(worst, (fast - direct).norm() / std::max(direct.norm(), 1e-300));
        }
    }
    return {worst < 1e-9, fmt("max rel diff %.2e (tol 1e-9)", worst)};
}

Outcome check_sagnac_ports(const NumericSettings&) {
    ScatterResult empty;
    empty.r_plus = empty.r_minus = 0.0;
    empty.t_plus = empty.t_minus = 1.0;
    const ComplexMat m = sagnac_matrix(empty, {});
    ScatterResult s;
    s.r_plus = {0.3, 0.1};
    s.r_minus = {0.3, 0.1};
    s.t_plus = s.t_minus = {-0.5, 0.2};
    const ComplexMat ms = sagnac_matrix(s, {0.3, 0.3});
    const double off = std::abs(m(0, 1)) + std::abs(m(1, 0)) + std::abs(ms(0, 1)) + std::abs(ms(1, 0));
    const double rdiff = std::abs(sagnac_reflection(s, {0.3, 0.3}) + ms(1, 1));
    return {off < 1e-14 && rdiff < 1e-14, fmt("off-diagonal %.1e, |R + M22| %.1e", off, rdiff)};
}

Outcome check_resonance(const NumericSettings& s) {
    EnsembleSpec spec;  // flagship parameters
    const double res = find_resonance(spec, s);
    const double seed = resonance_seed(spec);
    const double rel = std::abs(res / seed - 1.0);
    return {rel < 0.1, fmt("delta_res %.5f vs seed %.5f (rel %.3f, tol 0.1)", res, seed, rel)};
}

Outcome check_passivity(const NumericSettings& s) {
    EnsembleSpec spec;
    spec.N = 2000;
    double worst_excess = -1.0, worst_recip = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double delta = -0.5 + i * 0.025;
        const auto r = scatter(spec, delta, s);
        worst_excess = std::max(worst_excess, std::norm(r.r_plus) + std::norm(r.t_plus) - 1.0);
        worst_recip = std::max(worst_recip, std::abs(r.t_plus - r.t_minus));
    }
    return {worst_excess <= 1e-12 && worst_recip < 1e-9,
            fmt("max |r|^2+|t|^2-1 = %.1e, max |t+ - t-| = %.1e", worst_excess, worst_recip)};
}

Outcome check_eta_eit(const NumericSettings& s) {
    EitParams p;
    p.N = 10000;
    p.sigma_tilde = 0.1;
    const WavePacket in = gaussian_input(p, 0.0, s);
    const WavePacket out = retrieve_kernel_model(store_kernel_model(in, p, s), p, s);
    const double eta = out.norm2(), ref = eta_eit_analytic(p);
    const double rel = std::abs(eta / ref - 1.0);
    return {rel < 0.1, fmt("kernel %.4f vs closed form %.4f (rel %.3f, tol 0.1)", eta, ref, rel)};
}

Outcome check_kernel_forms(const NumericSettings&) {
    EitParams p;
    // Choose t so that x = 2Ω√(t·b·z̃)/γ = 50 at z̃ = 1/2.
    const double gamma = 0.5 * p.gamma_prime();
    const double x = 50.0;
    const double t = std::pow(x * gamma / (2.0 * p.omega), 2) / (p.b() * 0.5);
    const cplx exact = storage_kernel_exact(0.5, t, p);
    const cplx asym = storage_kernel_asymptotic(0.5, t, p);
    const double rel = std::abs(asym / exact - 1.0);
    const double expect = 1.0 / (8.0 * x);
    return {std::abs(rel - expect) < 0.1 * expect,
            fmt("rel diff %.3e vs leading correction 1/(8x) = %.3e", rel, expect)};
}

Outcome check_structural(const NumericSettings& s) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    double worst_pi = 0.0;
    for (int k = 0; k < 12; ++k) {
        GateConfig c;
        c.ensemble.N = 2 * (100 + static_cast<long>(u(rng) * 300));
        c.ensemble.gamma_1d = 0.02 + 0.2 * u(rng);
        c.ensemble.omega0 = 0.5 + 2.0 * u(rng);
        c.ensemble.delta_c = -(1.0 + 10.0 * u(rng));
        c.sigma_tilde = 0.08 + 0.2 * u(rng);
        c.tb_mode = TbMode::Fixed;
        c.t_b_fixed = u(rng);
        const auto r = evaluate_gate(c, s);
        const bool in_range = r.F_cj >= 0.0 && r.F_cj <= 1.0 + 1e-12 && r.P_suc >= 0.0 &&
                              r.P_suc <= 1.0 + 1e-12 && r.F_cj_cond >= 0.0 && r.F_cj_cond <= 1.0 + 1e-12;
        if (!in_range || r.F_cj > r.P_suc + 1e-12) ++bad;
        const double f = pi_pulse_fidelity_factor(0.3 * u(rng));
        worst_pi = std::max(worst_pi, std::abs((f * r.F_cj) / (f * r.P_suc) - r.F_cj_cond));
    }
    return {bad == 0 && worst_pi < 1e-12,
            fmt("%.0f violations of F <= P / range; pi-pulse invariance %.1e", bad, worst_pi)};
}

Outcome check_gate_time(const NumericSettings&) {
    const auto g = gate_time_budget(1e4, 0.05, 10.0);
    const double rel = std::abs(g.t_scatter / 52.0 - 1.0);
    return {rel < 0.03 && g.t_pi_min < 0.11, fmt("1/sigma_B = %.2f (52 +- 3%%), t_pi = %.3f", g.t_scatter, g.t_pi_min)};
}

Outcome check_optimizer(const NumericSettings&) {
    auto f = [](const std::vector<double>& x) { return 1.0 - (x[0] - 0.3) * (x[0] - 0.3); };
    NelderMeadOptions o;
    o.max_evaluations = 200;
    o.value_tol = 1e-14;
    o.point_rel_tol = 1e-9;
    const auto r = nelder_mead_maximize(f, {0.0}, {{-1.0, 1.0}}, o);
    const double err = std::abs(r.best_point[0] - 0.3);
    return {err < 1e-6, fmt("argmax error %.1e (tol 1e-6)", err)};
}

// ------------------------------------------------------------- full checks ---

Outcome check_discrete_kernel(const NumericSettings& s) {
    EitParams p;
    p.N = 2000;
    p.sigma_tilde = optimal_params(2000, p.gamma_1d).sigma_tilde;
    Placement pl;
    pl.d = 0.266;
    const auto model = make_discrete_model(p, pl);
    const WavePacket in = gaussian_input(p, 0.0, s);
    const SpinWave kern = store_kernel_model(in, p, s);
    const SpinWave disc = store_discrete(in, model, s);
    const double ov = profile_overlap(project_to_atoms(kern, model.positions), disc.atoms);
    return {ov >= 0.99, fmt("stored-spin-wave overlap %.5f (tol 0.99)", ov)};
}

Outcome check_fidelity_point(const NumericSettings& s) {
    GateConfig c;
    c.ensemble.omega0 = 1.0;
    const auto opt = optimal_params(1e4, 0.05);
    c.ensemble.delta_c = opt.delta_c;
    c.sigma_tilde = opt.sigma_tilde;
    const auto r = evaluate_gate(c, s);
    const auto r2 = with_t_b(r, TbMode::MatchR0);
    const bool ok = std::abs(r.F_cj_cond - 0.911) <= 0.03 && std::abs(r2.F_cj_cond - 0.992) <= 0.005;
    return {ok, fmt("F_cond(t_b=1) %.4f (0.911+-0.03), F_cond(t_b=R0) %.4f (0.992+-0.005)", r.F_cj_cond,
                    r2.F_cj_cond)};
}

Outcome check_dual_v_plateau(const NumericSettings& s) {
    double lo = 1.0, hi = 0.0;
    for (double d : {0.15, 0.266, 0.35}) {
        GateConfig c;
        c.ensemble.scheme = Scheme::DualV;
        c.ensemble.N = 1000;
        c.ensemble.omega0 = 1.0;
        c.ensemble.placement.d = d;
        const auto opt = optimal_params(1e3, 0.05);
        c.ensemble.delta_c = opt.delta_c;
        c.sigma_tilde = opt.sigma_tilde;
        const double f = evaluate_gate(c, s).F_cj_cond;
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    const double spread = (hi - lo) / hi;
    return {spread < 0.1, fmt("F_cond spread %.4f over k0 d (tol 0.1)", spread)};
}

Outcome check_misalignment(const NumericSettings& s) {
    const double n = 3e4, l = 0.05;
    GateConfig c;
    c.ensemble.N = 30000;
    c.ensemble.omega0 = 1.0;
    const auto opt = optimal_params(n, 0.05);
    c.ensemble.delta_c = opt.delta_c;
    c.sigma_tilde = opt.sigma_tilde;
    const auto base = evaluate_gate(c, s);
    c.delta_res = base.delta_res;
    c.geometry.k0_l1 = l;
    const double fp = evaluate_gate(c, s).F_cj;
    c.geometry.k0_l1 = -l;
    const double fm = evaluate_gate(c, s).F_cj;
    const double coef = (0.5 * (fp + fm) - base.F_cj) / (l * l);
    const double ref = misalignment_coefficient_short(n, 0.05);
    const double rel = std::abs(coef / ref - 1.0);
    return {rel < 0.1, fmt("N=3e4 coefficient %.4f vs %.4f (rel %.3f, tol 0.1)", coef, ref, rel)};
}

}  // namespace

std::vector<CheckResult> run_verify(const std::string& level, const NumericSettings& settings, int threads) {
    if (level != "quick" && level != "full") {
        throw Error(ErrorKind::Config, "verify level must be 'quick' or 'full' (got '" + level + "')");
    }
    if (threads < 1) throw Error(ErrorKind::Config, "threads must be at least 1");
    using Check = std::pair<const char*, std::function<Outcome(const NumericSettings&)>>;
    std::vector<Check> checks{
        {"cell_power closed form", check_cell_power},
        {"sagnac port structure", check_sagnac_ports},
        {"resonance position", check_resonance},
        {"passivity and reciprocity", check_passivity},
        {"kernel forms (x = 50)", check_kernel_forms},
        {"EIT efficiency", check_eta_eit},
        {"structural inequalities", check_structural},
        {"gate-time closed forms", check_gate_time},
        {"optimizer on quadratic", check_optimizer},
    };
    if (level == "full") {
        checks.push_back({"discrete vs kernel storage", check_discrete_kernel});
        checks.push_back({"F_cond point values N=1e4", check_fidelity_point});
        checks.push_back({"dual-V spacing plateau", check_dual_v_plateau});
        checks.push_back({"misalignment curvature", check_misalignment});
    }
    std::vector<CheckResult> out(checks.size());
    // Checks are independent; each one writes only its own slot.
    parallel_for(checks.size(), threads, [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        out[i].name = checks[i].first;
        try {
            const Outcome o = checks[i].second(settings);
            out[i].passed = o.passed;
            out[i].detail = o.detail;
        } catch (const Error& e) {
            out[i].passed = false;
            out[i].detail = std::string(to_string(e.kind())) + ": " + e.what();
        }
        out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    return out;
}

void print_verify_table(const std::vector<CheckResult>& results, std::ostream& out) {
    int failed = 0;
    char line[512];
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-4s  %-30s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                      r.seconds, r.detail.c_str());
        out << line;
        if (!r.passed) ++failed;
    }
    out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                        : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
        << "\n";
}

}  // namespace sgate
