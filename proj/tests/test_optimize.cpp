// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sgate/optimize.hpp"

using namespace sgate;

namespace {

GateConfig optimal_gate(long n) {
    GateConfig cfg;
    cfg.ensemble.N = n;
    cfg.ensemble.omega0 = 1.0;
    const OptimalParams opt = optimal_params(double(n), cfg.ensemble.gamma_1d);
    cfg.ensemble.delta_c = opt.delta_c;
    cfg.sigma_tilde = opt.sigma_tilde;
    return cfg;
}

}  // namespace

TEST(GoldenSection, FindsParabolaPeak) {
    int calls = 0;
    const auto f = [&](double x) {
        ++calls;
        return 3.0 - (x - 0.3) * (x - 0.3);
    };
    const GoldenResult r = golden_section_maximize(f, -2.0, 1.0, 1e-8);
    EXPECT_NEAR(r.x, 0.3, 1e-7);
    EXPECT_NEAR(r.value, 3.0, 1e-12);
    EXPECT_EQ(r.evaluations, calls);
    // Peak on the boundary.
    EXPECT_NEAR(golden_section_maximize([](double x) { return x; }, 0.0, 1.0, 1e-8).x, 1.0, 1e-7);
}

TEST(NelderMead, OneParameterQuadratic) {
    const auto f = [](const std::vector<double>& p) { return -(p[0] - 0.37) * (p[0] - 0.37); };
    NelderMeadOptions o;
    o.value_tol = 1e-14;
    o.point_rel_tol = 1e-9;
    o.max_evaluations = 400;
    const OptResult r = nelder_mead_maximize(f, {0.1}, {{-1.0, 1.0}}, o);
    EXPECT_NEAR(r.best_point[0], 0.37, 1e-6);
}

TEST(NelderMead, TwoParameterQuadraticAndTrace) {
    const auto f = [](const std::vector<double>& p) {
        return 1.0 - (p[0] - 2.0) * (p[0] - 2.0) - 4.0 * (p[1] + 1.0) * (p[1] + 1.0) - (p[0] - 2.0) * (p[1] + 1.0);
    };
    NelderMeadOptions o;
    o.value_tol = 1e-14;
    o.point_rel_tol = 1e-9;
    o.max_evaluations = 600;
    const OptResult r = nelder_mead_maximize(f, {0.0, 0.0}, {{-5.0, 5.0}, {-5.0, 5.0}}, o);
    EXPECT_NEAR(r.best_point[0], 2.0, 1e-5);
    EXPECT_NEAR(r.best_point[1], -1.0, 1e-5);
    EXPECT_LE(int(r.trace.size()), o.max_evaluations);
    // The reported best is the best entry of the trace.
    double best = -HUGE_VAL;
    for (const auto& e : r.trace) best = std::max(best, e.value);
    EXPECT_EQ(best, r.best_value);
    EXPECT_EQ(r.trace.front().point, (std::vector<double>{0.0, 0.0}));
}

TEST(NelderMead, StaysInsideBounds) {
    // The unconstrained maximum lies outside the box.
    const auto f = [](const std::vector<double>& p) { return p[0] + p[1]; };
    const OptResult r = nelder_mead_maximize(f, {0.5, 0.5}, {{0.0, 1.0}, {0.0, 2.0}});
    for (const auto& e : r.trace) {
        EXPECT_GE(e.point[0], 0.0);
        EXPECT_LE(e.point[0], 1.0);
        EXPECT_GE(e.point[1], 0.0);
        EXPECT_LE(e.point[1], 2.0);
    }
    EXPECT_NEAR(r.best_value, 3.0, 1e-3);
}

TEST(NelderMead, DeterministicAndNeverWorseThanSeed) {
    const auto f = [](const std::vector<double>& p) { return std::sin(3.0 * p[0]) * std::cos(2.0 * p[1]); };
    const std::vector<double> seed{0.2, 0.7};
    const OptResult a = nelder_mead_maximize(f, seed, {{-2.0, 2.0}, {-2.0, 2.0}});
    const OptResult b = nelder_mead_maximize(f, seed, {{-2.0, 2.0}, {-2.0, 2.0}});
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        EXPECT_EQ(a.trace[i].point, b.trace[i].point);
        EXPECT_EQ(a.trace[i].value, b.trace[i].value);
    }
    EXPECT_GE(a.best_value, f(seed));
}

TEST(NelderMead, NonFiniteRegionsAndFailure) {
    // NaN away from a small island: the optimizer keeps finite points only.
    const auto island = [](const std::vector<double>& p) {
        return p[0] < 0.5 ? -(p[0] - 0.2) * (p[0] - 0.2) : std::numeric_limits<double>::quiet_NaN();
    };
    const OptResult r = nelder_mead_maximize(island, {0.3}, {{0.0, 1.0}});
    EXPECT_TRUE(std::isfinite(r.best_value));
    EXPECT_LT(r.best_point[0], 0.5);

    const auto nan = [](const std::vector<double>&) { return std::numeric_limits<double>::quiet_NaN(); };
    try {
        nelder_mead_maximize(nan, {0.3, 0.3}, {{0.0, 1.0}, {0.0, 1.0}});
        FAIL() << "expected OptimizationFailure";
    } catch (const OptimizationFailure& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OptimizationFailed);
        EXPECT_FALSE(e.trace().empty());
        EXPECT_EQ(e.trace().front().point, (std::vector<double>{0.3, 0.3}));
    }
}

TEST(NelderMead, RejectsSeedOutsideBounds) {
    const auto f = [](const std::vector<double>& p) { return p[0]; };
    EXPECT_THROW(nelder_mead_maximize(f, {2.0}, {{0.0, 1.0}}), Error);
    EXPECT_THROW(nelder_mead_maximize(f, {0.5, 0.5}, {{0.0, 1.0}}), Error);
}

TEST(OptSpec, ValidationRules) {
    const GateConfig base = optimal_gate(1000);
    OptSpec spec = default_opt_spec(base, Objective::Unconditional, {FreeParam::DeltaC, FreeParam::SigmaTilde});
    EXPECT_NO_THROW(spec.validate());
    OptSpec low = spec;
    low.budget = 19;
    EXPECT_THROW(low.validate(), Error);
    OptSpec outside = spec;
    outside.seed_point[0] = outside.bounds[0].hi + 1.0;
    EXPECT_THROW(outside.validate(), Error);
    OptSpec dup = spec;
    dup.free_params = {FreeParam::DeltaC, FreeParam::DeltaC};
    EXPECT_THROW(dup.validate(), Error);
    OptSpec sizes = spec;
    sizes.bounds.pop_back();
    EXPECT_THROW(sizes.validate(), Error);
}

TEST(OptSpec, DefaultSeedAndBounds) {
    const GateConfig base = optimal_gate(10000);
    const OptimalParams opt = optimal_params(1e4, 0.05);
    const OptSpec spec = default_opt_spec(base, Objective::Conditional,
                                          {FreeParam::DeltaC, FreeParam::SigmaTilde, FreeParam::TB});
    ASSERT_EQ(spec.seed_point.size(), 3u);
    EXPECT_DOUBLE_EQ(spec.seed_point[0], opt.delta_c);
    EXPECT_DOUBLE_EQ(spec.seed_point[1], opt.sigma_tilde);
    EXPECT_DOUBLE_EQ(spec.seed_point[2], 1.0);
    EXPECT_DOUBLE_EQ(spec.bounds[0].lo, 3.0 * opt.delta_c);
    EXPECT_DOUBLE_EQ(spec.bounds[0].hi, opt.delta_c / 3.0);
    EXPECT_DOUBLE_EQ(spec.bounds[1].lo, opt.sigma_tilde / 3.0);
    EXPECT_DOUBLE_EQ(spec.bounds[1].hi, std::min(3.0 * opt.sigma_tilde, 0.45));
    EXPECT_DOUBLE_EQ(spec.bounds[2].lo, 0.0);
    EXPECT_DOUBLE_EQ(spec.bounds[2].hi, 1.0);
}

TEST(OptSpec, ApplyPoint) {
    const GateConfig base = optimal_gate(1000);
    const OptSpec spec = default_opt_spec(base, Objective::Conditional,
                                          {FreeParam::SigmaTilde, FreeParam::TB, FreeParam::DeltaC});
    const GateConfig c = apply_point(base, spec, {0.2, 0.7, -4.0});
    EXPECT_EQ(c.sigma_tilde, 0.2);
    EXPECT_EQ(c.tb_mode, TbMode::Fixed);
    EXPECT_EQ(c.t_b_fixed, 0.7);
    EXPECT_EQ(c.ensemble.delta_c, -4.0);
    EXPECT_EQ(base.tb_mode, TbMode::One);
}

TEST(Maximize, ImprovesOnSeedAndIsReproducible) {
    const GateConfig base = optimal_gate(1000);
    const OptSpec spec = default_opt_spec(base, Objective::Unconditional, {FreeParam::DeltaC, FreeParam::SigmaTilde}, 20);
    const GateOptResult a = maximize(spec, base);
    const GateOptResult b = maximize(spec, base);
    EXPECT_EQ(a.opt.best_point, b.opt.best_point);
    EXPECT_EQ(a.opt.best_value, b.opt.best_value);
    EXPECT_LE(int(a.opt.trace.size()), 20);
    EXPECT_GE(a.opt.best_value, evaluate_gate(base).F_cj);
    EXPECT_DOUBLE_EQ(a.best_report.F_cj, a.opt.best_value);
    EXPECT_EQ(a.best_config.ensemble.delta_c, a.opt.best_point[0]);
}

TEST(Maximize, ConditionalTbMatchesLineSearch) {
    // With only t_b free the optimizer searches real t_b ∈ [0, 1]; the overlaps do
    // not depend on t_b, so a golden-section search over with_t_b is exact.
    const GateConfig base = optimal_gate(1000);
    const OptSpec spec = default_opt_spec(base, Objective::Conditional, {FreeParam::TB}, 40);
    const GateOptResult r = maximize(spec, base);
    const FidelityReport report = evaluate_gate(base);
    const GoldenResult line = golden_section_maximize(
        [&](double t) { return with_t_b(report, TbMode::Fixed, t).F_cj_cond; }, 0.0, 1.0, 1e-6);
    EXPECT_NEAR(r.opt.best_point[0], line.x, 0.02);
    EXPECT_NEAR(r.opt.best_value, line.value, 1e-4);
    // The complex closed-form t_b can only do better.
    EXPECT_GE(with_t_b(report, TbMode::Optimized).F_cj_cond, line.value - 1e-12);
}

TEST(Sweep, ParamNamesRoundTrip) {
    for (SweepParam p : {SweepParam::N, SweepParam::DeltaC, SweepParam::SigmaTilde, SweepParam::Omega0,
                         SweepParam::D, SweepParam::GammaOneD, SweepParam::K0L1, SweepParam::K0L2,
                         SweepParam::TbFixed}) {
        EXPECT_EQ(sweep_param_from_string(to_string(p)), p);
    }
    EXPECT_THROW(sweep_param_from_string("bogus"), Error);
}

TEST(Sweep, PointConstruction) {
    GateConfig base = optimal_gate(1000);
    base.delta_res = 0.1;
    EXPECT_EQ(sweep_point(SweepParam::N, 1000.6, base, false).ensemble.N, 1002);
    EXPECT_EQ(sweep_point(SweepParam::N, 1233.0, base, false).ensemble.N, 1234);
    GateConfig dv = base;
    dv.ensemble.scheme = Scheme::DualV;
    EXPECT_EQ(sweep_point(SweepParam::N, 1233.0, dv, false).ensemble.N, 1233);
    const GateConfig follow = sweep_point(SweepParam::N, 4000.0, base, true);
    EXPECT_DOUBLE_EQ(follow.ensemble.delta_c, optimal_params(4000.0, 0.05).delta_c);
    EXPECT_FALSE(follow.delta_res.has_value());
    // Arm phases keep a pinned resonance.
    EXPECT_TRUE(sweep_point(SweepParam::K0L1, 0.05, base, false).delta_res.has_value());
    EXPECT_EQ(sweep_point(SweepParam::TbFixed, 0.8, base, false).tb_mode, TbMode::Fixed);
}

TEST(Sweep, GridOrderThreadsAndErrors) {
    const GateConfig base = optimal_gate(200);
    const std::vector<double> grid{0.08, -0.1, 0.12, 0.2};  // a negative width is invalid
    SweepOptions one;
    SweepOptions four;
    four.threads = 4;
    const auto a = sweep(SweepParam::SigmaTilde, grid, base, one);
    const auto b = sweep(SweepParam::SigmaTilde, grid, base, four);
    ASSERT_EQ(a.size(), grid.size());
    ASSERT_EQ(b.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(a[i].value, grid[i]);
        EXPECT_EQ(a[i].report.has_value(), b[i].report.has_value());
        if (a[i].report) EXPECT_EQ(a[i].report->F_cj, b[i].report->F_cj);
    }
    EXPECT_FALSE(a[1].report.has_value());
    ASSERT_TRUE(a[1].error.has_value());
    EXPECT_NE(a[1].error->find("config"), std::string::npos);
    EXPECT_TRUE(a[0].report && a[2].report && a[3].report);
}
