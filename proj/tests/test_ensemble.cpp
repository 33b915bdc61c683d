// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sgate/ensemble.hpp"
#include "sgate/fidelity.hpp"

using namespace sgate;

namespace {

// Flagship spectrum parameters: N = 10⁴, Γ1D = 0.05, Δc = −10, Ω₀ = 10.
EnsembleSpec flagship() { return EnsembleSpec{}; }

EnsembleSpec dual_v(long n, double d) {
    EnsembleSpec s;
    s.N = n;
    s.scheme = Scheme::DualV;
    s.placement.d = d;
    return s;
}

void expect_close(cplx got, double re, double im, double tol) {
    EXPECT_NEAR(got.real(), re, tol);
    EXPECT_NEAR(got.imag(), im, tol);
}

}  // namespace

// ----------------------------------------------------------------- atoms ---

TEST(Beta, AntinodeLimits) {
    // EIT transparency at δ = 0.
    EXPECT_EQ(beta_lambda_antinode(0.0, -10.0, 10.0, 0.05, 0.95), cplx(0.0, 0.0));
    // Far from two-photon resonance the drive no longer matters.
    const double big = 1e9;
    const cplx b3 = beta_lambda_antinode(big, -10.0, 10.0, 0.05, 0.95);
    const cplx b2 = beta_lambda_node(big, -10.0, 0.05, 0.95);
    EXPECT_NEAR(std::abs(b3 - b2) / std::abs(b2), 0.0, 1e-6);
}

TEST(Beta, AntinodeSmallDeltaExpansion) {
    // β₃ ≈ −iΓ1D δ/(2|Ω₀|²) for δ ≪ |Ω₀|²/|Δ|.
    const double delta = 0.1579;
    const cplx exact = beta_lambda_antinode(delta, -10.0, 10.0, 0.05, 0.95);
    const cplx approx = -I * 0.05 * delta / (2.0 * 100.0);
    EXPECT_NEAR(approx.imag(), -3.9475e-5, 1e-8);
    EXPECT_NEAR(std::abs(exact - approx) / std::abs(approx), 0.0, 0.02);
}

TEST(Beta, NodeValues) {
    EXPECT_EQ(beta_lambda_node(0.0, 0.0, 0.05, 0.95), cplx(0.05 / 0.95, 0.0));
    const cplx b = beta_lambda_node(0.0, -10.0, 0.05, 0.95);
    EXPECT_NEAR(std::abs(b - 0.05 / cplx(0.95, 20.0)), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(b), 0.0025, 1e-5);
    // Large-detuning series: iΓ1D/(2Δ) + Γ1DΓ'/(4Δ²) + O(Δ⁻³).
    for (double big_delta : {-100.0, -1000.0}) {
        const cplx series = I * 0.05 / (2.0 * big_delta) + 0.05 * 0.95 / (4.0 * big_delta * big_delta);
        const cplx exact = beta_lambda_node(big_delta, 0.0, 0.05, 0.95);
        EXPECT_LT(std::abs(exact - series), 0.05 / std::pow(std::abs(big_delta), 3));
    }
}

TEST(Beta, Stored) {
    EXPECT_NEAR(beta_stored(0.05, 0.95).real(), 0.0526315789473684, 1e-15);
    EXPECT_EQ(beta_stored(0.5, 0.5), cplx(1.0, 0.0));
    EXPECT_EQ(beta_stored(0.0, 1.0), cplx(0.0, 0.0));
    EXPECT_THROW(beta_stored(0.05, 0.0), Error);
}

TEST(Beta, SingleLambdaAtomMatchesInputOutput) {
    // Brute-force three-level input-output for one atom with drive Ω₀:
    //   r = −iΓ1D/2 / (Δ + i/2 − |Ω₀|²/δ).
    for (double delta : {0.05, 0.3, -0.7}) {
        const double dc = -2.0, om = 1.5, g = 0.05;
        const cplx beta = beta_lambda_antinode(delta, dc, om, g, 1.0 - g);
        const ScatterCoeffs s = extract_scattering(atom_matrix(beta));
        const cplx r_ref = -I * (g / 2.0) / ((dc + delta) + 0.5 * I - om * om / delta);
        EXPECT_NEAR(std::abs(s.r_plus(0, 0) - r_ref), 0.0, 1e-14) << delta;
    }
}

TEST(DualVBeta, SingleAtomReflectionIsS) {
    // For one atom at z = 0 the reflection matrix equals S itself.
    const double delta = 0.02, dc = -2.0, om = 1.0, g = 0.05;
    const ComplexMat beta = dual_v_beta(0.0, DualVState::Ground, delta, dc, om, g, 1.0 - g);
    const ScatterCoeffs s = extract_scattering(atom_matrix(beta));
    const cplx dg = (dc + delta) + 0.5 * I;
    const cplx den = dg * dg * delta - 2.0 * dg * om * om;
    const cplx same = -I * (g / 2.0) * (dg * delta - om * om) / den;
    const cplx cross = -I * (g / 2.0) * om * om / den;
    EXPECT_NEAR(std::abs(s.r_plus(0, 0) - same), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.r_plus(1, 1) - same), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.r_plus(0, 1) - cross), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.r_plus(1, 0) - cross), 0.0, 1e-14);
}

TEST(DualVBeta, StoredIsResonantTwoLevel) {
    const ComplexMat beta = dual_v_beta(0.3, DualVState::Stored, 0.1, -2.0, 1.0, 0.05, 0.95);
    EXPECT_TRUE(beta.isApprox(ComplexMat::Identity(2, 2) * (0.05 / 0.95)));
    // Single V-type atom on resonance reflects −Γ1D in each polarisation.
    const ScatterCoeffs s = extract_scattering(atom_matrix(beta));
    EXPECT_NEAR(s.r_plus(0, 0).real(), -0.05, 1e-15);
    EXPECT_NEAR(std::abs(s.r_plus(1, 0)), 0.0, 1e-15);
}

TEST(DualVBeta, AtDeltaZeroSameModeReflection) {
    // δ = 0: r_same = −iΓ1D/2 · (−|Ω₀|²)/(−2Δ_Γ|Ω₀|²) = −iΓ1D/(4Δ_Γ).
    const double dc = -3.0, g = 0.05;
    const ComplexMat beta = dual_v_beta(0.0, DualVState::Ground, 0.0, dc, 2.0, g, 1.0 - g);
    const ScatterCoeffs s = extract_scattering(atom_matrix(beta));
    EXPECT_NEAR(std::abs(s.r_plus(0, 0) - (-I * g / (4.0 * (dc + 0.5 * I)))), 0.0, 1e-14);
}

TEST(DualVBeta, PeriodicInPosition) {
    const ComplexMat a = dual_v_beta(0.266, DualVState::Ground, 0.03, -2.0, 1.0, 0.05, 0.95);
    const ComplexMat b = dual_v_beta(1.266, DualVState::Ground, 0.03, -2.0, 1.0, 0.05, 0.95);
    EXPECT_TRUE(a.isApprox(b, 1e-12));
}

// ------------------------------------------------------------- placement ---

TEST(Placement, RegularAndRandom) {
    EnsembleSpec s = dual_v(50, 0.3);
    const auto z = atom_positions(s);
    ASSERT_EQ(z.size(), 50u);
    EXPECT_DOUBLE_EQ(z[10], 3.0);
    s.placement.kind = Placement::Kind::RandomUniform;
    s.placement.seed = 42;
    const auto r1 = atom_positions(s), r2 = atom_positions(s);
    EXPECT_EQ(r1, r2);
    EXPECT_TRUE(std::is_sorted(r1.begin(), r1.end()));
    for (double v : r1) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, s.length());
    }
    s.placement.seed = 43;
    EXPECT_NE(atom_positions(s), r1);
}

TEST(Spec, Validation) {
    EnsembleSpec odd = flagship();
    odd.N = 101;
    EXPECT_THROW(odd.validate(), Error);
    EnsembleSpec spacing = flagship();
    spacing.placement.d = 0.3;
    EXPECT_THROW(spacing.validate(), Error);
    EnsembleSpec random = flagship();
    random.placement.kind = Placement::Kind::RandomUniform;
    EXPECT_THROW(random.validate(), Error);
    EnsembleSpec site = flagship();
    site.stored_site = 5000;
    EXPECT_THROW(site.validate(), Error);
    EnsembleSpec g = flagship();
    g.gamma_1d = 1.5;
    EXPECT_THROW(g.validate(), Error);
    EXPECT_NO_THROW(flagship().validate());
}

// ---------------------------------------------------- ensemble products ---

TEST(EnsembleMatrix, EmptyIsIdentity) {
    EnsembleSpec s = flagship();
    s.N = 0;
    EXPECT_TRUE(ensemble_matrix(s, 0.1).isApprox(ComplexMat::Identity(2, 2)));
    const ScatterResult r = scatter(dual_v(0, 0.3), 0.1);
    EXPECT_EQ(r.r_plus, cplx(0.0, 0.0));
    EXPECT_EQ(r.t_plus, cplx(1.0, 0.0));
}

TEST(EnsembleMatrix, OneLambdaCellIsDirectProduct) {
    EnsembleSpec s = flagship();
    s.N = 2;
    const double delta = 0.2;
    const ComplexMat direct = free_matrix(pi / 2, 1) * atom_matrix(beta_lambda_node(delta, -10.0, 0.05, 0.95)) *
                              free_matrix(pi / 2, 1) *
                              atom_matrix(beta_lambda_antinode(delta, -10.0, 10.0, 0.05, 0.95));
    EXPECT_TRUE(ensemble_matrix(s, delta).isApprox(direct, 1e-14));
}

// Values from tests/oracles/gen_oracles.py: 30-digit atom-by-atom products.
TEST(EnsembleOracle, FlagshipOffResonance) {
    const ScatterResult r = scatter(flagship(), 0.1);
    expect_close(r.r_plus, 0.89746102669477001, 0.22792054417363597, 1e-11);
    expect_close(r.t_plus, -0.092206107948311044, 0.293070388731728, 1e-11);
    expect_close(r.r_minus, 0.89748381426182527, 0.22783079693158814, 1e-11);
    expect_close(r.t_minus, -0.092206107948311044, 0.293070388731728, 1e-11);
}

TEST(EnsembleOracle, FlagshipNearResonance) {
    const ScatterResult r = scatter(flagship(), 0.157394);
    expect_close(r.r_plus, 0.23224736291262086, 0.020847841433816467, 1e-11);
    expect_close(r.t_plus, -0.75829758318391388, 0.021482357067797012, 1e-11);
    expect_close(r.r_minus, 0.23225064136103819, 0.020811286834374143, 1e-11);
    EnsembleSpec s = flagship();
    s.stored_site = 2500;
    const ScatterResult st = scatter(s, 0.157394);
    expect_close(st.r_plus, 0.78249264039886695, 0.0084503784807573662, 1e-11);
    expect_close(st.t_plus, -0.20805324622511231, 0.0090424532733170574, 1e-11);
    expect_close(st.r_minus, 0.78249403451890095, 0.0083289422698061181, 1e-11);
    EXPECT_TRUE(st.stored);
}

TEST(EnsembleOracle, OffCentreStoredSite) {
    EnsembleSpec s = flagship();
    s.N = 1000;
    s.delta_c = -3.0;
    s.omega0 = 2.0;
    const ScatterResult r = scatter(s, 0.05);
    expect_close(r.r_plus, 0.88894852603902347, 0.016871181753289253, 1e-10);
    expect_close(r.t_plus, 0.021777545527219252, 0.34629307352266751, 1e-10);
    s.stored_site = 100;
    const ScatterResult st = scatter(s, 0.05);
    expect_close(st.r_plus, 0.74716279190686306, -0.032693935462888267, 1e-10);
    expect_close(st.t_plus, -0.018831034189467487, 0.30389678040602491, 1e-10);
    expect_close(st.r_minus, 0.88233642262364652, -0.0062067256499282797, 1e-10);
}

TEST(EnsembleOracle, DualV) {
    EnsembleSpec s = dual_v(200, 0.266);
    s.delta_c = -2.0;
    s.omega0 = 1.0;
    const ScatterResult r = scatter(s, 0.01);
    expect_close(r.r_plus, 0.5801893587319869, -0.37596262663864588, 1e-11);
    expect_close(r.t_plus, -0.10371072484280267, -0.57080345589046187, 1e-11);
    expect_close(r.r_minus, 0.5368500777518128, 0.43561402942597771, 1e-11);
    expect_close(r.t_minus, -0.10371072484280267, -0.57080345589046187, 1e-11);
    s.stored_site = 57;
    const ScatterResult st = scatter(s, 0.01);
    expect_close(st.r_plus, 0.54059525313502091, -0.35970831857659011, 1e-11);
    expect_close(st.t_plus, -0.091840894674159213, -0.5480878233344809, 1e-11);
    expect_close(st.r_minus, 0.53138465327218361, 0.42200266966624978, 1e-11);
}

TEST(StoredAllSites, MatchesSingleSiteEvaluation) {
    EnsembleSpec lam = flagship();
    lam.N = 400;
    const auto all = stored_scatter_all_sites(lam, 0.3);
    ASSERT_EQ(all.size(), 200u);
    for (long c : {0L, 37L, 199L}) {
        EnsembleSpec one = lam;
        one.stored_site = c;
        EXPECT_NEAR(std::abs(all[std::size_t(c)].r_plus - scatter(one, 0.3).r_plus), 0.0, 1e-12);
    }
    EnsembleSpec dv = dual_v(120, 0.266);
    dv.delta_c = -2.0;
    dv.omega0 = 1.0;
    const auto all_dv = stored_scatter_all_sites(dv, 0.01);
    ASSERT_EQ(all_dv.size(), 120u);
    for (long j : {0L, 61L, 119L}) {
        EnsembleSpec one = dv;
        one.stored_site = j;
        EXPECT_NEAR(std::abs(all_dv[std::size_t(j)].t_plus - scatter(one, 0.01).t_plus), 0.0, 1e-12);
    }
}

// -------------------------------------------------------------- spectra ---

TEST(Spectrum, VacuumIsTransparent) {
    EnsembleSpec s = flagship();
    s.gamma_1d = 0.0;
    const auto pts = spectrum(s, {-0.1, 0.0, 0.2});
    for (const auto& p : pts) {
        EXPECT_NEAR(std::abs(p.unstored.r_plus), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(p.unstored.t_plus), 1.0, 1e-12);
    }
}

TEST(Spectrum, RejectsUnsortedGridAndKeepsOrder) {
    EXPECT_THROW(spectrum(flagship(), {0.2, 0.1}), Error);
    EnsembleSpec s = flagship();
    s.N = 200;
    const std::vector<double> grid{0.0, 0.01, 0.02, 0.03};
    const auto serial = spectrum(s, grid, 50, 1);
    const auto threaded = spectrum(s, grid, 50, 3);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(serial[i].unstored.delta, grid[i]);
        EXPECT_EQ(serial[i].unstored.r_plus, threaded[i].unstored.r_plus);
        ASSERT_TRUE(serial[i].stored.has_value());
        EXPECT_EQ(serial[i].stored->t_plus, threaded[i].stored->t_plus);
    }
}

TEST(Spectrum, PassivityAndLosslessLimit) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 40; ++k) {
        EnsembleSpec s = flagship();
        s.N = 2 * (1 + static_cast<long>(rng() % 2000));
        s.delta_c = -1.0 - 10.0 * std::abs(u(rng));
        s.omega0 = 0.2 + 3.0 * std::abs(u(rng));
        const double delta = u(rng);
        for (std::optional<long> site : {std::optional<long>{}, std::optional<long>{s.N / 4}}) {
            s.stored_site = site;
            const ScatterResult r = scatter(s, delta);
            EXPECT_LE(std::norm(r.r_plus) + std::norm(r.t_plus), 1.0 + 1e-9);
            EXPECT_LE(std::norm(r.r_minus) + std::norm(r.t_minus), 1.0 + 1e-9);
        }
    }
    // Γ' = 0: no loss channel, so flux is conserved.
    EnsembleSpec lossless = flagship();
    lossless.N = 300;
    lossless.gamma_1d = 1.0;
    lossless.delta_c = -4.0;
    lossless.omega0 = 2.0;
    for (double delta : {0.01, 0.2, 1.3}) {
        const ScatterResult r = scatter(lossless, delta);
        EXPECT_NEAR(std::norm(r.r_plus) + std::norm(r.t_plus), 1.0, 1e-9);
    }
    EnsembleSpec dv = dual_v(150, 0.266);
    dv.gamma_1d = 1.0;
    dv.delta_c = -4.0;
    dv.omega0 = 2.0;
    const ScatterCoeffs c = extract_scattering(ensemble_matrix(dv, 0.3));
    const double flux = c.r_plus.col(0).squaredNorm() + c.t_plus.col(0).squaredNorm();
    EXPECT_NEAR(flux, 1.0, 1e-9);
}

TEST(Spectrum, FlagshipCombStartsNearSeed) {
    std::vector<double> grid;
    for (int k = 0; k <= 350; ++k) grid.push_back(0.001 * k);
    const auto pts = spectrum(flagship(), grid);
    // First interior local maximum of |t₀|².
    double first = -1.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double a = std::norm(pts[i - 1].unstored.t_plus), b = std::norm(pts[i].unstored.t_plus),
                     c = std::norm(pts[i + 1].unstored.t_plus);
        if (b >= a && b > c) {
            first = grid[i];
            break;
        }
    }
    EXPECT_NEAR(first, 0.157, 0.003);
}

// ------------------------------------------------------------ resonance ---

TEST(Resonance, SeedFormula) {
    EnsembleSpec s = flagship();
    EXPECT_NEAR(resonance_seed(s), 0.15791367041742973, 1e-12);
    s.omega0 = 20.0;
    EXPECT_NEAR(resonance_seed(s), 4.0 * 0.15791367041742973, 1e-12);
    s.delta_c = 10.0;
    EXPECT_LT(resonance_seed(s), 0.0);
}

TEST(Resonance, FlagshipNumericWithinTenPercentOfSeed) {
    const EnsembleSpec s = flagship();
    const double found = find_resonance(s);
    EXPECT_NEAR(found, 0.157394, 5e-4);
    EXPECT_LT(std::abs(found - resonance_seed(s)) / resonance_seed(s), 0.1);
    // It is a local maximum of the transmission.
    const double peak = std::norm(scatter(s, found).t_plus);
    EXPECT_GE(peak, std::norm(scatter(s, found - 1e-4).t_plus));
    EXPECT_GE(peak, std::norm(scatter(s, found + 1e-4).t_plus));
}

TEST(Resonance, SignFollowsDetuning) {
    EnsembleSpec s = flagship();
    s.N = 2000;
    s.delta_c = -3.0;
    s.omega0 = 1.0;
    const double neg = find_resonance(s);
    s.delta_c = 3.0;
    const double pos = find_resonance(s);
    EXPECT_GT(neg, 0.0);
    EXPECT_LT(pos, 0.0);
}

TEST(Resonance, NoSeedIsAnError) {
    EnsembleSpec s = flagship();
    s.delta_c = 0.0;
    try {
        find_resonance(s);
        FAIL() << "expected an exception";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResonanceNotFound);
    }
}

TEST(Resonance, WidthFormula) {
    EnsembleSpec s = flagship();
    EXPECT_NEAR(resonance_width_analytic(s), 0.035730, 5e-6);
    EnsembleSpec twice = s;
    twice.N = 20000;
    EXPECT_NEAR(resonance_width_analytic(s) / resonance_width_analytic(twice), 8.0, 1e-12);
    // The curvature width is positive and of the same order.
    const double w = resonance_width_numeric(s, find_resonance(s));
    EXPECT_GT(w, resonance_width_analytic(s));
    EXPECT_LT(w, 2.0 * resonance_width_analytic(s));
}

// ---------------------------------------------------------- closed forms ---

TEST(AnalyticCoeffs, FlagshipValues) {
    const AnalyticCoeffs a = analytic_coeffs(flagship());
    EXPECT_NEAR(a.r0.real(), 0.296875, 1e-12);
    EXPECT_NEAR(std::abs(a.t0), 0.703125, 1e-12);
    // r₁(½) = 1 − 4π²Δc²Γ'/(Γ1D³N²) ≈ 0.70.
    EXPECT_NEAR(a.r1.real(), 1.0 - 4.0 * pi * pi * 100.0 * 0.95 / (1.25e-4 * 1e8), 1e-12);
    EXPECT_NEAR(std::norm(a.r1), 0.49, 0.01);
    // At the centre r₁ and t₁ (without the propagation sign) sum to one.
    const double sign = std::abs(a.t0.real() - 0.703125) < 1e-12 ? 1.0 : -1.0;
    EXPECT_NEAR(std::abs(a.r1 + sign * a.t1 - 1.0), 0.0, 1e-12);
}

TEST(AnalyticCoeffs, LinearTermAntisymmetric) {
    const EnsembleSpec s = flagship();
    const AnalyticCoeffs lo = analytic_coeffs(s, 0.3), hi = analytic_coeffs(s, 0.7);
    EXPECT_NEAR(lo.r1.real(), hi.r1.real(), 1e-12);
    EXPECT_NEAR(lo.r1.imag(), -hi.r1.imag(), 1e-12);
}

TEST(StoredSymmetry, MirrorSitesShareRealPart) {
    EnsembleSpec s = flagship();
    s.omega0 = 1.0;
    const OptimalParams opt = optimal_params(double(s.N), s.gamma_1d);
    s.delta_c = opt.delta_c;
    const double dres = find_resonance(s);
    const auto all = stored_scatter_all_sites(s, dres);
    const long n = s.N / 2;
    for (long c : {n / 5, n / 3, 2 * n / 5}) {
        const double a = all[std::size_t(c)].r_plus.real();
        const double b = all[std::size_t(n - 1 - c)].r_plus.real();
        EXPECT_LT(std::abs(a - b) / std::abs(a), 0.05) << c;
    }
}

TEST(LargeN, RelativeDeviationDecreases) {
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 10; ++k) {
        EnsembleSpec s = flagship();
        const double n = std::pow(10.0, 3.0 + 0.2 * k);
        s.N = 2 * std::lround(n / 2.0);
        s.omega0 = 1.0;
        s.delta_c = optimal_params(double(s.N), s.gamma_1d).delta_c;
        const double dres = find_resonance(s);
        const double numeric = scatter(s, dres).r_plus.real();
        const double analytic = analytic_coeffs(s).r0.real();
        const double dev = std::abs(numeric - analytic) / analytic;
        EXPECT_LT(dev, previous) << "N = " << s.N;
        previous = dev;
    }
}

// ------------------------------------------------------------ auxiliaries ---

TEST(MagneticSplittings, Values) {
    const MagneticSplittings m = magnetic_splittings(-41.0);
    EXPECT_NEAR(m.delta_mhz / 5.75, -10.0, 0.05);
    EXPECT_NEAR(m.delta_a_mhz / m.delta_mhz, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(m.adjacent_mhz, -m.delta_mhz / 2.0, 1e-15);
    const MagneticSplittings zero = magnetic_splittings(0.0);
    EXPECT_EQ(zero.delta_mhz, 0.0);
    EXPECT_EQ(zero.delta_a_mhz, 0.0);
}

TEST(DualColor, Conditions) {
    const DualColorCheck ok = dual_color_check(-9.5, -10.5, 3.0);
    EXPECT_TRUE(ok.separation_small);
    EXPECT_TRUE(ok.separation_large);
    EXPECT_NEAR(ok.margin_small, 9.0, 1e-12);
    EXPECT_NEAR(ok.margin_large, 1.0 - 0.45, 1e-12);
    EXPECT_FALSE(dual_color_check(-10.0, -10.0, 3.0).separation_large);
    EXPECT_TRUE(dual_color_check(-9.5, -10.5, 0.0).separation_large);
}

TEST(LambdaBlochAngle, AgreesWithTraceFormula) {
    EnsembleSpec s = flagship();
    for (double delta : {-0.3, 0.01, 0.157, 0.9}) {
        const ComplexMat cell = lambda_cell(s, delta);
        const cplx c = std::cos(lambda_bloch_angle(s, delta).theta);
        EXPECT_NEAR(std::abs(c - 0.5 * cell.trace()), 0.0, 1e-14) << delta;
    }
}
