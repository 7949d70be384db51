#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>

#include "helpers.hpp"
#include "intwine/dynamics/checkpoint.hpp"
#include "intwine/dynamics/integrator.hpp"
#include "intwine/dynamics/rhs.hpp"
#include "intwine/errors.hpp"

using namespace intwine;
using namespace intwine::dynamics;
using spectral::cplx;
using spectral::Grid;
using spectral::l2_norm;
using test::rnd;

namespace {

std::shared_ptr<const Forcing> steady(SpectralField f) {
  return std::make_shared<const Forcing>(Forcing::steady(std::move(f)));
}

IntertwinedState random_state(const Grid& g, IntertwiningMatrix m, double K = 3.0, double nu = 0.1,
                              bool same_force = false) {
  const auto f1 = steady(rnd(g, 501));
  const auto f2 = same_force ? f1 : steady(rnd(g, 502));
  return IntertwinedState(0.0, nu, K, m, rnd(g, 503), rnd(g, 504), f1, f2);
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  return l2_norm(a - b) / std::max(l2_norm(a), 1e-300);
}

// Equal row sums throughout, so v1 = v2 is invariant for every entry.
const std::vector<IntertwiningMatrix>& all_classes() {
  static const std::vector<IntertwiningMatrix> v = {
      IntertwiningMatrix::nudge_sym(2.0, 0.5), IntertwiningMatrix::nudge_mut(1.0, 3.0),
      IntertwiningMatrix::dr_sym(1.2, -0.2),   IntertwiningMatrix::dr_mut(0.25, 0.75),
      IntertwiningMatrix::general(-1.0, 0.5, 0.25, -0.75, Coupling::ProjectK),
      IntertwiningMatrix::general(0.3, -0.3, -0.7, 0.7, Coupling::ProjectK_B)};
  return v;
}

}  // namespace

TEST(Matrix, ClassEntriesAndConstraints) {
  const auto ns = IntertwiningMatrix::nudge_sym(3.0, 1.0);
  EXPECT_EQ(ns.entries(), (std::array<double, 4>{-3.0, 1.0, 1.0, -3.0}));
  EXPECT_EQ(ns.eigenvalues(), (std::array<double, 2>{2.0, 4.0}));
  EXPECT_EQ(IntertwiningMatrix::nudge_mut(3.0, 1.0).entries(), (std::array<double, 4>{-3.0, 3.0, 1.0, -1.0}));
  EXPECT_EQ(IntertwiningMatrix::dr_sym(0.75, 0.25).entries(), (std::array<double, 4>{0.75, -0.25, -0.25, 0.75}));
  EXPECT_EQ(IntertwiningMatrix::dr_mut(0.75, 0.25).entries(), (std::array<double, 4>{0.75, -0.75, -0.25, 0.25}));
  EXPECT_THROW(IntertwiningMatrix::nudge_sym(1.0, 2.0), PreconditionError);
  EXPECT_THROW(IntertwiningMatrix::nudge_sym(1.0, -0.5), PreconditionError);
  EXPECT_THROW(IntertwiningMatrix::nudge_mut(-1.0, 0.0), PreconditionError);
  EXPECT_THROW(IntertwiningMatrix::dr_sym(0.6, 0.3), PreconditionError);
  EXPECT_THROW(IntertwiningMatrix::dr_mut(1.5, -0.5), PreconditionError);
  EXPECT_NO_THROW(IntertwiningMatrix::dr_sym(1.5, -0.5));
  EXPECT_THROW(ns.theta1(), WrongMatrixClass);
  EXPECT_THROW(IntertwiningMatrix::dr_mut(0.5, 0.5).mu1(), WrongMatrixClass);
  for (const auto& m : all_classes()) {
    const auto back = IntertwiningMatrix::from_params(
        m.cls(), m.cls() == MatrixClass::General ? m.entries() : std::array<double, 4>{m.param1(), m.param2(), 0, 0},
        m.coupling());
    EXPECT_EQ(back, m);
    EXPECT_EQ(matrix_class_from_string(to_string(m.cls())), m.cls());
  }
}

TEST(Matrix, NudgeSymLambdaEquivalence) {
  spectral::SplitMix64 rng(8);
  for (int c = 0; c < 200; ++c) {
    const double mu1 = rng.uniform(0.0, 5.0);
    const double mu2 = rng.uniform(0.0, mu1);
    const auto M = IntertwiningMatrix::nudge_sym(mu1, mu2);
    const auto lam = M.eigenvalues();
    const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
    const double quad = -(M.m(1, 1) * a * a + (M.m(1, 2) + M.m(2, 1)) * a * b + M.m(2, 2) * b * b);
    const double u2 = a * a + b * b;
    EXPECT_GE(quad, lam[0] * u2 * (1 - 1e-12) - 1e-15);
    EXPECT_LE(quad, lam[1] * u2 * (1 + 1e-12) + 1e-15);
  }
}

TEST(Rhs, NseExamples) {
  const Grid g(16);
  const SpectralField f = rnd(g, 1);
  EXPECT_TRUE(rhs_nse(SpectralField(g), f, 0.3) == f);
  const SpectralField shear = test::mode(g, 0, 2, {0.5, 0.1}, {0, 0});
  const SpectralField r = rhs_nse(shear, SpectralField(g), 0.3);
  EXPECT_LE(l2_norm(r + 0.3 * spectral::stokes_apply(shear, 2)), 1e-15);
}

TEST(Rhs, ZeroMatrixGivesUncoupledCopies) {
  const Grid g(16);
  const auto s = random_state(g, IntertwiningMatrix::general(0, 0, 0, 0, Coupling::ProjectK_B));
  for (Coupling F : {Coupling::ProjectK, Coupling::ProjectK_B}) {
    const PairRhs r = rhs_general(s, F);
    EXPECT_TRUE(r.r1 == rhs_nse(s.v1, s.g1->at(0.0), s.nu));
    EXPECT_TRUE(r.r2 == rhs_nse(s.v2, s.g2->at(0.0), s.nu));
  }
}

TEST(Rhs, SpecializationsMatchGeneralBitForBit) {
  const Grid g(16);
  for (const auto& m : all_classes()) {
    const auto s = random_state(g, m);
    const PairRhs a = rhs_intertwined(s);
    if (m.is_nudging()) {
      const PairRhs b = rhs_nudging(s), c = rhs_general(s, Coupling::ProjectK);
      EXPECT_TRUE(a.r1 == b.r1 && a.r2 == b.r2 && b.r1 == c.r1 && b.r2 == c.r2);
      EXPECT_THROW(rhs_direct_replacement(s), WrongMatrixClass);
    } else if (m.is_direct_replacement()) {
      const PairRhs b = rhs_direct_replacement(s), c = rhs_general(s, Coupling::ProjectK_B);
      EXPECT_TRUE(a.r1 == b.r1 && a.r2 == b.r2 && b.r1 == c.r1 && b.r2 == c.r2);
      EXPECT_THROW(rhs_nudging(s), WrongMatrixClass);
    }
  }
}

TEST(Rhs, NudgeMutEndpointIsTheNudgingAlgorithm) {
  const Grid g(8);
  const double mu = 2.5;
  const auto s = random_state(g, IntertwiningMatrix::nudge_mut(0.0, mu), 2.0);
  const PairRhs r = rhs_nudging(s);
  EXPECT_TRUE(r.r1 == rhs_nse(s.v1, s.g1->at(0.0), s.nu));
  const SpectralField obs = rhs_nudge_observer(s.v1, s.v2, s.g2->at(0.0), s.nu, mu, s.K);
  EXPECT_LE(rel_diff(r.r2, obs), 1e-14);
}

TEST(Rhs, DRMutEndpointIsTheDirectReplacementAlgorithm) {
  const Grid g(8);
  const auto s = random_state(g, IntertwiningMatrix::dr_mut(0.0, 1.0), 2.0);
  const PairRhs r = rhs_direct_replacement(s);
  EXPECT_TRUE(r.r1 == rhs_nse(s.v1, s.g1->at(0.0), s.nu));
  const SpectralField obs = rhs_sync_observer(s.v1, s.v2, s.g2->at(0.0), s.nu, s.K);
  EXPECT_LE(rel_diff(r.r2, obs), 1e-14);
}

TEST(Rhs, DRSymThetaOneDecouplesIntoTwoObservers) {
  const Grid g(16);
  const auto s = random_state(g, IntertwiningMatrix::dr_sym(1.0, 0.0));
  const PairRhs r = rhs_direct_replacement(s);
  // Each copy replaces its own low-mode nonlinearity: P_K of each rhs is linear.
  for (const auto* p : {&r.r1, &r.r2}) {
    const SpectralField& v = p == &r.r1 ? s.v1 : s.v2;
    const SpectralField& gi = p == &r.r1 ? s.g1->base() : s.g2->base();
    const SpectralField lin = spectral::project_low(gi - s.nu * spectral::stokes_apply(v, 2), s.K);
    EXPECT_LE(l2_norm(spectral::project_low(*p, s.K) - lin), 1e-14 * l2_norm(lin));
  }
}

TEST(Rhs, DirectReplacementLowModeHeatLaw) {
  const Grid g(16);
  for (const auto& m : {IntertwiningMatrix::dr_sym(0.7, 0.3), IntertwiningMatrix::dr_mut(0.25, 0.75),
                        IntertwiningMatrix::dr_sym(1.0, 0.0)}) {
    const auto s = random_state(g, m);
    const PairRhs r = rhs_direct_replacement(s);
    const SpectralField w = s.v1 - s.v2;
    const SpectralField lhs = spectral::project_low(r.r1 - r.r2, s.K);
    const SpectralField rhs = spectral::project_low(s.g1->base() - s.g2->base(), s.K) -
                              s.nu * spectral::stokes_apply(spectral::project_low(w, s.K), 2);
    EXPECT_LE(l2_norm(lhs - rhs), 1e-13 * l2_norm(rhs));
  }
}

TEST(Views, DerivedRelations) {
  const Grid g(16);
  auto s = random_state(g, IntertwiningMatrix::dr_mut(0.5, 0.5));
  DerivedViews v = derived_views(s);
  EXPECT_TRUE(v.w == s.v1 - s.v2);
  EXPECT_TRUE(v.z == s.v1 + s.v2);
  EXPECT_TRUE(v.p == spectral::project_low(v.w, s.K));
  EXPECT_TRUE(v.q == spectral::project_high(v.w, s.K));
  EXPECT_TRUE(v.r == spectral::project_low(v.z, s.K));
  EXPECT_TRUE(v.s == spectral::project_high(v.z, s.K));
  EXPECT_LE(test::max_abs_diff(*v.v_theta, 0.5 * v.z), 1e-16);
  EXPECT_LE(test::max_abs_diff(*v.w_theta, 0.5 * v.w), 1e-16);
  EXPECT_LE(test::max_abs_diff(0.5 * (v.z + v.w), s.v1), 1e-15);
  EXPECT_LE(test::max_abs_diff(0.5 * (v.z - v.w), s.v2), 1e-15);
  s.v2 = s.v1;
  v = derived_views(s);
  EXPECT_EQ(l2_norm(v.w), 0.0);
  EXPECT_EQ(l2_norm(v.p) + l2_norm(v.q), 0.0);
  EXPECT_TRUE(v.z == 2.0 * s.v1);
  // theta1 = 0: unscaled pair.
  const auto e = random_state(g, IntertwiningMatrix::dr_mut(0.0, 1.0));
  const DerivedViews ev = derived_views(e);
  EXPECT_TRUE(ev.theta_scaled == false);
  EXPECT_TRUE(*ev.w_theta == ev.w);
  EXPECT_TRUE(*ev.v_theta == e.v1);
  EXPECT_THROW(derived_views(random_state(g, IntertwiningMatrix::nudge_mut(1, 1))), WrongMatrixClass);
  EXPECT_NO_THROW(derived_views(random_state(g, IntertwiningMatrix::nudge_mut(1, 1)), false));
}

TEST(Residuals, TwistedVariable) {
  for (int n : {8, 16}) {
    const Grid g(n);
    for (double t1 : {0.25, 0.5, 0.9}) {
      auto s = random_state(g, IntertwiningMatrix::dr_mut(t1, 1.0 - t1), 2.0);
      const PairRhs r = rhs_direct_replacement(s);
      EXPECT_LE(residual_twisted(s), 1e-10 * (l2_norm(r.r1) + l2_norm(r.r2)));
      s.v2 = s.v1;
      EXPECT_LE(residual_twisted(s), 1e-10 * l2_norm(s.v1));
    }
  }
  EXPECT_THROW(residual_twisted(random_state(Grid(8), IntertwiningMatrix::dr_mut(0.0, 1.0))), PreconditionError);
  EXPECT_THROW(residual_twisted(random_state(Grid(8), IntertwiningMatrix::dr_sym(0.5, 0.5))), WrongMatrixClass);
}

TEST(Residuals, HalfDB) {
  const Grid g(16);
  const SpectralField a = rnd(g, 1), b = rnd(g, 2);
  EXPECT_EQ(residual_half_DB(a, a), 0.0);
  EXPECT_LE(residual_half_DB(a, SpectralField(g)), 1e-15 * l2_norm(spectral::bilinear_B(a, a)));
  EXPECT_LE(residual_half_DB(a, b), 1e-10 * (l2_norm(spectral::bilinear_B(a, a)) + l2_norm(spectral::bilinear_B(b, b))));
}

TEST(Stepper, PureDiffusionIsExact) {
  const Grid g(16);
  const SpectralField u = test::mode(g, 3, 1, {0.2, 0.1}, {-0.6, -0.3});
  const auto f = steady(SpectralField(g));
  IntertwinedState s(0.0, 0.7, 0.0, IntertwiningMatrix::nudge_mut(0, 0), u, u, f, f);
  StepperOptions o;
  o.dt = 0.01;
  o.nonlinear = false;
  const Stepper st(o);
  for (int k = 1; k <= 10; ++k) {
    st.step(s);
    const double expect = std::exp(-0.7 * 10.0 * 0.01 * k) * l2_norm(u);
    EXPECT_NEAR(l2_norm(s.v1), expect, 1e-15 * l2_norm(u));
  }
}

TEST(Stepper, ZeroStaysZero) {
  const Grid g(16);
  const auto f = steady(SpectralField(g));
  for (const auto& m : all_classes()) {
    const IntertwinedState s(0.0, 0.1, 3.0, m, SpectralField(g), SpectralField(g), f, f);
    const IntertwinedState e = Stepper({}).integrate(s, 1.0, 0.5, nullptr);
    EXPECT_EQ(l2_norm(e.v1) + l2_norm(e.v2), 0.0);
    EXPECT_DOUBLE_EQ(e.t, 1.0);
  }
}

TEST(Stepper, SynchronizedManifoldIsInvariant) {
  const Grid g(16);
  for (const auto& m : all_classes()) {
    auto s = random_state(g, m, 3.0, 0.1, true);
    s.v2 = s.v1;
    const IntertwinedState e = Stepper({}).integrate(s, 1.0, 1.0, nullptr);
    EXPECT_LE(l2_norm(e.v1 - e.v2), 1e-13 * l2_norm(e.v1)) << to_string(m.cls());
  }
}

TEST(Stepper, FoldedCouplingAgreesWithExplicit) {
  const Grid g(16);
  auto s = random_state(g, IntertwiningMatrix::nudge_mut(40.0, 60.0), 3.0, 0.1, true);
  StepperOptions a, b;
  a.dt = b.dt = 1e-3;
  a.fold = FoldMode::On;
  b.fold = FoldMode::Off;
  EXPECT_TRUE(Stepper(a).folds(s.matrix));
  EXPECT_FALSE(Stepper(b).folds(s.matrix));
  EXPECT_FALSE(Stepper(a).folds(IntertwiningMatrix::dr_mut(0.5, 0.5)));
  const auto ea = Stepper(a).integrate(s, 0.2, 0.2, nullptr);
  const auto eb = Stepper(b).integrate(s, 0.2, 0.2, nullptr);
  EXPECT_LE(l2_norm(ea.v1 - eb.v1), 1e-3 * l2_norm(ea.v1));
  StepperOptions c;
  c.dt = 0.05;
  EXPECT_TRUE(Stepper(c).folds(s.matrix));
}

TEST(Stepper, GuardsAndPreconditions) {
  const Grid g(16);
  const auto s = random_state(g, IntertwiningMatrix::nudge_mut(1, 1));
  StepperOptions big;
  big.dt = 1.0;
  IntertwinedState c = s;
  EXPECT_THROW(Stepper(big).step(c), PreconditionError);
  EXPECT_THROW(Stepper({}).integrate(s, 0.015, 0.01, nullptr), PreconditionError);
  EXPECT_THROW(Stepper({}).integrate(s, 1.0, 0.015, nullptr), PreconditionError);
  EXPECT_THROW(Stepper({}).integrate(s, 1.0, 0.0, nullptr), PreconditionError);
  StepperOptions tight;
  tight.blowup_norm = 1e-3;
  try {
    Stepper(tight).integrate(s, 1.0, 0.5, nullptr);
    FAIL() << "expected blowup";
  } catch (const BlowupDetected& e) {
    EXPECT_DOUBLE_EQ(e.time(), 0.01);
  }
}

TEST(Forcing, KindsAndSup) {
  const Grid g(16);
  const SpectralField f0 = dynamics::kolmogorov_field(g, 0.5, 2);
  EXPECT_NEAR(l2_norm(f0), 0.5 * spectral::kTwoPi / std::sqrt(2.0), 1e-14);
  const Forcing p = Forcing::time_periodic(f0, 2.0);
  EXPECT_NEAR(l2_norm(p.at(0.3)), std::abs(std::cos(0.6)) * l2_norm(f0), 1e-14);
  EXPECT_DOUBLE_EQ(p.sup_l2(), l2_norm(f0));
  const SpectralField dg = rnd(g, 3);
  const Forcing d = Forcing::decaying_pair_delta(f0, dg, 1.5);
  EXPECT_LE(l2_norm(d.at(2.0) - f0 - std::exp(-3.0) * dg), 1e-15);
  EXPECT_THROW(Forcing::steady(test::mode(g, 7, 0, {0, 0}, {1, 0})), AliasingViolation);
}

TEST(Checkpoint, RoundTripIsBitExact) {
  const Grid g(16);
  for (const auto& m : all_classes()) {
    auto s = random_state(g, m, 2.5, 0.037);
    s.t = 1.25;
    const std::string path = ::testing::TempDir() + "rt.ckpt";
    checkpoint_save(s, 0xDEADBEEFCAFEULL, path);
    const Checkpoint c = checkpoint_load(path);
    EXPECT_TRUE(c.v1 == s.v1);
    EXPECT_TRUE(c.v2 == s.v2);
    EXPECT_EQ(c.nu, s.nu);
    EXPECT_EQ(c.t, s.t);
    EXPECT_EQ(c.K, s.K);
    EXPECT_EQ(c.matrix, s.matrix);
    EXPECT_EQ(c.seed, 0xDEADBEEFCAFEULL);
    std::ifstream in(path, std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(bytes.substr(0, 4), "ITWN");
    EXPECT_THROW(checkpoint_load(path, Grid(8)), IoError);
    // Resave gives identical bytes.
    const std::string path2 = ::testing::TempDir() + "rt2.ckpt";
    checkpoint_save(IntertwinedState(c.t, c.nu, c.K, c.matrix, c.v1, c.v2, s.g1, s.g2), c.seed, path2);
    std::ifstream in2(path2, std::ios::binary);
    const std::string bytes2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    EXPECT_EQ(bytes, bytes2);
  }
  EXPECT_THROW(checkpoint_load(::testing::TempDir() + "missing.ckpt"), IoError);
}
