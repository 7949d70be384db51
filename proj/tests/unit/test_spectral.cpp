#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/transform.hpp"

using namespace intwine;
using namespace intwine::spectral;
using test::mode;
using test::rnd;

namespace {

// Incompressibility, reality on self-conjugate columns and zero mean.
void expect_valid(const SpectralField& u) {
  const Grid& g = u.grid();
  double scale = 0.0;
  for (std::size_t k = 0; k < u.x().size(); ++k) scale = std::max(scale, std::abs(u.x()[k]) + std::abs(u.y()[k]));
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const auto id = g.index(i, j);
      const cplx div = static_cast<double>(g.kx(i)) * u.x()[id] + static_cast<double>(j) * u.y()[id];
      EXPECT_LE(std::abs(div), 1e-12 * std::max(scale, 1.0));
    }
  }
  EXPECT_EQ(u.x()[0], cplx(0.0, 0.0));
  EXPECT_EQ(u.y()[0], cplx(0.0, 0.0));
  for (int i = 1; i < g.n(); ++i) {
    const auto a = g.index(i, 0), b = g.index(g.n() - i, 0);
    EXPECT_LE(std::abs(u.x()[a] - std::conj(u.x()[b])), 1e-12 * std::max(scale, 1.0));
  }
}

}  // namespace

TEST(Grid, RejectsInvalidSizesAndRadii) {
  EXPECT_THROW(Grid(2), PreconditionError);
  EXPECT_THROW(Grid(7), PreconditionError);
  EXPECT_THROW(Grid(16, 6.0), PreconditionError);
  EXPECT_THROW(Grid(16, 0.0), PreconditionError);
  EXPECT_NO_THROW(Grid(16, 16.0 / 3.0));
  // 3 floor(R) < n forces R < n/3 when 3 divides n.
  EXPECT_THROW(Grid(12, 4.0), PreconditionError);
  EXPECT_LT(3 * std::floor(Grid(12).dealias_radius()), 12);
}

TEST(Leray, GradientFieldMapsToZero) {
  const Grid g(16);
  SplitMix64 rng(3);
  RawVectorField raw(g);
  for (int kx = -4; kx <= 4; ++kx) {
    for (int ky = 0; ky <= 4; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      const cplx phi(rng.uniform(-1, 1), rng.uniform(-1, 1));
      raw.set_mode(kx, ky, cplx(0, kx) * phi, cplx(0, ky) * phi);
    }
  }
  const SpectralField p = leray_project(raw);
  EXPECT_LE(l2_norm(p), 1e-14);
}

TEST(Leray, DivergenceFreeFieldIsFixedBitForBit) {
  const Grid g(16);
  const SpectralField u = rnd(g, 5);
  RawVectorField raw(g);
  raw.x.assign(u.x().begin(), u.x().end());
  raw.y.assign(u.y().begin(), u.y().end());
  EXPECT_TRUE(leray_project(raw) == u);
}

TEST(Leray, HandCheckedSingleMode) {
  const Grid g(8);
  RawVectorField raw(g);
  raw.set_mode(1, 0, {1.0, 0.0}, {1.0, 0.0});
  const SpectralField p = leray_project(raw);
  const auto id = g.index(g.row_of(1), 0);
  EXPECT_EQ(p.x()[id], cplx(0.0, 0.0));
  EXPECT_EQ(p.y()[id], cplx(1.0, 0.0));
}

TEST(Stokes, PowersAndNorms) {
  const Grid g(16);
  const SpectralField u = mode(g, 2, 1, {1.0, 0.5}, {-2.0, -1.0});
  const SpectralField Au = stokes_apply(u, 2);
  const auto id = g.index(g.row_of(2), 1);
  EXPECT_DOUBLE_EQ(Au.x()[id].real(), 5.0 * u.x()[id].real());
  EXPECT_DOUBLE_EQ(Au.y()[id].imag(), 5.0 * u.y()[id].imag());
  const SpectralField r = rnd(g, 9);
  EXPECT_TRUE(stokes_apply(r, 0) == r);
  EXPECT_NEAR(l2_norm(stokes_apply(r, 1)), h1_norm(r), 1e-13 * h1_norm(r));
  EXPECT_LE(test::max_abs_diff(stokes_apply(stokes_apply(r, -2), 2), r), 1e-15);
  EXPECT_THROW(stokes_apply(r, -3), PreconditionError);
}

TEST(Projection, LowHighCutoffs) {
  const Grid g(16);
  const SpectralField u = rnd(g, 11);
  const SpectralField p1 = project_low(u, 1.0);
  int kept = 0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.nky(); ++j) {
      const auto id = g.index(i, j);
      if (p1.x()[id] == cplx(0.0, 0.0) && p1.y()[id] == cplx(0.0, 0.0)) continue;
      EXPECT_EQ(g.k2(i, j), 1);
      ++kept;
    }
  }
  // (1,0), (-1,0), (0,1) on the half spectrum.
  EXPECT_EQ(kept, 3);
  EXPECT_EQ(l2_norm(project_low(u, 0.0)), 0.0);
  for (double K : {0.5, 1.0, 2.5, std::sqrt(5.0), 4.0}) {
    const SpectralField P = project_low(u, K), Q = project_high(u, K);
    EXPECT_TRUE(P + Q == u);
    EXPECT_EQ(inner(P, Q), 0.0);
    EXPECT_TRUE(project_low(P, K) == P);
    EXPECT_TRUE(project_high(Q, K) == Q);
    const double lhs = l2_norm(u) * l2_norm(u);
    const double rhs = l2_norm(P) * l2_norm(P) + l2_norm(Q) * l2_norm(Q);
    EXPECT_NEAR(lhs, rhs, 1e-13 * lhs);
  }
  // The ball includes its boundary: |(2,1)| = sqrt(5).
  EXPECT_GT(l2_norm(project_low(mode(g, 2, 1, {0, 0}, {1, 0}) + mode(g, 0, 3, {1, 0}, {0, 0}), std::sqrt(5.0))), 0.0);
}

TEST(Norms, PlancherelAndConventions) {
  const Grid g(16);
  // u = (0, 2 cos x): |u|^2 = 4 * (2 pi)^2 / 2.
  const SpectralField u = mode(g, 1, 0, {0, 0}, {1, 0});
  const NormTriple t = norms(u, 2);
  EXPECT_DOUBLE_EQ(t.l2, t.h1);
  EXPECT_NEAR(t.l2, std::sqrt(2.0) * kTwoPi, 1e-13);
  EXPECT_NEAR(lebesgue_norm(u, 2), t.l2, 1e-12);
  EXPECT_EQ(t.hm.at(0), t.l2);
  EXPECT_EQ(t.hm.at(1), t.h1);
  // Bernstein with equality at |k| = N = 2.
  const SpectralField v = mode(g, 2, 0, {0, 0}, {1, 0.5}) + mode(g, 0, 2, {0.3, 0}, {0, 0});
  const NormTriple s = norms(v, 2);
  EXPECT_NEAR(s.hm.at(2), 4.0 * s.l2, 1e-13 * s.l2);
}

TEST(Norms, PoincareBernsteinInterpolationOnRandomFields) {
  const Grid g(16);
  for (int c = 0; c < 1000; ++c) {
    const SpectralField u = rnd(g, 1000 + c, 0.0, 1.0, c % 4);
    const NormTriple t = norms(u, 2);
    ASSERT_LE(t.l2, t.h1 * (1 + 1e-14));
    ASSERT_LE(t.h1 * t.h1, t.hm.at(2) * t.l2 * (1 + 1e-13));
    if (c % 20 != 0) continue;
    for (double N : {1.0, 2.0, 4.0, 8.0}) {
      const NormTriple P = norms(project_low(u, N), 2), Q = norms(project_high(u, N), 2);
      for (int m = 0; m <= 2; ++m) {
        for (int n = m; n <= 2; ++n) {
          EXPECT_LE(P.hm.at(n), std::pow(N, n - m) * P.hm.at(m) * (1 + 1e-13));
          EXPECT_LE(Q.hm.at(m), std::pow(N, m - n) * Q.hm.at(n) * (1 + 1e-13));
        }
      }
    }
  }
}

TEST(Fields, RandomFieldsSatisfyInvariants) {
  for (int n : {8, 16, 32}) {
    const Grid g(n);
    for (int c = 0; c < 5; ++c) {
      const SpectralField u = rnd(g, 77 + c);
      expect_valid(u);
      EXPECT_TRUE(dealias_supported(u));
      expect_valid(bilinear_B(u, rnd(g, 99 + c)));
    }
  }
}

TEST(Fields, RandomFieldIsSeedDeterministic) {
  const Grid g(32);
  EXPECT_TRUE(rnd(g, 42) == rnd(g, 42));
  EXPECT_FALSE(rnd(g, 42) == rnd(g, 43));
  EXPECT_NEAR(l2_norm(rnd(g, 42, 0.0, 2.5)), 2.5, 1e-13);
}

TEST(Transform, RoundTripOfDealiasedField) {
  const Grid g(16);
  const SpectralField u = rnd(g, 4);
  std::vector<double> px;
  to_physical(g, u.x(), g.n(), px);
  std::vector<cplx> back;
  to_spectral(g, px, back);
  double err = 0.0;
  for (std::size_t k = 0; k < back.size(); ++k) err = std::max(err, std::abs(back[k] - u.x()[k]));
  EXPECT_LE(err, 1e-15);
}

TEST(Bilinear, ShearFlowHasNoSelfAdvection) {
  const Grid g(16);
  const SpectralField u = mode(g, 0, 1, {0.7, -0.2}, {0, 0}) + mode(g, 0, 3, {0.1, 0.4}, {0, 0});
  EXPECT_LE(l2_norm(bilinear_B(u, u)), 1e-15);
}

TEST(Bilinear, TaylorGreenIsAPureGradient) {
  const Grid g(16);
  const SpectralField tg = test::taylor_green(g);
  EXPECT_GT(l2_norm(tg), 1.0);
  EXPECT_LE(l2_norm(bilinear_B(tg, tg)), 1e-15);
}

TEST(Bilinear, TrilinearIdentities) {
  for (int n : {16, 32}) {
    const Grid g(n);
    for (int c = 0; c < 10; ++c) {
      const SpectralField u = rnd(g, 10 * c + 1), v = rnd(g, 10 * c + 2), w = rnd(g, 10 * c + 3);
      const SpectralField Au = stokes_apply(u, 2), Av = stokes_apply(v, 2);
      const double scale = l2_norm(bilinear_B(u, v)) * l2_norm(w);
      EXPECT_LE(std::abs(trilinear_b(u, v, w) + trilinear_b(u, w, v)), 1e-10 * scale);
      EXPECT_LE(std::abs(trilinear_b(u, v, v)), 1e-10 * l2_norm(bilinear_B(u, v)) * l2_norm(v));
      EXPECT_LE(std::abs(trilinear_b(u, u, Au)), 1e-10 * l2_norm(bilinear_B(u, u)) * l2_norm(Au));
      const double mir = trilinear_b(v, v, Au) + trilinear_b(u, v, Av) + trilinear_b(v, u, Av);
      const double mscale = l2_norm(bilinear_B(v, v)) * l2_norm(Au) +
                            (l2_norm(bilinear_B(u, v)) + l2_norm(bilinear_B(v, u))) * l2_norm(Av);
      EXPECT_LE(std::abs(mir), 1e-10 * mscale);
    }
  }
}

TEST(Bilinear, AliasedInputIsRejected) {
  const Grid g(16);
  const SpectralField hi = mode(g, 7, 0, {0, 0}, {1, 0});
  EXPECT_FALSE(dealias_supported(hi));
  EXPECT_THROW(bilinear_B(hi, rnd(g, 1)), AliasingViolation);
  EXPECT_THROW(bilinear_B(rnd(g, 1), hi), AliasingViolation);
  EXPECT_TRUE(dealias_supported(dealias(hi)));
}

TEST(Frechet, DerivativeIdentities) {
  const Grid g(16);
  const SpectralField u = rnd(g, 21), v = rnd(g, 22);
  const SpectralField two_B = 2.0 * bilinear_B(u, u);
  EXPECT_LE(l2_norm(frechet_DB(u, u) - two_B), 1e-15 * l2_norm(two_B));
  EXPECT_EQ(l2_norm(frechet_DB(SpectralField(g), v)), 0.0);
  double e[2];
  int k = 0;
  for (double eps : {1e-3, 1e-4}) {
    const SpectralField uv = u + eps * v;
    e[k++] = l2_norm(bilinear_B(uv, uv) - bilinear_B(u, u) - eps * frechet_DB(u, v));
  }
  EXPECT_NEAR(std::log10(e[0] / e[1]), 2.0, 0.05);
}

TEST(Lebesgue, TaylorGreenLadyzhenskayaRatio) {
  // numpy quadrature on a 256^2 grid: 0.12582303026121758.
  const Grid g(16);
  const SpectralField tg = test::taylor_green(g);
  const double L4 = lebesgue_norm(tg, 4);
  EXPECT_NEAR(L4 * L4 / (h1_norm(tg) * l2_norm(tg)), 0.12582303026121758, 1e-13);
  // Single |k| = 1 mode: sqrt(3/2) / (2 pi).
  const SpectralField s = mode(g, 1, 0, {0, 0}, {1, 0});
  const double S4 = lebesgue_norm(s, 4);
  EXPECT_NEAR(S4 * S4 / (h1_norm(s) * l2_norm(s)), 0.194924200308419, 1e-13);
  EXPECT_THROW(lebesgue_norm(s, 3), PreconditionError);
}

TEST(SupNorm, BoundDominatesSampledMaximum) {
  const Grid g(16);
  for (int c = 0; c < 5; ++c) {
    const SpectralField u = rnd(g, 300 + c);
    EXPECT_LE(sup_norm(u), sup_norm_bound(u) * (1 + 1e-14));
  }
  EXPECT_NEAR(sup_norm(test::taylor_green(g)), 1.0, 1e-12);
}
