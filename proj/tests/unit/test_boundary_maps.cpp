#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "wlocc/boundary_maps.hpp"
#include "wlocc/protocols.hpp"

using namespace wlocc;

namespace {

constexpr int idx(int xp, int x, int yp, int y) { return 8 * xp + 4 * x + 2 * yp + y; }

Mat4 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = {g(rng), g(rng)};
  Mat4 rho = m * m.adjoint();
  return rho / rho.trace();
}

// Marginal of a W-class state on B (first) and C (second); x0 joins |00>.
Mat4 bc_marginal(const WState& s) {
  Mat4 rho = Mat4::Zero();
  rho(0, 0) = s.x0() + s[Party::A];
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(2) = std::sqrt(s[Party::B]);
  psi(1) = std::sqrt(s[Party::C]);
  rho += psi * psi.adjoint();
  return rho;
}

}  // namespace

TEST(JGammaFinite, CompletenessOnGrid) {
  for (int g = 1; g <= 9; ++g) {
    for (int n : {1, 2, 5, 10, 50, 200}) {
      const auto inst = jgamma_finite(g / 10.0, n);
      EXPECT_LE(inst.completeness_error(), 1e-10) << "gamma " << g / 10.0 << " n " << n;
      EXPECT_EQ(inst.branch(Branch::B00).size(), 1u);
      EXPECT_EQ(inst.branch(Branch::B01).size(), static_cast<std::size_t>(n));
    }
  }
}

TEST(JGammaFinite, GammaOneIsIdentity) {
  const auto inst = jgamma_finite(1.0, 7);
  EXPECT_EQ(inst.eps, 0.0);
  EXPECT_LE((inst.branch(Branch::B00)[0] - Mat4::Identity()).norm(), 1e-15);
  for (Branch b : {Branch::B01, Branch::B10, Branch::B11}) {
    for (const auto& k : inst.branch(b)) EXPECT_LE(k.norm(), 1e-15);
  }
}

TEST(JGammaFinite, SingleStep) {
  const auto inst = jgamma_finite(0.25, 1);
  EXPECT_NEAR(inst.eps, 0.75, 1e-15);
  ASSERT_EQ(inst.branch(Branch::B01).size(), 1u);
  // M0 (x) M1 with M0 = diag(1/2, 1), M1 = diag(sqrt(3)/2, 0).
  const Mat4& k = inst.branch(Branch::B01)[0];
  EXPECT_NEAR(k(0, 0).real(), 0.5 * std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(k(2, 2).real(), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(k(1, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(k(3, 3).real(), 0.0, 1e-15);
}

TEST(JGammaFinite, RejectsBadParameters) {
  EXPECT_THROW(jgamma_finite(0.0, 3), Error);
  EXPECT_THROW(jgamma_finite(1.5, 3), Error);
  EXPECT_THROW(jgamma_finite(0.5, 0), Error);
  EXPECT_THROW(limit_choi(0.0), Error);
}

TEST(LimitChoi, ClosedFormEntries) {
  const auto om = limit_choi(0.5);
  EXPECT_NEAR(om[1](idx(0, 0, 0, 0), idx(0, 0, 0, 0)).real(), 3.0 / 8, 1e-15);
  EXPECT_NEAR(om[1](idx(0, 0, 0, 0), idx(1, 1, 0, 0)).real(), (2.0 / 3) * (1 - std::pow(2.0, -1.5)), 1e-15);
  EXPECT_NEAR(om[1](idx(1, 1, 0, 0), idx(1, 1, 0, 0)).real(), 0.5, 1e-15);
  EXPECT_NEAR(om[2](idx(0, 0, 1, 1), idx(0, 0, 1, 1)).real(), 0.5, 1e-15);
  EXPECT_EQ(om[3].norm(), 0.0);
}

TEST(LimitChoi, TracePreservingPsdHermitian) {
  for (int g = 1; g <= 9; ++g) {
    const double gamma = g / 10.0;
    const auto om = limit_choi(gamma);
    Mat4 sum = Mat4::Zero();
    for (const auto& c : om) {
      sum += output_trace(c);
      EXPECT_GE(min_eigenvalue(c), -1e-10);
      EXPECT_LE((c - c.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_LE((sum - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-12) << gamma;
    EXPECT_NEAR(gamma * gamma + 2 * (1 - gamma * gamma) / 2, 1.0, 1e-15);
    EXPECT_NEAR(output_trace(om[0])(0, 0).real() + output_trace(om[1])(0, 0).real() +
                    output_trace(om[2])(0, 0).real(),
                1.0, 1e-12);
  }
}

TEST(LimitChoi, GammaNearOneApproachesIdentity) {
  const auto om = limit_choi(1.0);
  const ChoiMatrix id = choi_from_kraus({Mat4::Identity()});
  EXPECT_LE((om[0] - id).norm(), 1e-12);
  EXPECT_LE(om[1].norm(), 1e-12);
  EXPECT_LE(om[2].norm(), 1e-12);
}

TEST(ChoiConvergence, CloseAtModerateN) {
  const auto finite = instrument_choi(jgamma_finite(0.5, 64));
  const auto limit = limit_choi(0.5);
  EXPECT_LE(frobenius_distance(finite[0], limit[0]), 1e-2);
}

TEST(ChoiConvergence, MonotoneWithInverseNRate) {
  for (double gamma : {0.25, 0.5, 0.75}) {
    const auto limit = limit_choi(gamma);
    double prev = 1e300;
    std::vector<double> scaled;
    for (int n = 1; n <= 2048; n *= 2) {
      const double d = frobenius_distance(instrument_choi(jgamma_finite(gamma, n)), limit);
      EXPECT_LT(d, prev) << gamma << " " << n;
      prev = d;
      scaled.push_back(d * n);
    }
    // n * d(n) levels off: the last three agree to 5%.
    const double k = scaled.back();
    for (std::size_t i = scaled.size() - 3; i < scaled.size(); ++i) EXPECT_NEAR(scaled[i] / k, 1.0, 0.05);
  }
}

TEST(ApplyChoi, IdentityChannel) {
  std::mt19937_64 rng(31);
  const ChoiMatrix id = choi_from_kraus({Mat4::Identity()});
  for (int t = 0; t < 20; ++t) {
    const Mat4 rho = random_density(rng);
    const auto out = apply_choi(id, rho);
    EXPECT_NEAR(out.probability, 1.0, 1e-12);
    EXPECT_LE((out.state - rho).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ApplyChoi, MatchesKrausSum) {
  std::mt19937_64 rng(32);
  const auto inst = jgamma_finite(0.3, 5);
  for (int t = 0; t < 20; ++t) {
    const Mat4 rho = random_density(rng);
    for (Branch b : kBranches) {
      Mat4 direct = Mat4::Zero();
      for (const auto& k : inst.branch(b)) direct += k * rho * k.adjoint();
      const auto out = apply_choi(choi_from_kraus(inst.branch(b)), rho);
      EXPECT_NEAR(out.probability, direct.trace().real(), 1e-12);
      if (out.probability > 1e-12) {
        EXPECT_LE((out.state * out.probability - direct).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(ApplyChoi, ClickBranchNeedsVacuumOnOtherQubit) {
  Mat4 rho = Mat4::Zero();
  rho(3, 3) = 1.0;
  const auto out = apply_choi(limit_choi(0.5)[1], rho);
  EXPECT_NEAR(out.probability, 0.0, 1e-15);
}

TEST(ApplyChoi, RejectsNonStates) {
  Mat4 rho = Mat4::Zero();
  rho(0, 0) = 2.0;
  rho(1, 1) = -1.0;
  try {
    apply_choi(limit_choi(0.5)[0], rho);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAState);
  }
  Mat4 half = Mat4::Identity() * 0.5;
  EXPECT_THROW(apply_choi(limit_choi(0.5)[0], half), Error);
}

TEST(ApplyChoi, SurviveBranchMatchesIteratedMeasurements) {
  const double gamma = 0.5, x = 0.5;
  const int n = 1000;
  WState s = make_state(x, gamma * x, gamma * x);
  const Mat4 rho = bc_marginal(s);

  const double eps = 1.0 - std::pow(gamma, 1.0 / n);
  double p = 1.0;
  for (int j = 0; j < n; ++j) {
    for (Party q : {Party::B, Party::C}) {
      const auto br = measurement_branches(s, fl_measurement(q, eps));
      p *= br[0]->probability;
      s = br[0]->state;
    }
  }
  const auto out = apply_choi(instrument_choi(jgamma_finite(gamma, n))[0], rho);
  EXPECT_NEAR(out.probability, p, 1e-10);
  EXPECT_LE((out.state - bc_marginal(s)).cwiseAbs().maxCoeff(), 1e-10);
  for (Party q : kParties) EXPECT_NEAR(s[q], 1.0 / 3, 1e-10);
}

TEST(ZetaWitness, GapClosesAtLargeN) {
  const auto w = zeta_preservation_witness(0.5, 0.5, 10000);
  EXPECT_NEAR(w.pre_zeta, zeta(make_state(0.5, 0.25, 0.25)), 1e-15);
  EXPECT_LE(std::abs(w.pre_zeta - w.post_zeta), 1e-3);
  for (Party q : kParties) EXPECT_NEAR(w.continue_state[q], 1.0 / 3, 1e-10);
}

TEST(ZetaWitness, GapShrinksLikeInverseN) {
  double prev = 1e300;
  std::vector<double> scaled;
  for (int n : {100, 200, 400, 800}) {
    const auto w = zeta_preservation_witness(0.5, 0.5, n);
    const double gap = w.pre_zeta - w.post_zeta;
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev);
    prev = gap;
    scaled.push_back(gap * n);
  }
  EXPECT_NEAR(scaled[3] / scaled[2], 1.0, 0.05);
}

TEST(ZetaWitness, GammaOneIsExact) {
  for (int n : {1, 3, 10}) {
    const auto w = zeta_preservation_witness(1.0, 0.3, n);
    EXPECT_NEAR(w.pre_zeta, w.post_zeta, 1e-15);
    EXPECT_NEAR(w.continue_probability, 1.0, 1e-15);
  }
}

TEST(ChoiCsv, WritesBothPlanes) {
  std::ostringstream os;
  write_choi_csv(os, limit_choi(0.5)[0]);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 1 + 2 * 256);
}
