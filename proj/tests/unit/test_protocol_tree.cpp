#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "wlocc/protocol_tree.hpp"
#include "wlocc/protocols.hpp"

using namespace wlocc;

namespace {

LocalMeasurement identity(Party p) { return {p, {KrausElement::diagonal(1.0, 1.0)}}; }

// Probability of reaching each node summed over children, compared with the
// node probability, at every node of the tree.
void expect_node_conservation(const WState& s, const ProtocolNode& node, double p) {
  if (node.is_leaf()) return;
  double sum = 0.0;
  const auto branches = measurement_branches(s, *node.measurement);
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (!branches[i]) continue;
    sum += branches[i]->probability;
    expect_node_conservation(branches[i]->state, node.children[i], p * branches[i]->probability);
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

}  // namespace

TEST(Execute, LeafOnly) {
  const auto leaves = execute(w_state(), ProtocolNode::leaf());
  ASSERT_EQ(leaves.size(), 1u);
  EXPECT_EQ(leaves[0].probability, 1.0);
  EXPECT_EQ(leaves[0].cls, LeafClass::Tripartite);
  EXPECT_EQ(leaves[0].state, w_state());
}

TEST(Execute, IdentityMeasurementPassesThrough) {
  const auto leaves = execute(w_state(), ProtocolNode::measure(identity(Party::C)));
  ASSERT_EQ(leaves.size(), 1u);
  EXPECT_DOUBLE_EQ(leaves[0].probability, 1.0);
  EXPECT_EQ(leaves[0].path, std::vector<int>{0});
}

TEST(Execute, OneFlIterationOnW) {
  const auto p = fl_protocol<double>({Party::A, Party::B, Party::C}, 1.0 / 3, 1);
  const auto leaves = execute(w_state(), p);
  EXPECT_NEAR(total_probability(leaves), 1.0, 1e-12);
  EXPECT_NEAR(epr_mass(leaves), 4.0 / 9, 1e-12);
  double w_mass = 0.0, fail = 0.0;
  for (const auto& l : leaves) {
    if (l.cls == LeafClass::Tripartite) {
      w_mass += l.probability;
      for (Party q : kParties) EXPECT_NEAR(l.state[q], 1.0 / 3, 1e-12);
    }
    if (l.cls == LeafClass::Product) fail += l.probability;
  }
  EXPECT_NEAR(w_mass, 4.0 / 9, 1e-12);
  EXPECT_NEAR(fail, 1.0 / 9, 1e-12);
}

TEST(Execute, EqualOrVanishMasses) {
  const WState x = make_state(0.5, 0.25, 0.25);
  const auto leaves = execute(x, equal_or_vanish(x));
  double w_mass = 0.0;
  for (const auto& l : leaves) {
    if (l.cls == LeafClass::Tripartite) w_mass += l.probability;
  }
  EXPECT_NEAR(epr_mass(leaves), 0.5, 1e-12);
  EXPECT_NEAR(w_mass, 3.0 / 8, 1e-12);
  EXPECT_NEAR(1.0 - w_mass - epr_mass(leaves), 1.0 / 8, 1e-12);
  EXPECT_NEAR(w_mass, 1.5 * 0.5 - 0.75 * epr_mass(leaves), 1e-12);
  EXPECT_NEAR(expected_value(leaves, Measure::EprProbability), 0.5, 1e-12);
}

TEST(Execute, ChildCountMismatchIsMalformed) {
  ProtocolNode bad = ProtocolNode::measure(fl_measurement(Party::A, 0.5));
  bad.children.pop_back();
  try {
    execute(w_state(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedProtocol);
  }
}

TEST(Execute, ExpectedValueOfFailureIsZero) {
  // Product input: nothing to distill on any branch.
  const ProtocolNode p = ProtocolNode::measure({Party::A, {KrausElement::diagonal(1.0, 0.0), KrausElement::diagonal(0.0, 1.0)}});
  const auto leaves = execute(make_state(0.0, 0.0, 0.0), p);
  EXPECT_EQ(expected_value(leaves, Measure::Concurrence), 0.0);
  EXPECT_EQ(expected_value(leaves, Measure::EprProbability), 0.0);
}

TEST(Execute, StarFilterKeepsOnlyStarPairs) {
  const auto leaves = execute(w_state(), fl_protocol<double>({Party::A, Party::B, Party::C}, 0.5, 1));
  const double all = expected_value(leaves, Measure::Concurrence);
  const double star = expected_value(leaves, Measure::Concurrence, Party::A);
  EXPECT_GT(all, star);
  EXPECT_NEAR(star, 2.0 / 3 * all, 1e-12);
}

TEST(Rounds, Sequential) {
  EXPECT_EQ(sequential_rounds(ProtocolNode::leaf()), 0);
  EXPECT_EQ(sequential_rounds(ProtocolNode::measure(identity(Party::A))), 1);
  auto b = ProtocolNode::measure(identity(Party::B));
  auto a2 = ProtocolNode::measure(identity(Party::A), {b});
  auto a1 = ProtocolNode::measure(identity(Party::A), {a2});
  EXPECT_EQ(sequential_rounds(a1), 2);
  EXPECT_EQ(sequential_rounds(theorem1_protocol<double>(3)), 7);
}

TEST(Rounds, Broadcast) {
  EXPECT_EQ(broadcast_rounds(fl_protocol<double>({Party::A, Party::B, Party::C}, 0.2, 1)), 1);
  for (int n : {2, 5, 9}) {
    EXPECT_EQ(broadcast_rounds(fl_protocol<double>({Party::A, Party::B, Party::C}, 0.2, n)), n);
  }
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(broadcast_rounds(theorem1_protocol<double>(n)), n);
}

TEST(Diagonalize, DiagonalProtocolIsFixedPoint) {
  const auto p = theorem1_protocol<double>(3);
  EXPECT_EQ(diagonalize(p), p);
}

TEST(Diagonalize, AddsCompletingElement) {
  const double a1 = 0.5, c1 = 0.3, br = 0.2, bi = 0.1;
  KrausElement e1{a1, c1, br, bi};
  KrausElement e2{1 - a1, 0.0, -br, -bi};
  e2.c = 1.0 - c1 - e1.b_norm2() - e2.b_norm2();
  const LocalMeasurement m{Party::B, {e1, e2}};
  const auto d = diagonalize(ProtocolNode::measure(m));
  ASSERT_TRUE(d.measurement);
  ASSERT_EQ(d.measurement->elements.size(), 3u);
  EXPECT_TRUE(d.measurement->is_diagonal());
  EXPECT_EQ(d.measurement->elements[2].a, 0.0);
  EXPECT_NEAR(d.measurement->elements[2].c, e1.b_norm2() + e2.b_norm2(), 1e-15);
  EXPECT_NO_THROW(d.measurement->validate());
  EXPECT_EQ(d.children.size(), 3u);
}

TEST(DiagonalizeProperty, NeverLowersEprProbability) {
  std::mt19937_64 rng(21);
  int with_epr = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto p = oracle::random_protocol(w_state(), 3, true, rng);
    const auto d = diagonalize(p);
    const auto before = execute(w_state(), p);
    const auto after = execute(w_state(), d);
    EXPECT_NEAR(total_probability(after), 1.0, 1e-9);
    EXPECT_GE(epr_mass(after), epr_mass(before) - 1e-10);
    EXPECT_EQ(sequential_rounds(d), sequential_rounds(p));
    with_epr += epr_mass(after) > 0.0;
  }
  EXPECT_GT(with_epr, 200);
}

TEST(DiagonalizeProperty, ExcitedBranchWeightsUnchanged) {
  // Off-diagonals only feed the |000> amplitude, so p * y_j on every original
  // branch survives diagonalization; an EPR leaf stays an EPR leaf.
  std::mt19937_64 rng(22);
  for (int t = 0; t < 500; ++t) {
    const auto p = oracle::random_protocol(w_state(), 1 + t % 3, true, rng);
    const auto before = execute(w_state(), p);
    const auto after = execute(w_state(), diagonalize(p));
    for (const auto& l : before) {
      const auto it = std::find_if(after.begin(), after.end(), [&](const LeafRecord& r) { return r.path == l.path; });
      ASSERT_NE(it, after.end());
      for (Party q : kParties) EXPECT_NEAR(it->probability * it->state[q], l.probability * l.state[q], 1e-12);
      if (l.cls == LeafClass::Epr) EXPECT_EQ(it->cls, LeafClass::Epr);
    }
  }
}

TEST(TreeProperty, ProbabilityConservedAtEveryNode) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto p = oracle::random_protocol(w_state(), 3, t % 2 == 0, rng);
    expect_node_conservation(w_state(), p, 1.0);
    EXPECT_NEAR(total_probability(execute(w_state(), p)), 1.0, 1e-9);
  }
}

TEST(TreeProperty, SilentPartyCoordinateConserved) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const WState x = make_state(0.2 + 0.2 * u(rng), 0.1 + 0.2 * u(rng), 0.1 + 0.2 * u(rng));
    // Only B and C measure; A's expected coordinate is unchanged.
    const double e = 0.05 + 0.5 * u(rng);
    const int n = 1 + t % 4;
    const auto p = fl_protocol<double>({Party::B, Party::C}, e, n);
    double avg = 0.0;
    for (const auto& l : execute(x, p)) avg += l.probability * l.state[Party::A];
    EXPECT_NEAR(avg, x[Party::A], 1e-10);
  }
}

TEST(BlockState, Definition) {
  for (Party p : kParties) EXPECT_TRUE(is_block_state(w_state(), p));
  EXPECT_FALSE(is_block_state(make_state(0.5, 0.25, 0.25), Party::A));
  EXPECT_TRUE(is_block_state(make_state(0.4, 0.4, 0.2), Party::B));
  EXPECT_FALSE(is_block_state(make_state(0.4, 0.4, 0.2), Party::C));
  try {
    is_block_state(make_state(0.5, 0.5, 0.0), Party::A);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotTripartite);
  }
}

TEST(NodeCount, CountsMeasurements) {
  EXPECT_EQ(node_count(ProtocolNode::leaf()), 0u);
  EXPECT_EQ(node_count(fl_protocol<double>({Party::B, Party::C}, 0.1, 1)), 3u);
}
