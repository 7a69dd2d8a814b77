#pragma once

// LOCC protocols as finite trees of local measurements.
//
// A measurement node has one child per Kraus element, in element order.
// Leaves carry no data; the state at every node is derived by execute().

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "wlocc/error.hpp"
#include "wlocc/scalar.hpp"
#include "wlocc/wclass.hpp"

namespace wlocc {

template <class Real>
struct BasicProtocolNode {
  std::optional<BasicLocalMeasurement<Real>> measurement;
  std::vector<BasicProtocolNode> children;
  // Measured within the broadcast epoch of the nearest ancestor measurement.
  bool joins_broadcast = false;

  static BasicProtocolNode leaf() { return {}; }

  /// Missing children are filled with leaves.
  static BasicProtocolNode measure(BasicLocalMeasurement<Real> m, std::vector<BasicProtocolNode> kids = {},
                                   bool joins = false) {
    BasicProtocolNode node;
    kids.resize(m.elements.size());
    node.measurement = std::move(m);
    node.children = std::move(kids);
    node.joins_broadcast = joins;
    return node;
  }

  bool is_leaf() const { return !measurement.has_value(); }

  bool operator==(const BasicProtocolNode& other) const = default;
};

enum class LeafClass { Epr, Bipartite, Product, Tripartite };

std::string_view leaf_class_name(LeafClass cls);

inline constexpr double kEprTol = 1e-9;

template <class Real>
struct BasicLeafRecord {
  Real probability;
  BasicWState<Real> state;
  LeafClass cls = LeafClass::Product;
  std::optional<PartyPair> pair;
  double concurrence = 0.0;
  // Kraus element index taken at each measurement on the way down.
  std::vector<int> path;
};

template <class Real>
LeafClass classify_leaf(const BasicWState<Real>& s, const Real& tol) {
  switch (s.classify(tol)) {
    case StateClass::Tripartite: return LeafClass::Tripartite;
    case StateClass::Product: return LeafClass::Product;
    case StateClass::Bipartite: break;
  }
  const auto [i, j] = *s.bipartite_pair(tol);
  if (std::abs(to_double(s[i]) - 0.5) <= kEprTol && std::abs(to_double(s[j]) - 0.5) <= kEprTol) {
    return LeafClass::Epr;
  }
  return LeafClass::Bipartite;
}

/// Runs `protocol` from `root`. Zero-probability branches produce no leaf.
template <class Real>
std::vector<BasicLeafRecord<Real>> execute(const BasicWState<Real>& root, const BasicProtocolNode<Real>& protocol,
                                           const Real& tol = default_tolerance<Real>()) {
  struct Frame {
    const BasicProtocolNode<Real>* node;
    Real probability;
    BasicWState<Real> state;
    std::vector<int> path;
  };
  std::vector<BasicLeafRecord<Real>> leaves;
  std::vector<Frame> stack;
  stack.push_back({&protocol, Real(1), root, {}});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.node->is_leaf()) {
      BasicLeafRecord<Real> rec{f.probability, f.state, classify_leaf(f.state, tol), f.state.bipartite_pair(tol),
                                0.0, std::move(f.path)};
      if (rec.pair) {
        rec.concurrence =
            std::min(1.0, 2.0 * std::sqrt(to_double(f.state[rec.pair->first]) * to_double(f.state[rec.pair->second])));
      }
      leaves.push_back(std::move(rec));
      continue;
    }
    const auto& m = *f.node->measurement;
    if (f.node->children.size() != m.elements.size()) {
      throw Error(Errc::MalformedProtocol, "measurement with " + std::to_string(m.elements.size()) +
                                               " elements has " + std::to_string(f.node->children.size()) +
                                               " children");
    }
    auto branches = measurement_branches(f.state, m);
    // Push in reverse so leaves come out in element order.
    for (std::size_t i = branches.size(); i-- > 0;) {
      if (!branches[i]) continue;
      std::vector<int> path = f.path;
      path.push_back(static_cast<int>(i));
      stack.push_back({&f.node->children[i], Real(f.probability * branches[i]->probability),
                       std::move(branches[i]->state), std::move(path)});
    }
  }
  return leaves;
}

/// Measurement epochs along the longest branch; consecutive measurements by
/// the same party form one epoch.
template <class Real>
int sequential_rounds(const BasicProtocolNode<Real>& protocol) {
  struct Frame {
    const BasicProtocolNode<Real>* node;
    std::optional<Party> last;
    int rounds;
  };
  int best = 0;
  std::vector<Frame> stack{{&protocol, std::nullopt, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.node->is_leaf()) {
      best = std::max(best, f.rounds);
      continue;
    }
    const Party p = f.node->measurement->party;
    const int r = f.rounds + ((f.last && *f.last == p) ? 0 : 1);
    for (const auto& child : f.node->children) stack.push_back({&child, p, r});
  }
  return best;
}

/// Broadcast epochs along the longest branch. A measurement marked
/// joins_broadcast shares the epoch of its parent measurement.
template <class Real>
int broadcast_rounds(const BasicProtocolNode<Real>& protocol) {
  struct Frame {
    const BasicProtocolNode<Real>* node;
    int rounds;
  };
  int best = 0;
  std::vector<Frame> stack{{&protocol, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.node->is_leaf()) {
      best = std::max(best, f.rounds);
      continue;
    }
    const int r = f.rounds + ((f.node->joins_broadcast && f.rounds > 0) ? 0 : 1);
    for (const auto& child : f.node->children) stack.push_back({&child, r});
  }
  return best;
}

using ProtocolNode = BasicProtocolNode<double>;
using ExactProtocolNode = BasicProtocolNode<Rational>;
using LeafRecord = BasicLeafRecord<double>;
using ExactLeafRecord = BasicLeafRecord<Rational>;

/// Drops every off-diagonal b and, where sum |b|^2 > tol, appends the
/// completing element diag(0, sqrt(sum |b|^2)) with a leaf child.
ProtocolNode diagonalize(const ProtocolNode& protocol, double tol = kDefaultTol);

/// Block-state test for the party about to measure.
bool is_block_state(const WState& state, Party next_measuring, double tol = kDefaultTol);

enum class Measure { Concurrence, E2, EprProbability };

/// Sum over bipartite leaves of p * measure. EprProbability scores EPR leaves
/// as 1 and other bipartite leaves by e2. With `star`, only pairs containing
/// the star party count.
double expected_value(const std::vector<LeafRecord>& leaves, Measure measure,
                      std::optional<Party> star = std::nullopt);

/// Total probability of leaves classified as EPR.
template <class Real>
Real epr_mass(const std::vector<BasicLeafRecord<Real>>& leaves) {
  Real total(0);
  for (const auto& leaf : leaves) {
    if (leaf.cls == LeafClass::Epr) total += leaf.probability;
  }
  return total;
}

template <class Real>
Real total_probability(const std::vector<BasicLeafRecord<Real>>& leaves) {
  Real total(0);
  for (const auto& leaf : leaves) total += leaf.probability;
  return total;
}

/// Number of measurement nodes.
std::size_t node_count(const ProtocolNode& protocol);

}  // namespace wlocc
