#pragma once

// Canonical-coordinate calculus for three-qubit W-class states.
//
// Up to local unitaries every W-class state is
//   sqrt(x0)|000> + sqrt(xA)|100> + sqrt(xB)|010> + sqrt(xC)|001>
// with x0 = 1 - (xA + xB + xC). Local measurements are written with
// upper-triangular 2x2 Kraus operators [[sqrt(a), b], [0, sqrt(c)]].

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wlocc/error.hpp"
#include "wlocc/scalar.hpp"

namespace wlocc {

enum class Party : int { A = 0, B = 1, C = 2 };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::C};

constexpr int index_of(Party p) { return static_cast<int>(p); }

constexpr char party_name(Party p) {
  return "ABC"[index_of(p)];
}

std::optional<Party> parse_party(std::string_view text);

/// The two parties other than `p`, in A < B < C order.
constexpr std::array<Party, 2> other_parties(Party p) {
  switch (p) {
    case Party::A: return {Party::B, Party::C};
    case Party::B: return {Party::A, Party::C};
    case Party::C: return {Party::A, Party::B};
  }
  return {Party::B, Party::C};
}

using PartyPair = std::pair<Party, Party>;

enum class StateClass { Tripartite, Bipartite, Product };

std::string_view state_class_name(StateClass cls);

template <class Real>
class BasicWState {
 public:
  /// The product state |000>.
  BasicWState() : x_{Real(0), Real(0), Real(0)} {}

  /// Validating constructor. Coordinates within 1e-12 below zero are
  /// clamped; anything further out is rejected.
  static BasicWState make(Real xA, Real xB, Real xC) {
    const Real slack = is_exact_v<Real> ? Real(0) : Real(1e-12);
    if constexpr (!is_exact_v<Real>) {
      if (!std::isfinite(xA) || !std::isfinite(xB) || !std::isfinite(xC)) {
        throw Error(Errc::ParameterOutOfRange, "coordinates must be finite");
      }
    }
    for (const Real& v : {xA, xB, xC}) {
      if (v < -slack) {
        throw Error(Errc::NegativeCoordinate,
                    "coordinate " + std::to_string(to_double(v)) + " is negative");
      }
    }
    BasicWState s;
    s.x_ = {clamp0(xA), clamp0(xB), clamp0(xC)};
    if (s.x_[0] + s.x_[1] + s.x_[2] > Real(1) + slack) {
      throw Error(Errc::Supernormalized,
                  "coordinate sum " + std::to_string(to_double(s.x_[0] + s.x_[1] + s.x_[2])) +
                      " exceeds 1");
    }
    return s;
  }

  /// Builds a state from coordinates produced by the measurement calculus,
  /// where only rounding-level violations can occur.
  static BasicWState from_unchecked(const std::array<Real, 3>& x) {
    BasicWState s;
    s.x_ = {clamp0(x[0]), clamp0(x[1]), clamp0(x[2])};
    return s;
  }

  const Real& operator[](Party p) const { return x_[index_of(p)]; }
  const std::array<Real, 3>& coords() const { return x_; }

  Real x0() const {
    Real rest = Real(1) - (x_[0] + x_[1] + x_[2]);
    return clamp0(rest);
  }

  /// Number of party coordinates strictly above `tol`.
  int support_size(const Real& tol = default_tolerance<Real>()) const {
    return static_cast<int>(std::count_if(x_.begin(), x_.end(), [&](const Real& v) { return v > tol; }));
  }

  StateClass classify(const Real& tol = default_tolerance<Real>()) const {
    switch (support_size(tol)) {
      case 3: return StateClass::Tripartite;
      case 2: return StateClass::Bipartite;
      default: return StateClass::Product;
    }
  }

  /// For bipartite states, the two parties with support.
  std::optional<PartyPair> bipartite_pair(const Real& tol = default_tolerance<Real>()) const {
    if (classify(tol) != StateClass::Bipartite) return std::nullopt;
    std::array<Party, 2> out{};
    int k = 0;
    for (Party p : kParties) {
      if ((*this)[p] > tol) out[k++] = p;
    }
    return PartyPair{out[0], out[1]};
  }

  bool operator==(const BasicWState& other) const = default;

 private:
  static Real clamp0(const Real& v) { return v < Real(0) ? Real(0) : v; }

  std::array<Real, 3> x_;
};

/// Party coordinates sorted descending; ties keep A < B < C order.
template <class Real>
struct BasicSortedComponents {
  std::array<Party, 3> labels;
  std::array<Real, 3> values;

  Party n1() const { return labels[0]; }
  Party n2() const { return labels[1]; }
  Party n3() const { return labels[2]; }
};

template <class Real>
BasicSortedComponents<Real> sort_components(const BasicWState<Real>& state) {
  BasicSortedComponents<Real> out{kParties, state.coords()};
  std::stable_sort(out.labels.begin(), out.labels.end(),
                   [&](Party l, Party r) { return state[l] > state[r]; });
  for (int i = 0; i < 3; ++i) out.values[i] = state[out.labels[i]];
  return out;
}

/// Upper-triangular Kraus operator [[sqrt(a), b], [0, sqrt(c)]].
template <class Real>
struct BasicKrausElement {
  Real a{};
  Real c{};
  Real b_re{};
  Real b_im{};

  static BasicKrausElement diagonal(Real a_value, Real c_value) {
    return BasicKrausElement{std::move(a_value), std::move(c_value), Real(0), Real(0)};
  }

  Real b_norm2() const { return b_re * b_re + b_im * b_im; }
  bool is_diagonal() const { return b_re == Real(0) && b_im == Real(0); }

  bool operator==(const BasicKrausElement& other) const = default;
};

template <class Real>
struct BasicLocalMeasurement {
  Party party = Party::A;
  std::vector<BasicKrausElement<Real>> elements;

  bool is_diagonal() const {
    return std::all_of(elements.begin(), elements.end(), [](const auto& e) { return e.is_diagonal(); });
  }

  /// Checks sum(M_i^dag M_i) = I: sum a = 1, sum (|b|^2 + c) = 1 and the
  /// off-diagonal sum sqrt(a) b = 0. Tolerance 1e-10, exact for rationals.
  void validate() const {
    if (elements.empty()) {
      throw Error(Errc::IncompleteMeasurement, "measurement has no Kraus elements");
    }
    if constexpr (is_exact_v<Real>) {
      Real sum_a(0), sum_c(0);
      for (const auto& e : elements) {
        if (e.a < Real(0) || e.c < Real(0)) {
          throw Error(Errc::IncompleteMeasurement, "negative diagonal Kraus parameter");
        }
        if (!e.is_diagonal()) {
          throw Error(Errc::IncompleteMeasurement, "exact measurements must be diagonal");
        }
        sum_a += e.a;
        sum_c += e.c;
      }
      if (sum_a != Real(1) || sum_c != Real(1)) {
        throw Error(Errc::IncompleteMeasurement, "completeness relation violated");
      }
    } else {
      constexpr double tol = 1e-10;
      double sum_a = 0.0, sum_d = 0.0;
      std::complex<double> off{0.0, 0.0};
      for (const auto& e : elements) {
        if (e.a < -tol || e.c < -tol || !std::isfinite(e.a) || !std::isfinite(e.c)) {
          throw Error(Errc::IncompleteMeasurement, "negative or non-finite Kraus parameter");
        }
        sum_a += e.a;
        sum_d += e.b_norm2() + e.c;
        off += std::sqrt(std::max(e.a, 0.0)) * std::complex<double>(e.b_re, e.b_im);
      }
      if (std::abs(sum_a - 1.0) > tol || std::abs(sum_d - 1.0) > tol || std::abs(off) > tol) {
        throw Error(Errc::IncompleteMeasurement,
                    "completeness relation violated (sum a = " + std::to_string(sum_a) +
                        ", sum |b|^2 + c = " + std::to_string(sum_d) + ")");
      }
    }
  }

  bool operator==(const BasicLocalMeasurement& other) const = default;
};

template <class Real>
struct BasicOutcome {
  Real probability;
  BasicWState<Real> state;
};

/// Outcome of every Kraus element, in element order; zero-probability
/// outcomes are empty.
template <class Real>
std::vector<std::optional<BasicOutcome<Real>>> measurement_branches(const BasicWState<Real>& state,
                                                                    const BasicLocalMeasurement<Real>& m) {
  m.validate();
  const int k = index_of(m.party);
  const auto& x = state.coords();
  const Real x0 = state.x0();
  Real others(0);
  for (int j = 0; j < 3; ++j) {
    if (j != k) others += x[j];
  }

  std::vector<std::optional<BasicOutcome<Real>>> out;
  out.reserve(m.elements.size());
  for (const auto& e : m.elements) {
    Real vacuum;
    if constexpr (is_exact_v<Real>) {
      vacuum = e.a * x0;
    } else {
      const std::complex<double> amp = std::sqrt(std::max(e.a, 0.0) * x0) +
                                       std::complex<double>(e.b_re, e.b_im) * std::sqrt(x[k]);
      vacuum = std::norm(amp);
    }
    const Real p = vacuum + e.c * x[k] + e.a * others;
    if (!(p > Real(0))) {
      out.emplace_back(std::nullopt);
      continue;
    }
    std::array<Real, 3> y{};
    for (int j = 0; j < 3; ++j) {
      y[j] = (j == k ? e.c : e.a) * x[j] / p;
    }
    out.emplace_back(BasicOutcome<Real>{p, BasicWState<Real>::from_unchecked(y)});
  }
  return out;
}

template <class Real>
std::vector<BasicOutcome<Real>> apply_measurement(const BasicWState<Real>& state,
                                                  const BasicLocalMeasurement<Real>& m) {
  std::vector<BasicOutcome<Real>> out;
  for (auto& branch : measurement_branches(state, m)) {
    if (branch) out.push_back(std::move(*branch));
  }
  return out;
}

using WState = BasicWState<double>;
using ExactWState = BasicWState<Rational>;
using SortedComponents = BasicSortedComponents<double>;
using KrausElement = BasicKrausElement<double>;
using LocalMeasurement = BasicLocalMeasurement<double>;
using Outcome = BasicOutcome<double>;

inline WState make_state(double xA, double xB, double xC) { return WState::make(xA, xB, xC); }

/// The W state (1/3, 1/3, 1/3).
template <class Real = double>
BasicWState<Real> w_state() {
  const Real third = Real(1) / Real(3);
  return BasicWState<Real>::make(third, third, third);
}

// Entanglement measures and monotones. `tol` is the classification tolerance.

/// 2 sqrt(x_i x_j) over the two parties with support.
double concurrence(const WState& state, double tol = kDefaultTol);
/// Twice the smaller eigenvalue of a one-party reduced state: 1 - sqrt(1 - C^2).
double e2(const WState& state, double tol = kDefaultTol);

double eta(const WState& state, double tol = kDefaultTol);
double kappa(const WState& state, double tol = kDefaultTol);
double zeta(const WState& state, double tol = kDefaultTol);
/// Zero when the star party has no support.
double zeta_star(const WState& state, Party star, double tol = kDefaultTol);

/// Optimal random-party EPR probability, defined for x0 = 0 only.
double e2_random_closed_form(const WState& state, double tol = kDefaultTol);
double e2_star_random_closed_form(const WState& state, Party star, double tol = kDefaultTol);

/// Upper bound on the concurrence of assistance after a hard measurement by
/// `measuring`: 2 sqrt(x_i x_j) over the other two parties.
double coa_upper_bound(const WState& state, Party measuring, double tol = kDefaultTol);

}  // namespace wlocc
