#pragma once

// Two-qubit instrument family J_{gamma,n} (iterated restricted weak
// measurements with (1 - eps)^n = gamma) and its n -> infinity limit.
//
// Choi matrices are 16 x 16 over (X'X) (x) (Y'Y), primed factors being the
// inputs; the row index of |x' x y' y> is 8x' + 4x + 2y' + y.

#include <array>
#include <complex>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wlocc/wclass.hpp"

namespace wlocc {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using ChoiMatrix = Eigen::Matrix<std::complex<double>, 16, 16>;

/// Outcome labels: first digit is the first qubit's click, second the
/// second's; 00 is the all-survive branch.
enum class Branch { B00 = 0, B01 = 1, B10 = 2, B11 = 3 };

inline constexpr std::array<Branch, 4> kBranches{Branch::B00, Branch::B01, Branch::B10, Branch::B11};

std::string_view branch_name(Branch b);

struct TwoQubitInstrument {
  double gamma = 1.0;
  int n = 1;
  double eps = 0.0;
  // Kraus operators on the two-qubit space, indexed 2x + y.
  std::array<std::vector<Mat4>, 4> kraus;

  const std::vector<Mat4>& branch(Branch b) const { return kraus[static_cast<int>(b)]; }
  /// Largest entry of |sum K^dag K - I|.
  double completeness_error() const;
};

using ChoiSet = std::array<ChoiMatrix, 4>;

/// gamma in (0, 1], n >= 1. gamma = 1 gives the identity in branch 00.
TwoQubitInstrument jgamma_finite(double gamma, int n);

ChoiMatrix choi_from_kraus(const std::vector<Mat4>& kraus);
ChoiSet instrument_choi(const TwoQubitInstrument& instrument);

/// Closed-form limit Choi matrices; gamma in (0, 1].
ChoiSet limit_choi(double gamma);

/// Partial trace over the outputs: the 4 x 4 matrix sum K^T conj(K) on the
/// input space. Summed over branches it is the identity for an instrument.
Mat4 output_trace(const ChoiMatrix& choi);

struct ChoiOutput {
  double probability = 0.0;
  // Normalized when probability > 1e-12, zero otherwise.
  Mat4 state = Mat4::Zero();
};

/// Throws NotAState unless rho is Hermitian, PSD and unit trace (tol 1e-10).
ChoiOutput apply_choi(const ChoiMatrix& choi, const Mat4& rho);

double frobenius_distance(const ChoiSet& lhs, const ChoiSet& rhs);
double frobenius_distance(const ChoiMatrix& lhs, const ChoiMatrix& rhs);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const ChoiMatrix& m);

/// Writes real and imaginary planes as "plane,row,col,value" lines.
void write_choi_csv(std::ostream& out, const ChoiMatrix& m);

struct ZetaWitness {
  double pre_zeta = 0.0;
  // EPR and bipartite branches scored by concurrence, the surviving
  // branch by zeta.
  double post_zeta = 0.0;
  double continue_probability = 0.0;
  WState continue_state;
};

/// Runs J_{gamma,n} on parties B, C of (x, gamma x, gamma x) through the
/// coordinate calculus.
ZetaWitness zeta_preservation_witness(double gamma, double x, int n);

}  // namespace wlocc
