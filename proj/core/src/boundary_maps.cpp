#include "wlocc/boundary_maps.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "wlocc/protocols.hpp"

namespace wlocc {

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::B00: return "00";
    case Branch::B01: return "01";
    case Branch::B10: return "10";
    case Branch::B11: return "11";
  }
  return "??";
}

namespace {

Mat2 diag2(double d0, double d1) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = d0;
  m(1, 1) = d1;
  return m;
}

Mat4 kron(const Mat2& x, const Mat2& y) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return out;
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(Errc::ParameterOutOfRange, "gamma must lie in (0, 1]");
}

// Choi index of |x' x y' y>.
constexpr int cidx(int xp, int x, int yp, int y) { return 8 * xp + 4 * x + 2 * yp + y; }

}  // namespace

double TwoQubitInstrument::completeness_error() const {
  Mat4 sum = Mat4::Zero();
  for (const auto& branch : kraus)
    for (const auto& k : branch) sum += k.adjoint() * k;
  return (sum - Mat4::Identity()).cwiseAbs().maxCoeff();
}

TwoQubitInstrument jgamma_finite(double gamma, int n) {
  require_gamma(gamma);
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "n must be at least 1");
  TwoQubitInstrument out;
  out.gamma = gamma;
  out.n = n;
  out.eps = 1.0 - std::pow(gamma, 1.0 / n);
  const double keep = 1.0 - out.eps;

  // M0^j = diag((1-eps)^{j/2}, 1); M1 M0^{j-1} = diag(sqrt(eps) (1-eps)^{(j-1)/2}, 0).
  auto m0_pow = [&](int j) { return diag2(std::pow(keep, 0.5 * j), 1.0); };
  auto m1_after = [&](int j) { return diag2(std::sqrt(out.eps) * std::pow(keep, 0.5 * (j - 1)), 0.0); };

  out.kraus[0].push_back(kron(m0_pow(n), m0_pow(n)));
  for (int j = 1; j <= n; ++j) {
    out.kraus[1].push_back(kron(m0_pow(j), m1_after(j)));
    out.kraus[2].push_back(kron(m1_after(j), m0_pow(j)));
    out.kraus[3].push_back(kron(m1_after(j), m1_after(j)));
  }
  return out;
}

ChoiMatrix choi_from_kraus(const std::vector<Mat4>& kraus) {
  ChoiMatrix out = ChoiMatrix::Zero();
  for (const auto& k : kraus) {
    // |K>> = sum K[(xy),(x'y')] |x' x y' y>.
    Eigen::Matrix<std::complex<double>, 16, 1> v;
    for (int xp = 0; xp < 2; ++xp)
      for (int x = 0; x < 2; ++x)
        for (int yp = 0; yp < 2; ++yp)
          for (int y = 0; y < 2; ++y) v(cidx(xp, x, yp, y)) = k(2 * x + y, 2 * xp + yp);
    out += v * v.adjoint();
  }
  return out;
}

ChoiSet instrument_choi(const TwoQubitInstrument& instrument) {
  ChoiSet out;
  for (int b = 0; b < 4; ++b) out[b] = choi_from_kraus(instrument.kraus[b]);
  return out;
}

ChoiSet limit_choi(double gamma) {
  require_gamma(gamma);
  const double sg = std::sqrt(gamma);
  // Block (p q; q r) on span{|00>, |11>} of one input/output pair.
  auto block = [](double p, double q, double r) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = p;
    m(0, 3) = q;
    m(3, 0) = q;
    m(3, 3) = r;
    return m;
  };
  auto tensor = [](const Mat4& x, const Mat4& y) {
    ChoiMatrix out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) out(4 * i + k, 4 * j + l) = x(i, j) * y(k, l);
    return out;
  };
  const Mat4 survive = block(gamma, sg, 1.0);
  const Mat4 vacuum = block(1.0, 0.0, 0.0);
  const Mat4 clicked = block(0.5 * (1.0 - gamma * gamma), (2.0 / 3.0) * (1.0 - gamma * sg), 1.0 - gamma);
  ChoiSet out;
  out[0] = tensor(survive, survive);
  out[1] = tensor(clicked, vacuum);
  out[2] = tensor(vacuum, clicked);
  out[3] = ChoiMatrix::Zero();
  return out;
}

Mat4 output_trace(const ChoiMatrix& choi) {
  Mat4 out = Mat4::Zero();
  for (int xp = 0; xp < 2; ++xp)
    for (int yp = 0; yp < 2; ++yp)
      for (int zp = 0; zp < 2; ++zp)
        for (int wp = 0; wp < 2; ++wp)
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
              out(2 * xp + yp, 2 * zp + wp) += choi(cidx(xp, x, yp, y), cidx(zp, x, wp, y));
  return out;
}

ChoiOutput apply_choi(const ChoiMatrix& choi, const Mat4& rho) {
  constexpr double tol = 1e-10;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw Error(Errc::NotAState, "rho is not Hermitian");
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > tol) {
    throw Error(Errc::NotAState, "rho does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
  if (es.eigenvalues().minCoeff() < -tol) throw Error(Errc::NotAState, "rho is not positive semidefinite");

  ChoiOutput out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
          std::complex<double> acc{0.0, 0.0};
          for (int xp = 0; xp < 2; ++xp)
            for (int yp = 0; yp < 2; ++yp)
              for (int up = 0; up < 2; ++up)
                for (int vp = 0; vp < 2; ++vp)
                  acc += choi(cidx(xp, x, yp, y), cidx(up, u, vp, v)) * rho(2 * xp + yp, 2 * up + vp);
          out.state(2 * x + y, 2 * u + v) = acc;
        }
  out.probability = out.state.trace().real();
  if (out.probability > 1e-12) {
    out.state /= out.probability;
  } else {
    out.state.setZero();
  }
  return out;
}

double frobenius_distance(const ChoiMatrix& lhs, const ChoiMatrix& rhs) { return (lhs - rhs).norm(); }

double frobenius_distance(const ChoiSet& lhs, const ChoiSet& rhs) {
  double sq = 0.0;
  for (int b = 0; b < 4; ++b) sq += (lhs[b] - rhs[b]).squaredNorm();
  return std::sqrt(sq);
}

double min_eigenvalue(const ChoiMatrix& m) {
  const ChoiMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ChoiMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void write_choi_csv(std::ostream& out, const ChoiMatrix& m) {
  out << "plane,row,col,value\n";
  const auto old = out.precision(17);
  for (int plane = 0; plane < 2; ++plane)
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        out << (plane == 0 ? "re" : "im") << ',' << i << ',' << j << ','
            << (plane == 0 ? m(i, j).real() : m(i, j).imag()) << '\n';
  out.precision(old);
}

ZetaWitness zeta_preservation_witness(double gamma, double x, int n) {
  require_gamma(gamma);
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "n must be at least 1");
  WState state = make_state(x, gamma * x, gamma * x);
  ZetaWitness out;
  out.pre_zeta = zeta(state);

  const double eps = 1.0 - std::pow(gamma, 1.0 / n);
  const ProtocolNode round = simultaneous_round<double>(
      {fl_measurement(Party::B, eps), fl_measurement(Party::C, eps)}, ProtocolNode::leaf());

  double weight = 1.0;
  double harvested = 0.0;
  for (int j = 0; j < n; ++j) {
    WState next = state;
    double p_next = 0.0;
    for (const auto& leaf : execute(state, round)) {
      if (leaf.path == std::vector<int>{0, 0}) {
        next = leaf.state;
        p_next = leaf.probability;
      } else {
        harvested += weight * leaf.probability * leaf.concurrence;
      }
    }
    weight *= p_next;
    state = next;
    if (weight == 0.0) break;
  }
  out.continue_probability = weight;
  out.continue_state = state;
  out.post_zeta = harvested + (weight > 0.0 ? weight * zeta(state) : 0.0);
  return out;
}

}  // namespace wlocc
