#include "wtc/projection.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "wtc/errors.hpp"

namespace wtc {

EigenSystem decompose_hermitian(const Eigen::MatrixXcd& x) {
  if (!x.allFinite()) throw std::invalid_argument("decompose_hermitian: non-finite input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x);
  if (es.info() != Eigen::Success) {
    throw NumericError("decompose_hermitian: eigendecomposition failed");
  }
  const Eigen::Index n = x.rows();
  EigenSystem sys;
  sys.eigenvalues = es.eigenvalues().reverse();
  sys.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return sys;
}

double water_level(const Eigen::VectorXd& x, double p_total) {
  if (x.size() == 0) throw std::invalid_argument("water_level: empty eigenvalue vector");
  if (p_total <= 0.0) throw std::invalid_argument("water_level: p_total must be > 0");

  double positive_sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) positive_sum += std::max(x[i], 0.0);
  if (positive_sum <= p_total) return 0.0;  // trace constraint inactive

  // sum_i [x_i - c]_+ is piecewise linear in c with breakpoints at the x_i;
  // scan prefixes of the descending sort for the active set.
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.0;
  double level = 0.0;
  for (std::size_t m = 0; m < sorted.size(); ++m) {
    prefix += sorted[m];
    const double candidate = (prefix - p_total) / static_cast<double>(m + 1);
    if (m + 1 == sorted.size() || candidate >= sorted[m + 1]) {
      level = candidate;
      break;
    }
  }
  return level;
}

Covariance project(const Eigen::MatrixXcd& x, double p_total) {
  if (x.rows() != x.cols() || x.rows() < 1) {
    throw std::invalid_argument("project: input must be square and non-empty");
  }
  if (!x.allFinite()) throw std::invalid_argument("project: non-finite input");
  const double skew = (x - x.adjoint()).norm();
  if (skew > 1e-8 * std::max(1.0, x.norm())) {
    throw std::invalid_argument("project: input is too far from Hermitian");
  }

  const Eigen::MatrixXcd sym = 0.5 * (x + x.adjoint());
  const EigenSystem sys = decompose_hermitian(sym);
  const double c = water_level(sys.eigenvalues, p_total);

  const Eigen::VectorXd clipped = (sys.eigenvalues.array() - c).max(0.0).matrix();
  Eigen::MatrixXcd q = sys.eigenvectors * clipped.asDiagonal() *
                       sys.eigenvectors.adjoint();
  q = 0.5 * (q + q.adjoint()).eval();
  return Covariance::unchecked(std::move(q), p_total);
}

}  // namespace wtc
