#include "wtc/channel.hpp"

#include <stdexcept>
#include <string>

#include "wtc/errors.hpp"
#include "wtc/rng.hpp"

namespace wtc {

namespace {

void require_finite(const Eigen::MatrixXcd& m, const char* name) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(name) + " contains non-finite entries");
  }
}

}  // namespace

ChannelPair::ChannelPair(Eigen::MatrixXcd h, Eigen::MatrixXcd g)
    : H(std::move(h)), G(std::move(g)) {
  if (H.rows() < 1 || H.cols() < 1 || G.rows() < 1) {
    throw std::invalid_argument("channel dimensions must be >= 1");
  }
  if (G.cols() != H.cols()) {
    throw std::invalid_argument("H and G must have the same number of columns (N_t)");
  }
  require_finite(H, "H");
  require_finite(G, "G");
}

const char* to_string(DifferenceKind kind) {
  switch (kind) {
    case DifferenceKind::NegativeSemidefinite: return "NegativeSemidefinite";
    case DifferenceKind::PositiveSemidefinite: return "PositiveSemidefinite";
    case DifferenceKind::Indefinite: return "Indefinite";
  }
  return "?";
}

ChannelPair generate_channel(int n_t, int n_r, int n_e, std::uint64_t seed) {
  if (n_t < 1 || n_r < 1 || n_e < 1) {
    throw std::invalid_argument("generate_channel: dimensions must be >= 1");
  }
  GaussianRng rng(seed);
  Eigen::MatrixXcd h(n_r, n_t);
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j) h(i, j) = rng.complex_gaussian();
  Eigen::MatrixXcd g(n_e, n_t);
  for (int i = 0; i < n_e; ++i)
    for (int j = 0; j < n_t; ++j) g(i, j) = rng.complex_gaussian();
  return {std::move(h), std::move(g)};
}

DifferenceClass classify_difference(const ChannelPair& ch, double tol_psd) {
  const Eigen::MatrixXcd diff = ch.H.adjoint() * ch.H - ch.G.adjoint() * ch.G;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("classify_difference: eigendecomposition failed");
  }
  const double min_eig = es.eigenvalues().minCoeff();
  const double max_eig = es.eigenvalues().maxCoeff();
  const double tol = tol_psd * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());

  DifferenceKind kind = DifferenceKind::Indefinite;
  if (max_eig <= tol) {
    kind = DifferenceKind::NegativeSemidefinite;
  } else if (min_eig >= -tol) {
    kind = DifferenceKind::PositiveSemidefinite;
  }
  return {kind, min_eig, max_eig};
}

}  // namespace wtc
