#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace wtc {

// Wiretap channel pair: H is the legitimate (Bob) channel, G the
// eavesdropper (Eve) channel, for an N_t-antenna transmitter.
struct ChannelPair {
  Eigen::MatrixXcd H;  // N_r x N_t
  Eigen::MatrixXcd G;  // N_e x N_t

  ChannelPair(Eigen::MatrixXcd h, Eigen::MatrixXcd g);

  int n_t() const { return static_cast<int>(H.cols()); }
  int n_r() const { return static_cast<int>(H.rows()); }
  int n_e() const { return static_cast<int>(G.rows()); }
};

enum class DifferenceKind { NegativeSemidefinite, PositiveSemidefinite, Indefinite };

// Eigenvalue-sign classification of H'H - G'G. NegativeSemidefinite means
// the secrecy capacity is identically zero; a sign-definite difference is
// the "degraded" regime.
struct DifferenceClass {
  DifferenceKind kind;
  double min_eig;
  double max_eig;
};

const char* to_string(DifferenceKind kind);

// i.i.d. CN(0,1) entries, row-major fill of H then G; pure in (dims, seed).
ChannelPair generate_channel(int n_t, int n_r, int n_e, std::uint64_t seed);

// tol_psd is relative: the zero threshold is tol_psd * max(1, max |eigenvalue|).
DifferenceClass classify_difference(const ChannelPair& ch, double tol_psd = 1e-9);

}  // namespace wtc
