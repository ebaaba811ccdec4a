#pragma once

// Memoryless channels, noise sampling and the per-entry cost matrices used as
// LP decoding objectives.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiperm/codes.hpp"
#include "multiperm/core.hpp"

namespace multiperm {

/// Generator used for every simulation draw; printed in CSV headers.
inline constexpr const char* kRngAlgorithm = "mt19937_64/splitmix64";

using Rng = std::mt19937_64;

/// splitmix64 finalizer; derives independent per-trial seeds from a base seed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct AwgnChannel {
  double sigma;

  explicit AwgnChannel(double sigma_) : sigma(sigma_) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("AWGN sigma must be positive");
  }
};

struct QSymmetricChannel {
  double p;
  std::size_t m;

  QSymmetricChannel(double p_, std::size_t m_) : p(p_), m(m_) {
    if (m < 2) throw std::invalid_argument("q-ary symmetric channel needs m >= 2");
    if (!(p > 0.0) || !(p < static_cast<double>(m - 1) / static_cast<double>(m))) {
      throw std::invalid_argument("crossover probability must lie in (0, (m-1)/m), got " + std::to_string(p));
    }
  }
};

/// m x n matrix of -log Pr(y_j | t_i), up to argmin-preserving affine changes.
class CostMatrix {
 public:
  explicit CostMatrix(RealMatrix gamma) : gamma_(std::move(gamma)) {
    if (!gamma_.allFinite()) throw std::invalid_argument("cost matrix entries must be finite");
  }

  const RealMatrix& values() const { return gamma_; }
  std::size_t rows() const { return static_cast<std::size_t>(gamma_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(gamma_.cols()); }

  /// Gamma(y) vec(X).
  double cost(const RealMatrix& x) const {
    if (x.rows() != gamma_.rows() || x.cols() != gamma_.cols()) throw std::invalid_argument("cost matrix shape mismatch");
    return gamma_.cwiseProduct(x).sum();
  }

  double cost(const MultipermutationMatrix& x) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) acc += gamma_(x.symbol_at(j) - 1, static_cast<Eigen::Index>(j));
    return acc;
  }

 private:
  RealMatrix gamma_;
};

/// y = x + N(0, sigma^2) noise; sigma = 0 returns x.
inline std::vector<double> sample_awgn(std::span<const double> x, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> y(x.begin(), x.end());
  for (double& v : y) v += sigma * noise(rng);
  return y;
}

/// Keeps each symbol with probability 1 - p, otherwise replaces it by one of
/// the other m - 1 symbols uniformly.
inline std::vector<int> sample_qsc(std::span<const int> x, double p, std::size_t m, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("crossover probability must be in [0, 1]");
  if (m < 2) throw std::invalid_argument("q-ary symmetric channel needs m >= 2");
  Rng rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> other(1, m - 1);
  std::vector<int> y(x.begin(), x.end());
  for (int& s : y) {
    if (s < 1 || static_cast<std::size_t>(s) > m) throw std::invalid_argument("symbol " + std::to_string(s) + " out of range");
    if (coin(rng) < p) {
      // Shift by 1..m-1 positions around the cycle: uniform over the other symbols.
      s = static_cast<int>((static_cast<std::size_t>(s - 1) + other(rng)) % m) + 1;
    }
  }
  return y;
}

/// gamma_ij = (y_j - t_i)^2.
inline CostMatrix cost_matrix_awgn(std::span<const double> y, const InitialVector& t, double sigma) {
  [[maybe_unused]] const AwgnChannel channel(sigma);
  RealMatrix g(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(y.size()));
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double diff = y[j] - t[i];
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = diff * diff;
    }
  }
  return CostMatrix(std::move(g));
}

/// gamma_ij = -log(1 - p) if y_j = i, else -log(p / (m - 1)).
inline CostMatrix cost_matrix_qsc(std::span<const int> y, double p, std::size_t m) {
  const QSymmetricChannel ch(p, m);
  const double match = -std::log(1.0 - ch.p);
  const double mismatch = -std::log(ch.p / static_cast<double>(m - 1));
  RealMatrix g = RealMatrix::Constant(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(y.size()), mismatch);
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] < 1 || static_cast<std::size_t>(y[j]) > m) throw std::invalid_argument("received symbol out of range");
    g(y[j] - 1, static_cast<Eigen::Index>(j)) = match;
  }
  return CostMatrix(std::move(g));
}

/// Log-likelihood of y given transmitted levels x under AWGN (all constants kept).
inline double log_likelihood_awgn(std::span<const double> y, std::span<const double> x, double sigma) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * sigma * sigma);
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) acc += norm - (y[j] - x[j]) * (y[j] - x[j]) / (2.0 * sigma * sigma);
  return acc;
}

/// Log-likelihood of received symbols y given transmitted symbols x under the q-SC.
inline double log_likelihood_qsc(std::span<const int> y, std::span<const int> x, double p, std::size_t m) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) acc += y[j] == x[j] ? std::log(1.0 - p) : std::log(p / static_cast<double>(m - 1));
  return acc;
}

/// Standard normal tail probability.
inline double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// (||tX||^2 - tX^ (tX)^T) / ||tX^ - tX||.
inline double pseudodistance_awgn(const RealMatrix& x, const RealMatrix& x_hat, const InitialVector& t) {
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols()) throw std::invalid_argument("matrix shapes differ");
  const auto tx = modulate(x, t);
  const auto tx_hat = modulate(x_hat, t);
  double sq = 0.0;
  double cross = 0.0;
  double diff = 0.0;
  for (std::size_t j = 0; j < tx.size(); ++j) {
    sq += tx[j] * tx[j];
    cross += tx_hat[j] * tx[j];
    diff += (tx_hat[j] - tx[j]) * (tx_hat[j] - tx[j]);
  }
  if (diff == 0.0) throw std::domain_error("pseudodistance is undefined when t X^ = t X");
  return (sq - cross) / std::sqrt(diff);
}

inline double pseudodistance_awgn(const MultipermutationMatrix& x, const MultipermutationMatrix& x_hat,
                                  const InitialVector& t) {
  return pseudodistance_awgn(x.to_real(), x_hat.to_real(), t);
}

/// Sum over codewords X^ != X of Q(omega(X, X^) / sigma).
inline double union_bound_awgn(const Codebook& book, const MultipermutationMatrix& x, const InitialVector& t,
                               double sigma) {
  const AwgnChannel ch(sigma);
  if (!book.find(x)) throw std::invalid_argument("transmitted matrix is not a codeword");
  double bound = 0.0;
  for (const auto& other : book) {
    if (other == x) continue;
    bound += normal_tail(pseudodistance_awgn(x, other, t) / ch.sigma);
  }
  return bound;
}

}  // namespace multiperm
