#pragma once

// Brute-force reference decoders over an enumerated codebook.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiperm/channels.hpp"
#include "multiperm/codes.hpp"
#include "multiperm/core.hpp"

namespace multiperm {

inline constexpr std::size_t kOracleEvaluationCap = 1'000'000;

struct OracleResult {
  std::size_t best_index = 0;
  std::vector<int> best;
  double value = 0.0;
  std::size_t tie_set_size = 0;
};

namespace detail {

inline void check_oracle_book(const Codebook& book) {
  if (book.empty()) throw std::invalid_argument("oracle needs a non-empty codebook");
  if (book.size() > kOracleEvaluationCap) {
    throw std::invalid_argument("codebook of " + std::to_string(book.size()) + " words exceeds the oracle cap of " +
                                std::to_string(kOracleEvaluationCap));
  }
}

inline bool same_value(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
}

/// Scans the codebook in order, so the first minimizer is the lexicographically smallest.
template <typename Score>
OracleResult argmin_over(const Codebook& book, Score&& score) {
  check_oracle_book(book);
  OracleResult out;
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < book.size(); ++k) {
    const double v = score(book[k]);
    if (out.tie_set_size > 0 && same_value(v, out.value)) {
      ++out.tie_set_size;
    } else if (v < out.value) {
      out.value = v;
      out.best_index = k;
      out.tie_set_size = 1;
    }
  }
  out.best = book.symbols(out.best_index);
  return out;
}

}  // namespace detail

/// Exact minimizer of Gamma(y) vec(X) over the codebook.
inline OracleResult ml_decode_exhaustive(const Codebook& book, const CostMatrix& gamma) {
  return detail::argmin_over(book, [&](const MultipermutationMatrix& x) { return gamma.cost(x); });
}

/// Exact minimizer of d_inf(t X, y) over the codebook.
inline OracleResult chebyshev_decode_exhaustive(const Codebook& book, std::span<const double> y, const InitialVector& t) {
  return detail::argmin_over(book, [&](const MultipermutationMatrix& x) {
    const auto tx = vector_from_matrix(x, t);
    return chebyshev_distance(std::span<const double>(tx), y);
  });
}

/// Exact minimizer of d_H(t X, y) over the codebook.
inline OracleResult hamming_decode_exhaustive(const Codebook& book, std::span<const double> y, const InitialVector& t) {
  return detail::argmin_over(book, [&](const MultipermutationMatrix& x) {
    const auto tx = vector_from_matrix(x, t);
    return static_cast<double>(hamming_distance(std::span<const double>(tx), y));
  });
}

struct RadiusReport {
  double min_distance = 0.0;
  bool distance_matches = false;
  std::size_t radius = 0;
  /// Every pair of codewords is more than 2 * radius apart, so balls of that
  /// radius are disjoint.
  bool balls_disjoint = false;
  std::size_t perturbations_checked = 0;
  bool all_decoded = false;

  bool ok() const { return distance_matches && balls_disjoint && all_decoded; }
};

/// Checks the claimed minimum distance and that received words within radius
/// floor((d - 1) / 2) of a codeword decode back to it under the exhaustive
/// decoder for the metric. The perturbations tried per codeword are: for the
/// Chebyshev metric, +-radius on one or two coordinates plus the constant
/// shifts +-radius; for the Hamming metric, every word within Hamming distance
/// min(radius, 2) over the alphabet t.
inline RadiusReport error_correction_radius_report(const Codebook& book, const InitialVector& t, Metric metric,
                                                   double claimed_min_distance) {
  if (book.size() < 2) throw std::invalid_argument("radius check needs at least two codewords");
  RadiusReport rep;
  rep.min_distance = min_distance(book, metric, t);
  rep.distance_matches = detail::same_value(rep.min_distance, claimed_min_distance);
  if (!(claimed_min_distance >= 1.0)) {
    rep.all_decoded = false;
    return rep;
  }
  rep.radius = static_cast<std::size_t>(std::floor((claimed_min_distance - 1.0) / 2.0));
  rep.balls_disjoint = rep.min_distance > 2.0 * static_cast<double>(rep.radius);

  const auto decode = [&](const std::vector<double>& y) {
    return metric == Metric::Chebyshev ? chebyshev_decode_exhaustive(book, y, t) : hamming_decode_exhaustive(book, y, t);
  };
  rep.all_decoded = true;
  const auto check = [&](std::size_t k, const std::vector<double>& y) {
    ++rep.perturbations_checked;
    const auto res = decode(y);
    if (res.best_index != k || res.tie_set_size != 1) rep.all_decoded = false;
  };

  const double rho = static_cast<double>(rep.radius);
  for (std::size_t k = 0; k < book.size(); ++k) {
    const auto x = vector_from_matrix(book[k], t);
    const std::size_t n = x.size();
    if (rep.radius == 0) {
      check(k, x);
      continue;
    }
    if (metric == Metric::Chebyshev) {
      for (double sign : {-1.0, 1.0}) {
        auto y = x;
        for (double& v : y) v += sign * rho;
        check(k, y);
      }
      for (std::size_t a = 0; a < n; ++a) {
        for (double sa : {-1.0, 1.0}) {
          auto y = x;
          y[a] += sa * rho;
          check(k, y);
          for (std::size_t b = a + 1; b < n; ++b) {
            for (double sb : {-1.0, 1.0}) {
              auto y2 = y;
              y2[b] += sb * rho;
              check(k, y2);
            }
          }
        }
      }
    } else {
      const std::size_t depth = std::min<std::size_t>(rep.radius, 2);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t la = 0; la < t.size(); ++la) {
          if (t[la] == x[a]) continue;
          auto y = x;
          y[a] = t[la];
          check(k, y);
          if (depth < 2) continue;
          for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t lb = 0; lb < t.size(); ++lb) {
              if (t[lb] == x[b]) continue;
              auto y2 = y;
              y2[b] = t[lb];
              check(k, y2);
            }
          }
        }
      }
    }
  }
  return rep;
}

inline bool error_correction_radius_check(const Codebook& book, const InitialVector& t, Metric metric,
                                          double claimed_min_distance) {
  return error_correction_radius_report(book, t, metric, claimed_min_distance).ok();
}

}  // namespace multiperm
