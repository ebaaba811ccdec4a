#pragma once

// LP decoding over the code polytope: the memoryless-channel decoder that
// minimizes Gamma(y) vec(X), the Chebyshev decoder that minimizes delta with
// -delta <= t X - y <= delta, integrality (ML certificate) detection and the
// per-column argmax rounding of fractional optima.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiperm/channels.hpp"
#include "multiperm/codes.hpp"
#include "multiperm/core.hpp"
#include "multiperm/lp.hpp"
#include "multiperm/polytope.hpp"

namespace multiperm {

inline constexpr double kIntegralityTolerance = 1e-6;

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position of X_ij in vec(X) (column-major).
inline std::size_t vec_index(std::size_t i, std::size_t j, std::size_t m) { return j * m + i; }

/// Variables vec(X) with [0,1] bounds, n column-sum rows, m row-sum rows and
/// one row per side constraint of the spec, in that order. No objective.
inline LinearProgram build_polytope_rows(const CodeSpec& spec, std::size_t extra_vars = 0) {
  const std::size_t m = spec.m();
  const std::size_t n = spec.n();
  LinearProgram lp(m * n + extra_vars);
  for (std::size_t v = 0; v < m * n; ++v) lp.set_bounds(v, 0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> row;
    for (std::size_t i = 0; i < m; ++i) row.emplace_back(vec_index(i, j, m), 1.0);
    lp.add_row(std::move(row), Relation::Equal, 1.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<std::size_t, double>> row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(vec_index(i, j, m), 1.0);
    lp.add_row(std::move(row), Relation::Equal, static_cast<double>(spec.r[i]));
  }
  for (const auto& c : spec.constraints) {
    std::vector<std::pair<std::size_t, double>> row;
    for (const auto& term : c.terms()) row.emplace_back(vec_index(term.row, term.col, m), static_cast<double>(term.coef));
    lp.add_row(std::move(row), c.relation(), static_cast<double>(c.rhs()));
  }
  return lp;
}

/// Symbol string produced by rounding; valid is false when its symbol counts
/// do not match the multiplicity vector.
struct RoundedWord {
  std::vector<int> symbols;
  bool valid = false;
};

/// x_j = argmax_i Z_ij, ties to the smallest row.
inline RoundedWord round_solution(const RealMatrix& z, const MultiplicityVector& r) {
  if (static_cast<std::size_t>(z.rows()) != r.m() || static_cast<std::size_t>(z.cols()) != r.n()) {
    throw std::invalid_argument("relaxed matrix shape does not match the multiplicity vector");
  }
  RoundedWord out;
  out.symbols.resize(r.n());
  std::vector<int> counts(r.m(), 0);
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < z.rows(); ++i) {
      if (z(i, j) > z(best, j)) best = i;
    }
    out.symbols[static_cast<std::size_t>(j)] = static_cast<int>(best) + 1;
    ++counts[static_cast<std::size_t>(best)];
  }
  out.valid = counts == r.counts();
  return out;
}

/// True iff every entry is within eps of 0 or 1.
inline bool certificate_check(const RealMatrix& z, double eps = kIntegralityTolerance) {
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    const double v = z.data()[k];
    if (std::min(std::abs(v), std::abs(v - 1.0)) > eps) return false;
  }
  return true;
}

struct DecodeResult {
  RelaxedMatrix relaxed;
  double objective = 0.0;
  bool certificate = false;
  RoundedWord decoded;
  std::optional<double> delta;

  /// The decoded multipermutation matrix when the rounding is valid.
  std::optional<MultipermutationMatrix> decoded_matrix() const {
    if (!decoded.valid) return std::nullopt;
    return MultipermutationMatrix(Multipermutation(decoded.symbols, relaxed.multiplicity()));
  }
};

namespace detail {

inline RealMatrix unvec(const std::vector<double>& values, std::size_t m, std::size_t n) {
  RealMatrix z(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[vec_index(i, j, m)];
  }
  return z;
}

inline LpSolution solve_or_throw(const LinearProgram& lp, LpMethod method, const CodeSpec& spec) {
  auto sol = solve_lp(lp, method);
  if (sol.status != LpStatus::Optimal) {
    throw DecodeError(std::string("LP decoding problem is ") + to_string(sol.status) + " for code " +
                      (spec.name.empty() ? "<unnamed>" : spec.name));
  }
  return sol;
}

}  // namespace detail

/// min Gamma(y) vec(X) over the code polytope.
inline DecodeResult decode_memoryless(const CodeSpec& spec, const CostMatrix& gamma,
                                      LpMethod method = LpMethod::Central) {
  if (gamma.rows() != spec.m() || gamma.cols() != spec.n()) {
    throw std::invalid_argument("cost matrix must be " + std::to_string(spec.m()) + "x" + std::to_string(spec.n()));
  }
  auto lp = build_polytope_rows(spec);
  for (std::size_t j = 0; j < spec.n(); ++j) {
    for (std::size_t i = 0; i < spec.m(); ++i) {
      lp.set_objective(vec_index(i, j, spec.m()), gamma.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  const auto sol = detail::solve_or_throw(lp, method, spec);
  RealMatrix z = detail::unvec(sol.values, spec.m(), spec.n());
  const bool certified = certificate_check(z);
  auto rounded = round_solution(z, spec.r);
  return DecodeResult{RelaxedMatrix(std::move(z), spec.r, kSolverTolerance), sol.objective_value, certified,
                      std::move(rounded), std::nullopt};
}

/// min delta subject to X in the code polytope and |(t X)_j - y_j| <= delta.
inline DecodeResult decode_chebyshev(const CodeSpec& spec, std::span<const double> y,
                                     LpMethod method = LpMethod::Central) {
  const std::size_t m = spec.m();
  const std::size_t n = spec.n();
  if (y.size() != n) {
    throw std::invalid_argument("received word has length " + std::to_string(y.size()) + ", expected " + std::to_string(n));
  }
  auto lp = build_polytope_rows(spec, 1);
  const std::size_t delta = m * n;
  lp.set_bounds(delta, 0.0, kInfinity);
  lp.set_objective(delta, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> upper;
    std::vector<std::pair<std::size_t, double>> lower;
    for (std::size_t i = 0; i < m; ++i) {
      upper.emplace_back(vec_index(i, j, m), spec.t[i]);
      lower.emplace_back(vec_index(i, j, m), -spec.t[i]);
    }
    upper.emplace_back(delta, -1.0);
    lower.emplace_back(delta, -1.0);
    lp.add_row(std::move(upper), Relation::LessEqual, y[j]);
    lp.add_row(std::move(lower), Relation::LessEqual, -y[j]);
  }
  const auto sol = detail::solve_or_throw(lp, method, spec);
  RealMatrix z = detail::unvec(sol.values, m, n);
  const bool certified = certificate_check(z);
  auto rounded = round_solution(z, spec.r);
  const double delta_value = sol.values[delta];
  return DecodeResult{RelaxedMatrix(std::move(z), spec.r, kSolverTolerance), delta_value, certified,
                      std::move(rounded), delta_value};
}

}  // namespace multiperm
