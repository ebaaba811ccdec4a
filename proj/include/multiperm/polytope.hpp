#pragma once

// The multipermutation polytope: membership, the lift of a relaxed m x n
// matrix to an n x n doubly stochastic matrix, and the constructive
// decomposition into a convex combination of multipermutation matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "multiperm/core.hpp"
#include "multiperm/matching.hpp"

namespace multiperm {

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kSolverTolerance = 1e-6;

enum class PolytopeCondition { ColumnSums, RowSums, UnitInterval };

inline const char* to_string(PolytopeCondition c) {
  switch (c) {
    case PolytopeCondition::ColumnSums:
      return "(a) column sums";
    case PolytopeCondition::RowSums:
      return "(b) row sums";
    case PolytopeCondition::UnitInterval:
      return "(c) entries in [0,1]";
  }
  return "?";
}

struct Violation {
  PolytopeCondition condition;
  double worst_residual;
};

struct MembershipReport {
  bool member = true;
  std::vector<Violation> violations;

  explicit operator bool() const { return member; }
};

/// Checks column sums 1, row sums r and entries in [0,1], each within eps.
inline MembershipReport membership_check(const RealMatrix& z, const MultiplicityVector& r,
                                         double eps = kExactTolerance) {
  if (static_cast<std::size_t>(z.rows()) != r.m() || static_cast<std::size_t>(z.cols()) != r.n()) {
    throw std::invalid_argument("matrix is " + std::to_string(z.rows()) + "x" + std::to_string(z.cols()) +
                                ", multiplicity vector needs " + std::to_string(r.m()) + "x" + std::to_string(r.n()));
  }
  if (!z.allFinite()) throw std::invalid_argument("matrix has non-finite entries");

  double col_residual = 0.0;
  for (Eigen::Index j = 0; j < z.cols(); ++j) col_residual = std::max(col_residual, std::abs(z.col(j).sum() - 1.0));
  double row_residual = 0.0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    row_residual = std::max(row_residual, std::abs(z.row(i).sum() - r[static_cast<std::size_t>(i)]));
  }
  const double box_residual = std::max({0.0, -z.minCoeff(), z.maxCoeff() - 1.0});

  MembershipReport report;
  if (col_residual > eps) report.violations.push_back({PolytopeCondition::ColumnSums, col_residual});
  if (row_residual > eps) report.violations.push_back({PolytopeCondition::RowSums, row_residual});
  if (box_residual > eps) report.violations.push_back({PolytopeCondition::UnitInterval, box_residual});
  report.member = report.violations.empty();
  return report;
}

/// A point of the multipermutation polytope, validated on construction.
class RelaxedMatrix {
 public:
  RelaxedMatrix(RealMatrix z, MultiplicityVector r, double eps = kExactTolerance) : z_(std::move(z)), r_(std::move(r)) {
    const auto report = membership_check(z_, r_, eps);
    if (!report) {
      std::string msg = "matrix is outside the multipermutation polytope:";
      for (const auto& v : report.violations) msg += std::string(" ") + to_string(v.condition) + " residual " + std::to_string(v.worst_residual);
      throw std::invalid_argument(msg);
    }
  }

  explicit RelaxedMatrix(const MultipermutationMatrix& x) : z_(x.to_real()), r_(x.multiplicity()) {}

  const RealMatrix& values() const { return z_; }
  const MultiplicityVector& multiplicity() const { return r_; }
  std::size_t rows() const { return r_.m(); }
  std::size_t cols() const { return r_.n(); }
  double operator()(std::size_t i, std::size_t j) const {
    return z_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  RealMatrix z_;
  MultiplicityVector r_;
};

/// Nonnegative square matrix with unit row and column sums.
class DoublyStochasticMatrix {
 public:
  explicit DoublyStochasticMatrix(RealMatrix q, double eps = kExactTolerance) : q_(std::move(q)) {
    if (q_.rows() != q_.cols()) throw std::invalid_argument("doubly stochastic matrix must be square");
    if (!q_.allFinite()) throw std::invalid_argument("doubly stochastic matrix has non-finite entries");
    if (q_.size() > 0 && q_.minCoeff() < -eps) throw std::invalid_argument("doubly stochastic matrix has negative entries");
    for (Eigen::Index k = 0; k < q_.rows(); ++k) {
      if (std::abs(q_.row(k).sum() - 1.0) > eps || std::abs(q_.col(k).sum() - 1.0) > eps) {
        throw std::invalid_argument("row or column " + std::to_string(k + 1) + " of Q does not sum to 1");
      }
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(q_.rows()); }
  const RealMatrix& values() const { return q_; }

 private:
  RealMatrix q_;
};

template <typename Matrix>
struct WeightedTerm {
  double weight;
  Matrix matrix;
};

/// Weighted list of 0/1 matrices whose weighted sum reproduces a polytope point.
template <typename Matrix>
class ConvexCombination {
 public:
  ConvexCombination() = default;
  explicit ConvexCombination(std::vector<WeightedTerm<Matrix>> terms) : terms_(std::move(terms)) {}

  void add(double weight, Matrix matrix) { terms_.push_back({weight, std::move(matrix)}); }

  const std::vector<WeightedTerm<Matrix>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double total_weight() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.weight;
    return s;
  }

  RealMatrix recombine() const {
    if (terms_.empty()) throw std::logic_error("cannot recombine an empty combination");
    RealMatrix acc = RealMatrix::Zero(terms_.front().matrix.entries().rows(), terms_.front().matrix.entries().cols());
    for (const auto& t : terms_) acc += t.weight * t.matrix.to_real();
    return acc;
  }

 private:
  std::vector<WeightedTerm<Matrix>> terms_;
};

/// The staircase matrix of the sorted multipermutation: X_ik = 1 iff k is in I_i.
inline MultipermutationMatrix canonical_sorted_matrix(const MultiplicityVector& r) {
  return MultipermutationMatrix(Multipermutation(r.sorted_symbols(), r));
}

/// Q with Q_kj = Z_ij / r_i for every k in I_i, so that X_sorted * Q = Z.
inline DoublyStochasticMatrix stochastic_from_relaxed(const RelaxedMatrix& z, double eps = kExactTolerance) {
  const MultiplicityVector& r = z.multiplicity();
  const IndexSets blocks(r);
  const auto n = static_cast<Eigen::Index>(r.n());
  RealMatrix q(n, n);
  for (std::size_t i = 0; i < r.m(); ++i) {
    const double scale = 1.0 / r[i];
    for (std::size_t k = blocks[i].begin; k < blocks[i].end; ++k) {
      q.row(static_cast<Eigen::Index>(k)) = scale * z.values().row(static_cast<Eigen::Index>(i));
    }
  }
  // Relaxed inputs are checked at eps; the lift inherits at most that error per row/column.
  return DoublyStochasticMatrix(std::move(q), std::max(eps, kExactTolerance) * static_cast<double>(std::max<Eigen::Index>(n, 1)));
}

/// Greedy Birkhoff-von Neumann decomposition. Each round matches the support
/// of the residual, peels off the smallest matched weight and zeroes that entry,
/// so at most (n-1)^2 + 1 rounds run.
inline ConvexCombination<PermutationMatrix> birkhoff_decompose(const DoublyStochasticMatrix& q,
                                                               double eps = kExactTolerance) {
  const std::size_t n = q.size();
  RealMatrix residual = q.values();
  ConvexCombination<PermutationMatrix> out;
  double remaining = 1.0;
  const std::size_t max_rounds = (n - 1) * (n - 1) + 1;

  for (std::size_t round = 0; round < max_rounds; ++round) {
    residual = residual.unaryExpr([eps](double v) { return v <= eps ? 0.0 : v; });
    if (residual.maxCoeff() <= eps || remaining <= static_cast<double>(n) * eps) break;

    BipartiteSupport support(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (residual(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) > 0.0) support.set(k, j);
      }
    }
    const auto matching = perfect_matching(support);
    if (!matching) {
      throw std::runtime_error("no perfect matching on the residual support (remaining weight " +
                               std::to_string(remaining) + "); input is not doubly stochastic");
    }

    std::size_t argmin_row = 0;
    double weight = 2.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = residual(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((*matching)[k]));
      if (v < weight) {
        weight = v;
        argmin_row = k;
      }
    }
    for (std::size_t k = 0; k < n; ++k) residual(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((*matching)[k])) -= weight;
    residual(static_cast<Eigen::Index>(argmin_row), static_cast<Eigen::Index>((*matching)[argmin_row])) = 0.0;
    remaining -= weight;
    out.add(weight, PermutationMatrix::from_assignment(*matching));
  }
  return out;
}

/// X_sorted * P: the multipermutation matrix whose column j carries symbol i
/// iff P maps some position of block I_i to j.
inline MultipermutationMatrix project_permutation(const PermutationMatrix& p, const MultiplicityVector& r) {
  if (p.size() != r.n()) throw std::invalid_argument("permutation size does not match n");
  const IndexSets blocks(r);
  std::vector<int> symbols(r.n());
  for (std::size_t k = 0; k < r.n(); ++k) {
    for (std::size_t j = 0; j < r.n(); ++j) {
      if (p(k, j) == 1) symbols[j] = static_cast<int>(blocks.block_of(k)) + 1;
    }
  }
  return MultipermutationMatrix(Multipermutation(std::move(symbols), r));
}

/// Writes Z as a convex combination of multipermutation matrices. Permutations
/// that project to the same multipermutation matrix are merged.
inline ConvexCombination<MultipermutationMatrix> decompose_relaxed(const RelaxedMatrix& z,
                                                                   double eps = kExactTolerance) {
  const auto q = stochastic_from_relaxed(z, eps);
  const auto perms = birkhoff_decompose(q, eps);
  std::vector<WeightedTerm<MultipermutationMatrix>> merged;
  for (const auto& term : perms.terms()) {
    auto x = project_permutation(term.matrix, z.multiplicity());
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& t) { return t.matrix == x; });
    if (it != merged.end()) {
      it->weight += term.weight;
    } else {
      merged.push_back({term.weight, std::move(x)});
    }
  }
  return ConvexCombination<MultipermutationMatrix>(std::move(merged));
}

}  // namespace multiperm
