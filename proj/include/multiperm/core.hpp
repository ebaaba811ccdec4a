#pragma once

// Multipermutations, multipermutation matrices and the distances between them.
//
// Symbols are 1-based at every public boundary: a multipermutation over m
// symbols uses the values 1..m, and matrix rows/columns are addressed with
// 0-based indices only through the accessor functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace multiperm {

using RealMatrix = Eigen::MatrixXd;
using BinaryMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

enum class Relation { LessEqual, Equal };

inline const char* to_string(Relation r) { return r == Relation::Equal ? "eq" : "le"; }

/// Per-symbol repetition counts r = (r_1, ..., r_m); n = sum r_i.
class MultiplicityVector {
 public:
  MultiplicityVector() = default;

  explicit MultiplicityVector(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("multiplicity vector must be non-empty");
    for (int c : counts_) {
      if (c < 1) throw std::invalid_argument("multiplicities must be >= 1");
    }
    n_ = std::accumulate(counts_.begin(), counts_.end(), std::size_t{0},
                         [](std::size_t acc, int c) { return acc + static_cast<std::size_t>(c); });
  }

  /// (r, r, ..., r) of length m.
  static MultiplicityVector uniform(int r, int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    return MultiplicityVector(std::vector<int>(static_cast<std::size_t>(m), r));
  }

  std::size_t m() const { return counts_.size(); }
  std::size_t n() const { return n_; }
  int operator[](std::size_t i) const { return counts_[i]; }
  const std::vector<int>& counts() const { return counts_; }

  /// The sorted multipermutation (1,..,1,2,..,2,...,m,..,m).
  std::vector<int> sorted_symbols() const {
    std::vector<int> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < counts_.size(); ++i) out.insert(out.end(), counts_[i], static_cast<int>(i) + 1);
    return out;
  }

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;

 private:
  std::vector<int> counts_;
  std::size_t n_ = 0;
};

/// Half-open 0-based interval [begin, end) of positions.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t k) const { return k >= begin && k < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// The blocks I_1, ..., I_m partitioning the positions of the sorted
/// multipermutation; block i holds the r_i positions of symbol i.
class IndexSets {
 public:
  explicit IndexSets(const MultiplicityVector& r) {
    std::size_t start = 0;
    ranges_.reserve(r.m());
    for (std::size_t i = 0; i < r.m(); ++i) {
      ranges_.push_back({start, start + static_cast<std::size_t>(r[i])});
      start += static_cast<std::size_t>(r[i]);
    }
  }

  std::size_t size() const { return ranges_.size(); }
  const IndexRange& operator[](std::size_t i) const { return ranges_[i]; }

  /// 0-based block containing position k.
  std::size_t block_of(std::size_t k) const {
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
      if (ranges_[i].contains(k)) return i;
    }
    throw std::out_of_range("position outside index sets");
  }

  auto begin() const { return ranges_.begin(); }
  auto end() const { return ranges_.end(); }

 private:
  std::vector<IndexRange> ranges_;
};

/// m distinct modulation levels; codewords are t X.
class InitialVector {
 public:
  InitialVector() = default;

  explicit InitialVector(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("initial vector must be non-empty");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (!std::isfinite(levels_[i])) throw std::invalid_argument("initial vector entries must be finite");
      for (std::size_t k = 0; k < i; ++k) {
        if (levels_[k] == levels_[i]) throw std::invalid_argument("initial vector entries must be distinct");
      }
    }
  }

  /// t = (1, 2, ..., m).
  static InitialVector natural(std::size_t m) {
    std::vector<double> v(m);
    std::iota(v.begin(), v.end(), 1.0);
    return InitialVector(std::move(v));
  }

  std::size_t size() const { return levels_.size(); }
  double operator[](std::size_t i) const { return levels_[i]; }
  const std::vector<double>& values() const { return levels_; }

  friend bool operator==(const InitialVector&, const InitialVector&) = default;

 private:
  std::vector<double> levels_;
};

/// A permutation of the multiset {1^r_1, ..., m^r_m}.
class Multipermutation {
 public:
  Multipermutation(std::vector<int> symbols, MultiplicityVector r) : symbols_(std::move(symbols)), r_(std::move(r)) {
    if (symbols_.size() != r_.n()) {
      throw std::invalid_argument("multipermutation length " + std::to_string(symbols_.size()) +
                                  " does not match n = " + std::to_string(r_.n()));
    }
    std::vector<int> seen(r_.m(), 0);
    for (int s : symbols_) {
      if (s < 1 || static_cast<std::size_t>(s) > r_.m()) {
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside 1.." + std::to_string(r_.m()));
      }
      ++seen[static_cast<std::size_t>(s - 1)];
    }
    for (std::size_t i = 0; i < r_.m(); ++i) {
      if (seen[i] != r_[i]) {
        throw std::invalid_argument("symbol " + std::to_string(i + 1) + " occurs " + std::to_string(seen[i]) +
                                    " times, expected " + std::to_string(r_[i]));
      }
    }
  }

  std::size_t size() const { return symbols_.size(); }
  int operator[](std::size_t j) const { return symbols_[j]; }
  const std::vector<int>& symbols() const { return symbols_; }
  const MultiplicityVector& multiplicity() const { return r_; }

  friend bool operator==(const Multipermutation& a, const Multipermutation& b) { return a.symbols_ == b.symbols_; }
  friend auto operator<=>(const Multipermutation& a, const Multipermutation& b) { return a.symbols_ <=> b.symbols_; }

 private:
  std::vector<int> symbols_;
  MultiplicityVector r_;
};

/// Binary m x n matrix with unit column sums and row sums r.
class MultipermutationMatrix {
 public:
  /// Validates a dense 0/1 matrix against r.
  MultipermutationMatrix(BinaryMatrix entries, MultiplicityVector r) : entries_(std::move(entries)), r_(std::move(r)) {
    validate();
  }

  /// Builds X with X_ij = 1 iff x_j = i.
  explicit MultipermutationMatrix(const Multipermutation& x)
      : entries_(BinaryMatrix::Zero(static_cast<Eigen::Index>(x.multiplicity().m()),
                                    static_cast<Eigen::Index>(x.size()))),
        r_(x.multiplicity()) {
    for (std::size_t j = 0; j < x.size(); ++j) entries_(x[j] - 1, static_cast<Eigen::Index>(j)) = 1;
  }

  std::size_t rows() const { return r_.m(); }
  std::size_t cols() const { return r_.n(); }
  int operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const BinaryMatrix& entries() const { return entries_; }
  const MultiplicityVector& multiplicity() const { return r_; }

  RealMatrix to_real() const { return entries_.cast<double>(); }

  /// 1-based symbol in column j.
  int symbol_at(std::size_t j) const {
    for (std::size_t i = 0; i < rows(); ++i) {
      if ((*this)(i, j) == 1) return static_cast<int>(i) + 1;
    }
    throw std::logic_error("column without a one");  // unreachable after validate()
  }

  Multipermutation to_multipermutation() const {
    std::vector<int> symbols(cols());
    for (std::size_t j = 0; j < cols(); ++j) symbols[j] = symbol_at(j);
    return Multipermutation(std::move(symbols), r_);
  }

  friend bool operator==(const MultipermutationMatrix& a, const MultipermutationMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  void validate() const {
    if (static_cast<std::size_t>(entries_.rows()) != r_.m() || static_cast<std::size_t>(entries_.cols()) != r_.n()) {
      throw std::invalid_argument("multipermutation matrix must be " + std::to_string(r_.m()) + "x" +
                                  std::to_string(r_.n()));
    }
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
      for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        if (entries_(i, j) != 0 && entries_(i, j) != 1) throw std::invalid_argument("entries must be 0 or 1");
      }
    }
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (entries_.col(j).sum() != 1) {
        throw std::invalid_argument("column " + std::to_string(j + 1) + " does not sum to 1");
      }
    }
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
      if (entries_.row(i).sum() != r_[static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("row " + std::to_string(i + 1) + " does not sum to r_" + std::to_string(i + 1));
      }
    }
  }

  BinaryMatrix entries_;
  MultiplicityVector r_;
};

/// n x n 0/1 matrix with exactly one 1 per row and per column.
class PermutationMatrix {
 public:
  explicit PermutationMatrix(BinaryMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw std::invalid_argument("permutation matrix must be square");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
      for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        if (entries_(i, j) != 0 && entries_(i, j) != 1) throw std::invalid_argument("entries must be 0 or 1");
      }
      if (entries_.row(i).sum() != 1 || entries_.col(i).sum() != 1) {
        throw std::invalid_argument("permutation matrix needs exactly one 1 per row and column");
      }
    }
  }

  /// P with P(k, column_of_row[k]) = 1.
  static PermutationMatrix from_assignment(std::span<const std::size_t> column_of_row) {
    const auto n = static_cast<Eigen::Index>(column_of_row.size());
    BinaryMatrix p = BinaryMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) p(k, static_cast<Eigen::Index>(column_of_row[static_cast<std::size_t>(k)])) = 1;
    return PermutationMatrix(std::move(p));
  }

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  int operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const BinaryMatrix& entries() const { return entries_; }
  RealMatrix to_real() const { return entries_.cast<double>(); }

  friend bool operator==(const PermutationMatrix& a, const PermutationMatrix& b) { return a.entries_ == b.entries_; }

 private:
  BinaryMatrix entries_;
};

inline MultipermutationMatrix matrix_from_multipermutation(const Multipermutation& x) {
  return MultipermutationMatrix(x);
}

/// Computes t X: entry j is t_i for the row i holding column j's one.
inline std::vector<double> vector_from_matrix(const MultipermutationMatrix& x, const InitialVector& t) {
  if (t.size() != x.rows()) {
    throw std::invalid_argument("initial vector has " + std::to_string(t.size()) + " entries, matrix has " +
                                std::to_string(x.rows()) + " rows");
  }
  std::vector<double> out(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) out[j] = t[static_cast<std::size_t>(x.symbol_at(j) - 1)];
  return out;
}

/// Row vector t Z for a real m x n matrix (used for relaxed solutions).
inline std::vector<double> modulate(const RealMatrix& z, const InitialVector& t) {
  if (static_cast<std::size_t>(z.rows()) != t.size()) throw std::invalid_argument("initial vector / matrix mismatch");
  std::vector<double> out(static_cast<std::size_t>(z.cols()), 0.0);
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < z.rows(); ++i) acc += t[static_cast<std::size_t>(i)] * z(i, j);
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

template <typename T>
std::size_t hamming_distance(std::span<const T> x, std::span<const T> y) {
  if (x.size() != y.size()) throw std::invalid_argument("hamming distance needs equal lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]) ? 1 : 0;
  return d;
}

template <typename T>
std::size_t hamming_distance_vectors(const std::vector<T>& x, const std::vector<T>& y) {
  return hamming_distance(std::span<const T>(x), std::span<const T>(y));
}

inline std::size_t hamming_distance_vectors(const Multipermutation& x, const Multipermutation& y) {
  return hamming_distance_vectors(x.symbols(), y.symbols());
}

/// Entrywise disagreement count between two equally shaped binary matrices.
inline std::size_t hamming_distance_matrices(const BinaryMatrix& x, const BinaryMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("matrix shapes differ");
  return static_cast<std::size_t>((x.array() != y.array()).count());
}

inline std::size_t hamming_distance_matrices(const MultipermutationMatrix& x, const MultipermutationMatrix& y) {
  return hamming_distance_matrices(x.entries(), y.entries());
}

inline std::size_t hamming_distance_matrices(const PermutationMatrix& x, const PermutationMatrix& y) {
  return hamming_distance_matrices(x.entries(), y.entries());
}

/// tr(X^T (E - Y)) = sum X_ij (1 - Y_ij), E all-ones shaped like X. Only the
/// (1, 0) disagreements contribute, so for equal row sums this is half the
/// entrywise count, i.e. the number of differing columns.
inline std::size_t trace_distance(const BinaryMatrix& x, const BinaryMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("matrix shapes differ");
  const BinaryMatrix ones = BinaryMatrix::Ones(y.rows(), y.cols());
  const BinaryMatrix product = x.transpose() * (ones - y);
  return static_cast<std::size_t>(product.trace());
}

inline std::size_t trace_distance(const MultipermutationMatrix& x, const MultipermutationMatrix& y) {
  return trace_distance(x.entries(), y.entries());
}

inline double chebyshev_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("chebyshev distance needs equal lengths");
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

inline double chebyshev_distance(const std::vector<double>& x, const std::vector<double>& y) {
  return chebyshev_distance(std::span<const double>(x), std::span<const double>(y));
}

inline double euclidean_norm(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

/// Symbols as doubles, i.e. t X with t = (1, ..., m).
inline std::vector<double> as_reals(const std::vector<int>& symbols) {
  return {symbols.begin(), symbols.end()};
}

}  // namespace multiperm
