#pragma once

// Linearly constrained multipermutation codes: constraint rows over the m x n
// grid of X, concrete code families, exhaustive codebook enumeration and the
// translation to an equivalent permutation-matrix constraint system.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiperm/core.hpp"

namespace multiperm {

/// One coefficient of a constraint row; row/col are 0-based.
struct ConstraintTerm {
  std::size_t row;
  std::size_t col;
  std::int64_t coef;

  friend bool operator==(const ConstraintTerm&, const ConstraintTerm&) = default;
};

/// sum coef * X(row, col)  (<= | =)  rhs, evaluated in exact integers.
class LinearConstraint {
 public:
  LinearConstraint(std::vector<ConstraintTerm> terms, Relation relation, std::int64_t rhs)
      : terms_(std::move(terms)), relation_(relation), rhs_(rhs) {
    if (std::none_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.coef != 0; })) {
      throw std::invalid_argument("constraint needs at least one nonzero coefficient");
    }
  }

  const std::vector<ConstraintTerm>& terms() const { return terms_; }
  Relation relation() const { return relation_; }
  std::int64_t rhs() const { return rhs_; }

  template <typename Entry>
  std::int64_t lhs(Entry&& entry) const {
    std::int64_t acc = 0;
    for (const auto& t : terms_) acc += t.coef * static_cast<std::int64_t>(entry(t.row, t.col));
    return acc;
  }

  bool holds(std::int64_t lhs_value) const {
    return relation_ == Relation::Equal ? lhs_value == rhs_ : lhs_value <= rhs_;
  }

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;

 private:
  std::vector<ConstraintTerm> terms_;
  Relation relation_;
  std::int64_t rhs_;
};

/// Multiplicity vector, initial vector and side constraints of one code.
struct CodeSpec {
  MultiplicityVector r;
  InitialVector t;
  std::vector<LinearConstraint> constraints;
  std::string name;

  CodeSpec(MultiplicityVector r_, InitialVector t_, std::vector<LinearConstraint> constraints_ = {},
           std::string name_ = {})
      : r(std::move(r_)), t(std::move(t_)), constraints(std::move(constraints_)), name(std::move(name_)) {
    if (t.size() != r.m()) throw std::invalid_argument("initial vector length must equal m");
    for (const auto& c : constraints) {
      for (const auto& term : c.terms()) {
        if (term.row >= r.m() || term.col >= r.n()) {
          throw std::invalid_argument("constraint term (" + std::to_string(term.row + 1) + "," +
                                      std::to_string(term.col + 1) + ") outside the " + std::to_string(r.m()) + "x" +
                                      std::to_string(r.n()) + " grid");
        }
      }
    }
  }

  std::size_t m() const { return r.m(); }
  std::size_t n() const { return r.n(); }
};

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool satisfies(const MultipermutationMatrix& x, const CodeSpec& spec) {
  if (x.rows() != spec.m() || x.cols() != spec.n()) throw std::invalid_argument("matrix shape does not match spec");
  return std::all_of(spec.constraints.begin(), spec.constraints.end(), [&](const LinearConstraint& c) {
    return c.holds(c.lhs([&](std::size_t i, std::size_t j) { return x(i, j); }));
  });
}

/// Symbol i may not occupy any position of its own block I_i.
inline CodeSpec derangement_spec(const MultiplicityVector& r, const InitialVector& t) {
  const IndexSets blocks(r);
  std::vector<LinearConstraint> rows;
  for (std::size_t i = 0; i < r.m(); ++i) {
    std::vector<ConstraintTerm> terms;
    for (std::size_t j = blocks[i].begin; j < blocks[i].end; ++j) terms.push_back({i, j, 1});
    rows.emplace_back(std::move(terms), Relation::Equal, 0);
  }
  return CodeSpec(r, t, std::move(rows), "derangement");
}

/// C(r, m, d): x_j = j (mod d) at every position, written as X_ij = 0 for
/// i != j (mod d), column by column. Uses t = (1, ..., m).
inline CodeSpec shieh_spec(int r, int m, int d) {
  if (r < 1 || m < 1 || d < 1) throw std::invalid_argument("r, m and d must be positive");
  if (m % d != 0) throw std::invalid_argument("d = " + std::to_string(d) + " does not divide m = " + std::to_string(m));
  const auto mult = MultiplicityVector::uniform(r, m);
  std::vector<LinearConstraint> rows;
  for (std::size_t j = 1; j <= mult.n(); ++j) {
    for (std::size_t i = 1; i <= mult.m(); ++i) {
      if ((i % static_cast<std::size_t>(d)) != (j % static_cast<std::size_t>(d))) {
        rows.emplace_back(std::vector<ConstraintTerm>{{i - 1, j - 1, 1}}, Relation::Equal, 0);
      }
    }
  }
  return CodeSpec(mult, InitialVector::natural(mult.m()), std::move(rows),
                  "shieh(" + std::to_string(r) + "," + std::to_string(m) + "," + std::to_string(d) + ")");
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw std::overflow_error("integer overflow");
  return a * b;
}

/// n! / prod(r_i!) computed as a product of binomials, exact in 64 bits.
inline std::uint64_t multinomial(const std::vector<int>& parts) {
  std::uint64_t result = 1;
  std::uint64_t placed = 0;
  for (int part : parts) {
    // C(placed + k, k) built incrementally; each division is exact.
    std::uint64_t binom = 1;
    for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(part); ++k) binom = checked_mul(binom, placed + k) / k;
    placed += static_cast<std::uint64_t>(part);
    result = checked_mul(result, binom);
  }
  return result;
}

}  // namespace detail

/// |M(r)| = n! / prod r_i!.
inline std::uint64_t multiset_permutation_count(const MultiplicityVector& r) { return detail::multinomial(r.counts()); }

/// ((a r)! / (r!)^a)^d with a = m / d.
inline std::uint64_t shieh_cardinality(int r, int m, int d) {
  if (r < 1 || m < 1 || d < 1) throw std::invalid_argument("r, m and d must be positive");
  if (m % d != 0) throw std::invalid_argument("d = " + std::to_string(d) + " does not divide m = " + std::to_string(m));
  const int a = m / d;
  const std::uint64_t per_class = detail::multinomial(std::vector<int>(static_cast<std::size_t>(a), r));
  std::uint64_t out = 1;
  for (int k = 0; k < d; ++k) out = detail::checked_mul(out, per_class);
  return out;
}

/// Excludes exactly Y: sum over Y's support of X_ij <= n - 1.
inline LinearConstraint exclusion_constraint(const MultipermutationMatrix& y) {
  std::vector<ConstraintTerm> terms;
  for (std::size_t j = 0; j < y.cols(); ++j) terms.push_back({static_cast<std::size_t>(y.symbol_at(j) - 1), j, 1});
  return LinearConstraint(std::move(terms), Relation::LessEqual, static_cast<std::int64_t>(y.cols()) - 1);
}

/// Deduplicated codewords in lexicographic order of their symbol strings.
class Codebook {
 public:
  Codebook() = default;
  explicit Codebook(std::vector<MultipermutationMatrix> words) : words_(std::move(words)) {
    symbols_.reserve(words_.size());
    for (const auto& w : words_) symbols_.push_back(w.to_multipermutation().symbols());
    for (std::size_t k = 1; k < symbols_.size(); ++k) {
      if (!(symbols_[k - 1] < symbols_[k])) throw std::invalid_argument("codebook must be strictly lexicographic");
    }
  }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const MultipermutationMatrix& operator[](std::size_t k) const { return words_[k]; }
  const std::vector<MultipermutationMatrix>& words() const { return words_; }
  const std::vector<int>& symbols(std::size_t k) const { return symbols_[k]; }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  std::optional<std::size_t> find(const std::vector<int>& symbols) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbols);
    if (it == symbols_.end() || *it != symbols) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  std::optional<std::size_t> find(const MultipermutationMatrix& x) const {
    return find(x.to_multipermutation().symbols());
  }

 private:
  std::vector<MultipermutationMatrix> words_;
  std::vector<std::vector<int>> symbols_;
};

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

namespace detail {

/// Depth-first search over positions in order, symbols ascending, pruning a
/// branch once some constraint can no longer be met by any completion.
class CodebookSearch {
 public:
  explicit CodebookSearch(const CodeSpec& spec) : spec_(spec), m_(spec.m()), n_(spec.n()) {
    const std::size_t nc = spec.constraints.size();
    coef_.assign(nc, std::vector<std::int64_t>(m_ * n_, 0));
    touching_.assign(n_, {});
    for (std::size_t c = 0; c < nc; ++c) {
      for (const auto& t : spec.constraints[c].terms()) coef_[c][t.col * m_ + t.row] += t.coef;
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < m_; ++i) {
          if (coef_[c][j * m_ + i] != 0) {
            touching_[j].push_back(c);
            break;
          }
        }
      }
    }
    // Bounds on what columns j..n-1 can still add to each row.
    min_rest_.assign(nc, std::vector<std::int64_t>(n_ + 1, 0));
    max_rest_.assign(nc, std::vector<std::int64_t>(n_ + 1, 0));
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t j = n_; j-- > 0;) {
        std::int64_t lo = coef_[c][j * m_];
        std::int64_t hi = lo;
        for (std::size_t i = 1; i < m_; ++i) {
          lo = std::min(lo, coef_[c][j * m_ + i]);
          hi = std::max(hi, coef_[c][j * m_ + i]);
        }
        min_rest_[c][j] = min_rest_[c][j + 1] + lo;
        max_rest_[c][j] = max_rest_[c][j + 1] + hi;
      }
    }
  }

  std::vector<MultipermutationMatrix> run() {
    partial_.assign(spec_.constraints.size(), 0);
    remaining_ = spec_.r.counts();
    current_.assign(n_, 0);
    for (std::size_t c = 0; c < spec_.constraints.size(); ++c) {
      if (!feasible(c, 0)) return {};
    }
    visit(0);
    return std::move(found_);
  }

 private:
  bool feasible(std::size_t c, std::size_t next_col) const {
    const auto& con = spec_.constraints[c];
    const std::int64_t lo = partial_[c] + min_rest_[c][next_col];
    const std::int64_t hi = partial_[c] + max_rest_[c][next_col];
    if (con.relation() == Relation::Equal) return lo <= con.rhs() && con.rhs() <= hi;
    return lo <= con.rhs();
  }

  void visit(std::size_t j) {
    if (j == n_) {
      found_.emplace_back(Multipermutation(current_, spec_.r));
      return;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (remaining_[i] == 0) continue;
      --remaining_[i];
      current_[j] = static_cast<int>(i) + 1;
      bool ok = true;
      for (std::size_t c : touching_[j]) partial_[c] += coef_[c][j * m_ + i];
      for (std::size_t c : touching_[j]) {
        if (!feasible(c, j + 1)) {
          ok = false;
          break;
        }
      }
      if (ok) visit(j + 1);
      for (std::size_t c : touching_[j]) partial_[c] -= coef_[c][j * m_ + i];
      ++remaining_[i];
    }
  }

  const CodeSpec& spec_;
  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> coef_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<std::vector<std::int64_t>> min_rest_;
  std::vector<std::vector<std::int64_t>> max_rest_;
  std::vector<std::int64_t> partial_;
  std::vector<int> remaining_;
  std::vector<int> current_;
  std::vector<MultipermutationMatrix> found_;
};

}  // namespace detail

/// All multipermutation matrices satisfying the spec, lexicographically ordered.
/// Refuses when |M(r)| exceeds limit.
inline Codebook enumerate_codebook(const CodeSpec& spec, std::uint64_t limit = kDefaultEnumerationLimit) {
  std::uint64_t total = 0;
  try {
    total = multiset_permutation_count(spec.r);
  } catch (const std::overflow_error&) {
    throw EnumerationTooLarge("|M(r)| overflows 64 bits");
  }
  if (total > limit) {
    throw EnumerationTooLarge("|M(r)| = " + std::to_string(total) + " exceeds the enumeration limit " +
                              std::to_string(limit));
  }
  return Codebook(detail::CodebookSearch(spec).run());
}

enum class Metric { Hamming, Chebyshev };

inline const char* to_string(Metric m) { return m == Metric::Hamming ? "hamming" : "chebyshev"; }

/// Distance between the transmitted vectors t X and t Y.
inline double codeword_distance(const MultipermutationMatrix& x, const MultipermutationMatrix& y,
                                const InitialVector& t, Metric metric) {
  const auto tx = vector_from_matrix(x, t);
  const auto ty = vector_from_matrix(y, t);
  return metric == Metric::Hamming ? static_cast<double>(hamming_distance_vectors(tx, ty)) : chebyshev_distance(tx, ty);
}

inline double min_distance(const Codebook& book, Metric metric, const InitialVector& t) {
  if (book.size() < 2) throw std::invalid_argument("minimum distance needs at least two codewords");
  std::vector<std::vector<double>> vecs;
  vecs.reserve(book.size());
  for (const auto& w : book) vecs.push_back(vector_from_matrix(w, t));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < vecs.size(); ++a) {
    for (std::size_t b = a + 1; b < vecs.size(); ++b) {
      const double d = metric == Metric::Hamming ? static_cast<double>(hamming_distance_vectors(vecs[a], vecs[b]))
                                                 : chebyshev_distance(vecs[a], vecs[b]);
      best = std::min(best, d);
    }
  }
  return best;
}

inline const MultipermutationMatrix& codeword_by_index(const Codebook& book, std::size_t k) {
  if (k >= book.size()) {
    throw std::out_of_range("codeword index " + std::to_string(k) + " out of range for " +
                            std::to_string(book.size()) + " codewords");
  }
  return book[k];
}

inline std::size_t index_of(const Codebook& book, const MultipermutationMatrix& x) {
  const auto k = book.find(x);
  if (!k) throw std::invalid_argument("matrix is not a codeword");
  return *k;
}

/// A constraint system on n x n permutation matrices with a repeated initial
/// vector s; its codewords are the vectors s P.
struct PermutationSpec {
  std::size_t n;
  std::vector<double> s;
  std::vector<LinearConstraint> constraints;
};

/// Lifts each coefficient a_ij to a'_kj = a_ij for every k in I_i, and
/// repeats t_i r_i times to form s.
inline PermutationSpec to_permutation_spec(const CodeSpec& spec) {
  const IndexSets blocks(spec.r);
  PermutationSpec out{spec.n(), {}, {}};
  out.s.reserve(spec.n());
  for (std::size_t i = 0; i < spec.m(); ++i) out.s.insert(out.s.end(), static_cast<std::size_t>(spec.r[i]), spec.t[i]);
  for (const auto& c : spec.constraints) {
    std::vector<ConstraintTerm> lifted;
    for (const auto& term : c.terms()) {
      for (std::size_t k = blocks[term.row].begin; k < blocks[term.row].end; ++k) lifted.push_back({k, term.col, term.coef});
    }
    out.constraints.emplace_back(std::move(lifted), c.relation(), c.rhs());
  }
  return out;
}

/// Distinct vectors s P over all permutation matrices P meeting the constraints.
/// Walks all n! permutations, so n is capped at 10.
inline std::set<std::vector<double>> permutation_codewords(const PermutationSpec& spec) {
  if (spec.n > 10) throw EnumerationTooLarge("permutation enumeration is limited to n <= 10");
  std::vector<std::size_t> row_of_col(spec.n);
  std::iota(row_of_col.begin(), row_of_col.end(), std::size_t{0});
  std::set<std::vector<double>> out;
  do {
    // P_kj = 1 iff k = row_of_col[j]
    const auto entry = [&](std::size_t k, std::size_t j) { return row_of_col[j] == k ? 1 : 0; };
    const bool ok = std::all_of(spec.constraints.begin(), spec.constraints.end(),
                                [&](const LinearConstraint& c) { return c.holds(c.lhs(entry)); });
    if (ok) {
      std::vector<double> word(spec.n);
      for (std::size_t j = 0; j < spec.n; ++j) word[j] = spec.s[row_of_col[j]];
      out.insert(std::move(word));
    }
  } while (std::next_permutation(row_of_col.begin(), row_of_col.end()));
  return out;
}

/// The transmitted vectors t X of a codebook, as a set.
inline std::set<std::vector<double>> transmitted_vectors(const Codebook& book, const InitialVector& t) {
  std::set<std::vector<double>> out;
  for (const auto& w : book) out.insert(vector_from_matrix(w, t));
  return out;
}

}  // namespace multiperm
