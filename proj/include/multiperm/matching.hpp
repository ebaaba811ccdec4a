#pragma once

// Perfect bipartite matching by augmenting paths (Kuhn's algorithm).

#include <cstddef>
#include <optional>
#include <vector>

namespace multiperm {

/// Bipartite graph on n rows and n columns stored as a dense adjacency mask.
class BipartiteSupport {
 public:
  explicit BipartiteSupport(std::size_t n) : n_(n), edges_(n * n, false) {}

  std::size_t size() const { return n_; }
  void set(std::size_t row, std::size_t col) { edges_[row * n_ + col] = true; }
  bool has(std::size_t row, std::size_t col) const { return edges_[row * n_ + col]; }

 private:
  std::size_t n_;
  std::vector<bool> edges_;
};

namespace detail {

inline bool augment(const BipartiteSupport& g, std::size_t row, std::vector<bool>& visited,
                    std::vector<std::optional<std::size_t>>& row_of_col) {
  for (std::size_t col = 0; col < g.size(); ++col) {
    if (!g.has(row, col) || visited[col]) continue;
    visited[col] = true;
    if (!row_of_col[col] || augment(g, *row_of_col[col], visited, row_of_col)) {
      row_of_col[col] = row;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Returns column_of_row for a perfect matching, or nullopt if none exists.
/// Rows are processed in index order and lower-index columns are tried first,
/// so the result is a deterministic function of the support.
inline std::optional<std::vector<std::size_t>> perfect_matching(const BipartiteSupport& g) {
  const std::size_t n = g.size();
  std::vector<std::optional<std::size_t>> row_of_col(n);
  std::vector<bool> visited(n);
  for (std::size_t row = 0; row < n; ++row) {
    visited.assign(n, false);
    if (!detail::augment(g, row, visited, row_of_col)) return std::nullopt;
  }
  std::vector<std::size_t> column_of_row(n);
  for (std::size_t col = 0; col < n; ++col) column_of_row[*row_of_col[col]] = col;
  return column_of_row;
}

}  // namespace multiperm
