#pragma once

// Small dense linear programming.
//
// Problems are stated over bounded variables with <= and = rows and reduced
// to standard form (A x = b, x >= 0). Two solvers share that reduction:
//  - a two-phase tableau simplex with Bland's rule, which decides
//    feasibility/boundedness and returns an optimal vertex;
//  - a Mehrotra predictor-corrector interior point method, which returns an
//    optimal point near the analytic center of the optimal face.
// solve_lp() runs the simplex for the status and optimal value and, in
// central mode, replaces the vertex by the interior point solution when that
// solution reproduces the simplex optimum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "multiperm/core.hpp"

namespace multiperm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kLpFeasibilityTolerance = 1e-8;

struct LpRow {
  std::vector<std::pair<std::size_t, double>> coefs;
  Relation relation;
  double rhs;
};

/// minimize c^T x subject to rows and lower <= x <= upper.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars)
      : objective_(num_vars, 0.0), lower_(num_vars, 0.0), upper_(num_vars, kInfinity) {}

  std::size_t num_vars() const { return objective_.size(); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  double lower(std::size_t v) const { return lower_[v]; }
  double upper(std::size_t v) const { return upper_[v]; }

  void set_objective(std::size_t v, double coef) { objective_.at(v) = coef; }

  void set_objective(std::vector<double> coefs) {
    if (coefs.size() != num_vars()) throw std::invalid_argument("objective length must equal num_vars");
    objective_ = std::move(coefs);
  }

  void set_bounds(std::size_t v, double lo, double hi) {
    if (v >= num_vars()) throw std::out_of_range("variable index out of range");
    if (std::isnan(lo) || std::isnan(hi) || lo == kInfinity || hi == -kInfinity) throw std::invalid_argument("invalid bounds");
    lower_[v] = lo;
    upper_[v] = hi;
  }

  void add_row(std::vector<std::pair<std::size_t, double>> coefs, Relation relation, double rhs) {
    for (const auto& [v, a] : coefs) {
      if (v >= num_vars()) throw std::out_of_range("row references variable " + std::to_string(v));
      if (!std::isfinite(a)) throw std::invalid_argument("row coefficients must be finite");
    }
    if (!std::isfinite(rhs)) throw std::invalid_argument("row rhs must be finite");
    rows_.push_back({std::move(coefs), relation, rhs});
  }

  double evaluate_objective(const std::vector<double>& x) const {
    double acc = 0.0;
    for (std::size_t v = 0; v < num_vars(); ++v) acc += objective_[v] * x[v];
    return acc;
  }

  /// Largest row or bound violation of x.
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (const auto& row : rows_) {
      double lhs = 0.0;
      for (const auto& [v, a] : row.coefs) lhs += a * x[v];
      const double excess = row.relation == Relation::Equal ? std::abs(lhs - row.rhs) : lhs - row.rhs;
      worst = std::max(worst, excess);
    }
    for (std::size_t v = 0; v < num_vars(); ++v) worst = std::max({worst, lower_[v] - x[v], x[v] - upper_[v]});
    return worst;
  }

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

enum class LpMethod { Central, Vertex };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  /// Which solver produced values (Central falls back to Vertex when needed).
  LpMethod method = LpMethod::Vertex;
};

namespace detail {

/// A x = b, x >= 0 together with the map back to the original variables.
struct StandardForm {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  double objective_offset = 0.0;

  struct VarMap {
    double offset = 0.0;
    Eigen::Index pos = -1;
    double pos_sign = 1.0;
    Eigen::Index neg = -1;
  };
  std::vector<VarMap> vars;
  bool trivially_infeasible = false;

  std::vector<double> recover(const Eigen::VectorXd& x) const {
    std::vector<double> out(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const auto& m = vars[v];
      double value = m.offset + m.pos_sign * x(m.pos);
      if (m.neg >= 0) value -= x(m.neg);
      out[v] = value;
    }
    return out;
  }
};

inline StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  sf.vars.resize(lp.num_vars());
  Eigen::Index cols = 0;
  std::vector<std::size_t> boxed;
  for (std::size_t v = 0; v < lp.num_vars(); ++v) {
    auto& m = sf.vars[v];
    const double lo = lp.lower(v);
    const double hi = lp.upper(v);
    if (hi < lo) sf.trivially_infeasible = true;
    if (std::isfinite(lo)) {
      m.offset = lo;
      m.pos = cols++;
      if (std::isfinite(hi)) boxed.push_back(v);
    } else if (std::isfinite(hi)) {
      m.offset = hi;
      m.pos = cols++;
      m.pos_sign = -1.0;
    } else {
      m.pos = cols++;
      m.neg = cols++;
    }
  }
  Eigen::Index slack_start = cols;
  std::size_t le_rows = 0;
  for (const auto& row : lp.rows()) le_rows += row.relation == Relation::LessEqual ? 1 : 0;
  cols += static_cast<Eigen::Index>(le_rows + boxed.size());

  const auto num_rows = static_cast<Eigen::Index>(lp.rows().size() + boxed.size());
  sf.a = Eigen::MatrixXd::Zero(num_rows, cols);
  sf.b = Eigen::VectorXd::Zero(num_rows);
  sf.c = Eigen::VectorXd::Zero(cols);

  Eigen::Index next_slack = slack_start;
  Eigen::Index r = 0;
  for (const auto& row : lp.rows()) {
    double rhs = row.rhs;
    for (const auto& [v, coef] : row.coefs) {
      const auto& m = sf.vars[v];
      sf.a(r, m.pos) += coef * m.pos_sign;
      if (m.neg >= 0) sf.a(r, m.neg) -= coef;
      rhs -= coef * m.offset;
    }
    if (row.relation == Relation::LessEqual) sf.a(r, next_slack++) = 1.0;
    sf.b(r) = rhs;
    ++r;
  }
  for (std::size_t v : boxed) {
    sf.a(r, sf.vars[v].pos) = 1.0;
    sf.a(r, next_slack++) = 1.0;
    sf.b(r) = lp.upper(v) - lp.lower(v);
    ++r;
  }
  for (std::size_t v = 0; v < lp.num_vars(); ++v) {
    const auto& m = sf.vars[v];
    const double coef = lp.objective()[v];
    sf.c(m.pos) += coef * m.pos_sign;
    if (m.neg >= 0) sf.c(m.neg) -= coef;
    sf.objective_offset += coef * m.offset;
  }
  return sf;
}

struct StandardResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  bool converged = false;
};

/// Dense two-phase simplex with Bland's rule on A x = b, x >= 0.
class TableauSimplex {
 public:
  TableauSimplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : rows_(a.rows()), cols_(a.cols()), c_(c) {
    tableau_ = Eigen::MatrixXd::Zero(rows_ + 1, cols_ + rows_ + 1);
    tableau_.topLeftCorner(rows_, cols_) = a;
    tableau_.block(0, cols_, rows_, rows_).setIdentity();
    tableau_.col(rhs_col()).head(rows_) = b;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (b(i) < 0.0) {
        tableau_.row(i).head(cols_) *= -1.0;
        tableau_(i, rhs_col()) *= -1.0;
      }
    }
    basis_.resize(static_cast<std::size_t>(rows_));
    for (Eigen::Index i = 0; i < rows_; ++i) basis_[static_cast<std::size_t>(i)] = cols_ + i;
    scale_ = 1.0 + (b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  }

  StandardResult solve() {
    // Phase 1: minimize the sum of artificials.
    tableau_.row(rows_).setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) tableau_.row(rows_) -= tableau_.row(i);
    tableau_.block(rows_, cols_, 1, rows_).setZero();
    if (!iterate(cols_ + rows_)) throw std::logic_error("phase 1 cannot be unbounded");
    if (-tableau_(rows_, rhs_col()) > kPhaseOneTolerance * scale_) return {LpStatus::Infeasible, {}, true};

    // Drive remaining artificials out of the basis; rows where that is
    // impossible are redundant and stay inert.
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < cols_) continue;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (std::abs(tableau_(i, j)) > kPivotTolerance) {
          pivot(i, j);
          break;
        }
      }
    }

    // Phase 2 over the original columns only.
    tableau_.row(rows_).setZero();
    tableau_.block(rows_, 0, 1, cols_) = c_.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index bv = basis_[static_cast<std::size_t>(i)];
      if (bv < cols_ && c_(bv) != 0.0) tableau_.row(rows_) -= c_(bv) * tableau_.row(i);
    }
    if (!iterate(cols_)) return {LpStatus::Unbounded, {}, true};

    Eigen::VectorXd x = Eigen::VectorXd::Zero(cols_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index bv = basis_[static_cast<std::size_t>(i)];
      if (bv < cols_) x(bv) = std::max(0.0, tableau_(i, rhs_col()));
    }
    return {LpStatus::Optimal, std::move(x), true};
  }

 private:
  static constexpr double kPivotTolerance = 1e-9;
  static constexpr double kCostTolerance = 1e-10;
  static constexpr double kPhaseOneTolerance = 1e-8;
  static constexpr int kMaxPivots = 200000;

  Eigen::Index rhs_col() const { return cols_ + rows_; }

  void pivot(Eigen::Index r, Eigen::Index j) {
    tableau_.row(r) /= tableau_(r, j);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = tableau_(i, j);
      if (f != 0.0) tableau_.row(i) -= f * tableau_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = j;
  }

  /// Returns false when unbounded. Only columns < eligible may enter.
  bool iterate(Eigen::Index eligible) {
    for (int count = 0; count < kMaxPivots; ++count) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < eligible; ++j) {
        if (tableau_(rows_, j) < -kCostTolerance) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      double best_ratio = kInfinity;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double coef = tableau_(i, entering);
        if (coef <= kPivotTolerance) continue;
        const double ratio = tableau_(i, rhs_col()) / coef;
        if (ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
    throw std::runtime_error("simplex pivot limit reached");
  }

  Eigen::Index rows_;
  Eigen::Index cols_;
  Eigen::VectorXd c_;
  Eigen::MatrixXd tableau_;
  std::vector<Eigen::Index> basis_;
  double scale_ = 1.0;
};

struct InteriorPointOptions {
  double tolerance = 1e-10;      // scaled primal and dual residuals
  double gap_tolerance = 1e-8;   // relative duality gap
  int max_iterations = 200;
  int stall_iterations = 5;      // give up after this many steps without progress
  double step_fraction = 0.99;
};

/// Keeps a maximal linearly independent subset of the rows of A.
inline std::vector<Eigen::Index> independent_rows(const Eigen::MatrixXd& a) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  std::vector<Eigen::Index> keep(static_cast<std::size_t>(rank));
  for (Eigen::Index k = 0; k < rank; ++k) keep[static_cast<std::size_t>(k)] = qr.colsPermutation().indices()(k);
  std::sort(keep.begin(), keep.end());
  return keep;
}

inline double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (dv(k) < 0.0) alpha = std::min(alpha, -v(k) / dv(k));
  }
  return alpha;
}

/// Mehrotra predictor-corrector on A x = b, x >= 0 (A need not have full row rank).
inline StandardResult interior_point(const Eigen::MatrixXd& a_full, const Eigen::VectorXd& b_full,
                                     const Eigen::VectorXd& c, const InteriorPointOptions& opts = {}) {
  const auto keep = independent_rows(a_full);
  const auto p = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index q = a_full.cols();
  Eigen::MatrixXd a(p, q);
  Eigen::VectorXd b(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    a.row(k) = a_full.row(keep[static_cast<std::size_t>(k)]);
    b(k) = b_full(keep[static_cast<std::size_t>(k)]);
  }

  const auto solve_normal = [&](const Eigen::VectorXd& d, const Eigen::VectorXd& rhs) {
    Eigen::MatrixXd m = a * d.asDiagonal() * a.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    double reg = 1e-14 * std::max(1.0, m.diagonal().maxCoeff());
    while (llt.info() != Eigen::Success && reg < 1.0) {
      llt.compute(m + reg * Eigen::MatrixXd::Identity(p, p));
      reg *= 100.0;
    }
    return Eigen::VectorXd(llt.solve(rhs));
  };

  // Starting point.
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;
  Eigen::VectorXd s;
  {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(q);
    x = a.transpose() * solve_normal(ones, b);
    lambda = solve_normal(ones, a * c);
    s = c - a.transpose() * lambda;
    const double dx = std::max(-1.5 * (q > 0 ? x.minCoeff() : 0.0), 0.0);
    const double ds = std::max(-1.5 * (q > 0 ? s.minCoeff() : 0.0), 0.0);
    x.array() += dx;
    s.array() += ds;
    const double xs = x.dot(s);
    if (xs <= 0.0 || x.sum() <= 0.0 || s.sum() <= 0.0) {
      x.array() += 1.0;
      s.array() += 1.0;
    } else {
      x.array() += 0.5 * xs / s.sum();
      s.array() += 0.5 * xs / x.sum();
    }
  }

  const double b_scale = 1.0 + (p > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  const double c_scale = 1.0 + (q > 0 ? c.cwiseAbs().maxCoeff() : 0.0);
  StandardResult result{LpStatus::Optimal, x, false};
  double best_merit = std::numeric_limits<double>::infinity();
  int since_best = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Eigen::VectorXd rb = a * x - b;
    const Eigen::VectorXd rc = a.transpose() * lambda + s - c;
    const double mu = x.dot(s) / static_cast<double>(std::max<Eigen::Index>(q, 1));
    const double primal_obj = c.dot(x);
    const double gap = std::abs(primal_obj - b.dot(lambda)) / (1.0 + std::abs(primal_obj));
    const double rb_norm = p > 0 ? rb.cwiseAbs().maxCoeff() : 0.0;
    const double rc_norm = q > 0 ? rc.cwiseAbs().maxCoeff() : 0.0;
    if (rb_norm <= opts.tolerance * b_scale && rc_norm <= opts.tolerance * c_scale && gap <= opts.gap_tolerance) {
      result.converged = true;
      break;
    }
    const double merit = std::max({rb_norm / b_scale, rc_norm / c_scale, gap});
    if (merit < 0.5 * best_merit) {
      best_merit = merit;
      since_best = 0;
    } else if (++since_best >= opts.stall_iterations) {
      break;
    }

    const Eigen::VectorXd d = x.cwiseQuotient(s);
    const auto direction = [&](const Eigen::VectorXd& r_xs) {
      const Eigen::VectorXd s_inv_rxs = r_xs.cwiseQuotient(s);
      const Eigen::VectorXd dlambda = solve_normal(d, -rb - a * (s_inv_rxs + d.cwiseProduct(rc)));
      Eigen::VectorXd ds_dir = -rc - a.transpose() * dlambda;
      Eigen::VectorXd dx_dir = s_inv_rxs + d.cwiseProduct(rc + a.transpose() * dlambda);
      return std::tuple{dx_dir, dlambda, ds_dir};
    };

    const Eigen::VectorXd xs = x.cwiseProduct(s);
    const auto [dx_aff, dl_aff, ds_aff] = direction(-xs);
    const double ap_aff = max_step(x, dx_aff);
    const double ad_aff = max_step(s, ds_aff);
    const double mu_aff = (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / static_cast<double>(q);
    const double sigma = std::pow(mu_aff / mu, 3.0);

    const Eigen::VectorXd r_xs = -xs - dx_aff.cwiseProduct(ds_aff) + Eigen::VectorXd::Constant(q, sigma * mu);
    const auto [dx, dl, ds] = direction(r_xs);
    const double ap = std::min(1.0, opts.step_fraction * max_step(x, dx));
    const double ad = std::min(1.0, opts.step_fraction * max_step(s, ds));
    x += ap * dx;
    lambda += ad * dl;
    s += ad * ds;
    result.x = x;
  }
  result.x = x;
  return result;
}

}  // namespace detail

/// Optimal vertex by the two-phase simplex.
inline LpSolution solve_lp_vertex(const LinearProgram& lp) {
  const auto sf = detail::to_standard_form(lp);
  if (sf.trivially_infeasible) return {LpStatus::Infeasible, {}, 0.0, LpMethod::Vertex};
  const auto res = detail::TableauSimplex(sf.a, sf.b, sf.c).solve();
  if (res.status != LpStatus::Optimal) return {res.status, {}, 0.0, LpMethod::Vertex};
  auto values = sf.recover(res.x);
  const double obj = lp.evaluate_objective(values);
  return {LpStatus::Optimal, std::move(values), obj, LpMethod::Vertex};
}

namespace detail {

/// lp with every variable pinned by equal bounds or by a single-variable
/// equality row substituted out; fixed[v] holds the pinned value.
struct Presolved {
  LinearProgram reduced{0};
  std::vector<std::optional<double>> fixed;
  std::vector<std::size_t> original;  // reduced index -> original index
  bool infeasible = false;
};

inline Presolved presolve_fixed(const LinearProgram& lp) {
  Presolved out;
  const std::size_t nv = lp.num_vars();
  out.fixed.assign(nv, std::nullopt);
  for (std::size_t v = 0; v < nv; ++v) {
    if (lp.lower(v) == lp.upper(v)) out.fixed[v] = lp.lower(v);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& row : lp.rows()) {
      if (row.relation != Relation::Equal) continue;
      double rest = row.rhs;
      std::optional<std::pair<std::size_t, double>> free_term;
      std::size_t free_count = 0;
      for (const auto& [v, a] : row.coefs) {
        if (a == 0.0) continue;
        if (out.fixed[v]) {
          rest -= a * *out.fixed[v];
        } else if (!free_term || free_term->first != v) {
          free_term = {v, a};
          ++free_count;
        } else {
          free_term->second += a;
        }
      }
      if (free_count != 1 || free_term->second == 0.0) continue;
      const auto [v, a] = *free_term;
      const double value = rest / a;
      if (value < lp.lower(v) - kLpFeasibilityTolerance || value > lp.upper(v) + kLpFeasibilityTolerance) {
        out.infeasible = true;
        return out;
      }
      out.fixed[v] = std::clamp(value, lp.lower(v), lp.upper(v));
      changed = true;
    }
  }

  std::vector<std::size_t> reduced_of(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (out.fixed[v]) continue;
    reduced_of[v] = out.original.size();
    out.original.push_back(v);
  }
  out.reduced = LinearProgram(out.original.size());
  for (std::size_t k = 0; k < out.original.size(); ++k) {
    const std::size_t v = out.original[k];
    out.reduced.set_bounds(k, lp.lower(v), lp.upper(v));
    out.reduced.set_objective(k, lp.objective()[v]);
  }
  for (const auto& row : lp.rows()) {
    double rhs = row.rhs;
    std::vector<std::pair<std::size_t, double>> coefs;
    for (const auto& [v, a] : row.coefs) {
      if (out.fixed[v]) {
        rhs -= a * *out.fixed[v];
      } else if (a != 0.0) {
        coefs.emplace_back(reduced_of[v], a);
      }
    }
    if (!coefs.empty()) out.reduced.add_row(std::move(coefs), row.relation, rhs);
  }
  return out;
}

}  // namespace detail

/// Interior point solve only; nullopt when it fails to converge. Assumes the
/// problem is feasible and bounded. Pinned variables are removed first so the
/// remaining problem can have a strictly feasible point.
inline std::optional<LpSolution> solve_lp_interior(const LinearProgram& lp,
                                                   const detail::InteriorPointOptions& opts = {}) {
  const auto pre = detail::presolve_fixed(lp);
  if (pre.infeasible) return std::nullopt;
  std::vector<double> values(lp.num_vars(), 0.0);
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (pre.fixed[v]) values[v] = *pre.fixed[v];
  }
  if (!pre.original.empty()) {
    const auto sf = detail::to_standard_form(pre.reduced);
    if (sf.trivially_infeasible) return std::nullopt;
    const auto res = detail::interior_point(sf.a, sf.b, sf.c, opts);
    if (!res.converged) return std::nullopt;
    const auto reduced_values = sf.recover(res.x);
    for (std::size_t k = 0; k < pre.original.size(); ++k) values[pre.original[k]] = reduced_values[k];
  }
  for (std::size_t v = 0; v < values.size(); ++v) values[v] = std::clamp(values[v], lp.lower(v), lp.upper(v));
  const double obj = lp.evaluate_objective(values);
  return LpSolution{LpStatus::Optimal, std::move(values), obj, LpMethod::Central};
}

/// Solves lp. Status and optimal value come from the simplex. In Central mode
/// the interior point solution is returned instead of the vertex whenever it
/// satisfies every row within 1e-8 and matches the simplex objective to 1e-6
/// relative; otherwise the vertex is returned.
inline LpSolution solve_lp(const LinearProgram& lp, LpMethod method = LpMethod::Central) {
  auto vertex = solve_lp_vertex(lp);
  if (vertex.status != LpStatus::Optimal || method == LpMethod::Vertex) return vertex;
  auto central = solve_lp_interior(lp);
  if (!central) return vertex;
  const double rel_gap =
      std::abs(central->objective_value - vertex.objective_value) / std::max(1.0, std::abs(vertex.objective_value));
  if (rel_gap > 1e-6 || lp.max_violation(central->values) > kLpFeasibilityTolerance) return vertex;
  return *central;
}

}  // namespace multiperm
