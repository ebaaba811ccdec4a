// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 iff the
// set of failing criteria equals --expected-failures (empty by default).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiperm/channels.hpp"
#include "multiperm/codes.hpp"
#include "multiperm/decode.hpp"
#include "multiperm/oracle.hpp"
#include "multiperm/polytope.hpp"
#include "test_support.hpp"

using namespace multiperm;

namespace {

// Pinned tolerances.
constexpr double kDeltaTolerance = 1e-6;
constexpr double kReconstructionTolerance = 1e-8;
constexpr double kWeightTolerance = 1e-9;
constexpr double kUnionBoundTolerance = 1e-9;
constexpr double kUnionBoundReference = 0.23975;

// Time limits in seconds.
constexpr double kLimit[10] = {0, 10, 1, 1, 30, 5, 60, 30, 5, 60};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 12) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string word_string(const std::vector<int>& w) {
  std::string out = "(";
  for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + std::to_string(w[k]);
  return out + ")";
}

std::uint64_t factorial(std::uint64_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

Outcome shieh_metrics() {
  const auto book = enumerate_codebook(shieh_spec(2, 6, 3));
  // ((a r)! / (r!)^a)^d with a = m / d = 2, r = 2, d = 3.
  const std::uint64_t expected = [] {
    const std::uint64_t per_block = factorial(4) / (factorial(2) * factorial(2));
    return per_block * per_block * per_block;
  }();
  const InitialVector t = InitialVector::natural(6);
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < book.size(); ++a) {
    const auto la = oracle_ref::levels(book.symbols(a), t.values());
    for (std::size_t b = a + 1; b < book.size(); ++b) {
      const auto lb = oracle_ref::levels(book.symbols(b), t.values());
      double d = 0.0;
      for (std::size_t j = 0; j < la.size(); ++j) d = std::max(d, std::abs(la[j] - lb[j]));
      dmin = std::min(dmin, d);
    }
  }
  const double lib_dmin = min_distance(book, Metric::Chebyshev, t);
  const bool pass = book.size() == 216 && expected == 216 && dmin == 3.0 && lib_dmin == 3.0;
  return {pass, std::to_string(book.size()) + " codewords (formula " + std::to_string(expected) + "), d_inf_min = " +
                    fmt(lib_dmin) + " (pairwise scan " + fmt(dmin) + ")"};
}

Outcome derangement_listing() {
  const std::set<std::vector<int>> listed{
      {3, 3, 1, 1, 2, 2}, {2, 2, 3, 3, 1, 1}, {2, 3, 1, 3, 2, 1}, {2, 3, 1, 3, 1, 2}, {2, 3, 3, 1, 2, 1},
      {2, 3, 3, 1, 1, 2}, {3, 2, 1, 3, 2, 1}, {3, 2, 1, 3, 1, 2}, {3, 2, 3, 1, 2, 1}, {3, 2, 3, 1, 1, 2}};
  const auto book = enumerate_codebook(derangement_spec(MultiplicityVector({2, 2, 2}), InitialVector({1, 2, 3})));
  std::set<std::vector<int>> got;
  for (std::size_t k = 0; k < book.size(); ++k) got.insert(book.symbols(k));
  return {got == listed && book.size() == listed.size(), std::to_string(book.size()) + " codewords, set equality " +
                                                             (got == listed ? "holds" : "fails")};
}

Outcome chebyshev_reproduction() {
  const std::vector<double> y{2, 1, 4, 3, 6, 5, 2, 1, 4, 3, 6, 5};
  const std::vector<int> sent{1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6};
  const auto res = decode_chebyshev(shieh_spec(2, 6, 3), y);
  const double delta = res.delta.value_or(std::nan(""));
  const bool pass = std::abs(delta - 1.0) <= kDeltaTolerance && res.decoded.valid && res.decoded.symbols == sent &&
                    !certificate_check(res.relaxed.values());
  return {pass, "delta = " + fmt(delta) + ", decoded " + word_string(res.decoded.symbols) + ", certificate " +
                    (certificate_check(res.relaxed.values()) ? "integral" : "fractional")};
}

/// Binary, unit column sums, row i sums to r_i.
bool is_multipermutation_matrix(const BinaryMatrix& x, const MultiplicityVector& r) {
  if (static_cast<std::size_t>(x.rows()) != r.m() || static_cast<std::size_t>(x.cols()) != r.n()) return false;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int row = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) != 0 && x(i, j) != 1) return false;
      row += x(i, j);
    }
    if (row != r[static_cast<std::size_t>(i)]) return false;
  }
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (x.col(j).sum() != 1) return false;
  }
  return true;
}

Outcome decomposition_pipeline() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick_m(2, 4);
  std::uniform_int_distribution<int> pick_terms(1, 8);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  double worst_error = 0.0;
  double worst_sum = 0.0;
  std::size_t bad_terms = 0;
  std::size_t negative = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = pick_m(rng);
    std::vector<int> counts(static_cast<std::size_t>(m), 1);
    std::uniform_int_distribution<int> extra(0, 10 - m);
    for (int left = extra(rng); left > 0; --left) ++counts[std::uniform_int_distribution<std::size_t>(0, counts.size() - 1)(rng)];
    const MultiplicityVector r(counts);
    const int terms = pick_terms(rng);
    std::vector<double> w(static_cast<std::size_t>(terms));
    for (double& v : w) v = weight(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    RealMatrix z = RealMatrix::Zero(static_cast<Eigen::Index>(r.m()), static_cast<Eigen::Index>(r.n()));
    for (double v : w) z += (v / total) * oracle_ref::indicator_matrix(oracle_ref::random_multipermutation(counts, rng), r.m()).cast<double>();

    const auto combo = decompose_relaxed(RelaxedMatrix(z, r));
    RealMatrix back = RealMatrix::Zero(z.rows(), z.cols());
    double sum = 0.0;
    for (const auto& term : combo.terms()) {
      if (term.weight < 0.0) ++negative;
      sum += term.weight;
      if (!is_multipermutation_matrix(term.matrix.entries(), r)) ++bad_terms;
      back += term.weight * term.matrix.entries().cast<double>();
    }
    worst_error = std::max(worst_error, (back - z).cwiseAbs().maxCoeff());
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  const bool pass = worst_error <= kReconstructionTolerance && worst_sum <= kWeightTolerance && bad_terms == 0 && negative == 0;
  return {pass, "max |Z - sum w X| = " + fmt(worst_error, 3) + ", max |sum w - 1| = " + fmt(worst_sum, 3) +
                    ", negative weights " + std::to_string(negative) + ", malformed terms " + std::to_string(bad_terms)};
}

/// sum_ij X_ij (1 - Y_ij) for E the all-ones matrix shaped like X.
std::size_t trace_oracle(const BinaryMatrix& x, const BinaryMatrix& y) {
  std::size_t total = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) total += static_cast<std::size_t>(x(i, j) * (1 - y(i, j)));
  }
  return total;
}

Outcome hamming_identities() {
  std::size_t pairs = 0;
  std::size_t chain_holds = 0;
  std::size_t half_holds = 0;
  std::size_t trace_is_vector_distance = 0;
  std::size_t library_mismatch = 0;
  std::string counterexample;
  const auto visit = [&](const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& r, const InitialVector& t) {
    const auto xa = oracle_ref::indicator_matrix(a, r.size());
    const auto xb = oracle_ref::indicator_matrix(b, r.size());
    const std::size_t dh = oracle_ref::entry_mismatches(xa, xb);
    const std::size_t dv = oracle_ref::position_mismatches(oracle_ref::levels(a, t.values()), oracle_ref::levels(b, t.values()));
    const std::size_t tr = trace_oracle(xa, xb);
    const MultipermutationMatrix x(xa, MultiplicityVector(r));
    const MultipermutationMatrix y(xb, MultiplicityVector(r));
    if (hamming_distance_matrices(x, y) != dh || trace_distance(x, y) != tr ||
        hamming_distance_vectors(vector_from_matrix(x, t), vector_from_matrix(y, t)) != dv) {
      ++library_mismatch;
    }
    ++pairs;
    half_holds += dh == 2 * dv ? 1 : 0;
    trace_is_vector_distance += tr == dv ? 1 : 0;
    if (dh == 2 * dv && 2 * dv == tr) {
      ++chain_holds;
    } else if (counterexample.empty()) {
      counterexample = word_string(a) + " vs " + word_string(b) + ": d_H(X,Y) = " + std::to_string(dh) +
                       ", 2 d_H(tX,tY) = " + std::to_string(2 * dv) + ", tr(X^T(E-Y)) = " + std::to_string(tr);
    }
  };

  const std::vector<int> r22{2, 2};
  const InitialVector t22 = InitialVector::natural(2);
  const auto words = oracle_ref::all_multipermutations(r22);
  for (const auto& a : words) {
    for (const auto& b : words) visit(a, b, r22, t22);
  }
  std::mt19937_64 rng(55);
  const std::vector<int> r232{2, 3, 2};
  const InitialVector t232 = InitialVector::natural(3);
  for (int k = 0; k < 1000; ++k) {
    const auto a = oracle_ref::random_multipermutation(r232, rng);
    const auto b = oracle_ref::random_multipermutation(r232, rng);
    visit(a, b, r232, t232);
  }
  const bool pass = chain_holds == pairs && library_mismatch == 0;
  std::string detail = std::to_string(pairs) + " pairs; d_H(X,Y) = 2 d_H(tX,tY) on " + std::to_string(half_holds) +
                       ", tr(X^T(E-Y)) = 2 d_H(tX,tY) on " + std::to_string(chain_holds) +
                       ", tr(X^T(E-Y)) = d_H(tX,tY) on " + std::to_string(trace_is_vector_distance) +
                       ", library/oracle mismatches " + std::to_string(library_mismatch);
  if (!counterexample.empty()) detail += "; first counterexample " + counterexample;
  return {pass, detail};
}

Outcome ml_certificate() {
  const auto spec = shieh_spec(2, 4, 2);
  const auto book = enumerate_codebook(spec);
  const double p = 0.1;
  std::size_t certified = 0;
  std::size_t disagreements = 0;
  Rng pick(stream_seed(606, 0));
  std::uniform_int_distribution<std::size_t> index(0, book.size() - 1);
  for (std::size_t trial = 0; trial < 500; ++trial) {
    const std::size_t k = index(pick);
    const auto y = sample_qsc(book.symbols(k), p, spec.m(), stream_seed(606, trial + 1));
    const auto gamma = cost_matrix_qsc(y, p, spec.m());
    const auto res = decode_memoryless(spec, gamma);
    if (!res.certificate) continue;
    ++certified;
    const auto ml = ml_decode_exhaustive(book, gamma);
    const bool same_cost = res.decoded.valid && oracle_ref::compare_with_ties(gamma.cost(*res.decoded_matrix()), ml.value) == 0;
    const bool same_word = ml.tie_set_size > 1 || res.decoded.symbols == ml.best;
    if (!same_cost || !same_word) ++disagreements;
  }
  return {disagreements == 0, std::to_string(certified) + "/500 certified (rate " + fmt(certified / 500.0, 4) + "), " +
                                  std::to_string(disagreements) + " certified decodes differ from exhaustive ML"};
}

/// {s P : P in S_n meeting the lifted constraints}, with each constraint
/// evaluated on X = (block indicator) P directly.
std::set<std::vector<double>> permutation_side(const CodeSpec& spec) {
  std::vector<std::size_t> block_of;
  std::vector<double> s;
  for (std::size_t i = 0; i < spec.m(); ++i) {
    for (int c = 0; c < spec.r[i]; ++c) {
      block_of.push_back(i);
      s.push_back(spec.t[i]);
    }
  }
  std::vector<std::size_t> perm(spec.n());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::set<std::vector<double>> out;
  do {
    // P_{perm[j], j} = 1, so column j of X carries symbol block_of[perm[j]].
    bool ok = true;
    for (const auto& c : spec.constraints) {
      std::int64_t lhs = 0;
      for (const auto& term : c.terms()) lhs += block_of[perm[term.col]] == term.row ? term.coef : 0;
      ok = ok && (c.relation() == Relation::Equal ? lhs == c.rhs() : lhs <= c.rhs());
    }
    if (!ok) continue;
    std::vector<double> word(spec.n());
    for (std::size_t j = 0; j < spec.n(); ++j) word[j] = s[perm[j]];
    out.insert(word);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CodeSpec random_three_constraint_spec(std::mt19937_64& rng) {
  const MultiplicityVector r({2, 1, 3});
  const InitialVector t({-1.0, 0.5, 2.0});
  std::uniform_int_distribution<std::size_t> row(0, r.m() - 1), col(0, r.n() - 1);
  std::uniform_int_distribution<int> coef(-1, 2), nterms(1, 3);
  const auto anchor = oracle_ref::random_multipermutation(r.counts(), rng);
  std::vector<LinearConstraint> cons;
  for (int k = 0; k < 3; ++k) {
    std::vector<ConstraintTerm> terms;
    std::int64_t at_anchor = 0;
    for (int u = nterms(rng); u > 0; --u) {
      const ConstraintTerm term{row(rng), col(rng), coef(rng)};
      at_anchor += anchor[term.col] == static_cast<int>(term.row) + 1 ? term.coef : 0;
      terms.push_back(term);
    }
    cons.emplace_back(std::move(terms), k == 0 ? Relation::Equal : Relation::LessEqual, at_anchor);
  }
  return CodeSpec(r, t, std::move(cons));
}

Outcome permutation_equivalence() {
  std::mt19937_64 rng(77);
  std::vector<std::pair<std::string, CodeSpec>> specs{
      {"derangement (1,1,1)", derangement_spec(MultiplicityVector({1, 1, 1}), InitialVector::natural(3))},
      {"shieh(2,2,2)", shieh_spec(2, 2, 2)},
      {"shieh(2,2,1)", shieh_spec(2, 2, 1)},
      {"shieh(2,4,2)", shieh_spec(2, 4, 2)},
      {"random 3-constraint r=(2,1,3)", random_three_constraint_spec(rng)},
  };
  bool pass = true;
  std::string detail;
  for (const auto& [name, spec] : specs) {
    const auto lcmm = transmitted_vectors(enumerate_codebook(spec), spec.t);
    const auto oracle = permutation_side(spec);
    const auto library = permutation_codewords(to_permutation_spec(spec));
    const bool ok = lcmm == oracle && library == oracle && !lcmm.empty();
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + name + ": " + std::to_string(lcmm.size()) + " vs " + std::to_string(oracle.size()) +
              (ok ? " equal" : " DIFFER");
  }
  return {pass, detail};
}

Outcome channel_equivalences() {
  const MultiplicityVector r({2, 2});
  const CodeSpec spec(r, InitialVector({0.3, 1.7}));
  const auto book = enumerate_codebook(spec);
  std::mt19937_64 rng(88);
  std::normal_distribution<double> gauss(1.0, 1.0);
  std::uniform_int_distribution<int> symbol(1, 2);
  std::size_t awgn_ok = 0, qsc_ok = 0;
  for (int draw = 0; draw < 100; ++draw) {
    std::vector<double> y(r.n());
    for (double& v : y) v = gauss(rng);
    const auto gamma = cost_matrix_awgn(y, spec.t, 0.8);
    std::vector<double> cost, neg_trace;
    for (std::size_t k = 0; k < book.size(); ++k) {
      cost.push_back(gamma.cost(book[k]));
      double tr = 0.0;
      const auto lv = oracle_ref::levels(book.symbols(k), spec.t.values());
      for (std::size_t j = 0; j < y.size(); ++j) tr += y[j] * lv[j];
      neg_trace.push_back(-tr);
    }
    awgn_ok += oracle_ref::same_ranking(cost, neg_trace) ? 1 : 0;
  }
  for (int draw = 0; draw < 100; ++draw) {
    std::vector<int> y(r.n());
    for (int& v : y) v = symbol(rng);
    const auto gamma = cost_matrix_qsc(y, 0.2, r.m());
    std::vector<double> cost, hamming;
    for (std::size_t k = 0; k < book.size(); ++k) {
      cost.push_back(gamma.cost(book[k]));
      std::size_t d = 0;
      for (std::size_t j = 0; j < y.size(); ++j) d += book.symbols(k)[j] != y[j] ? 1 : 0;
      hamming.push_back(static_cast<double>(d));
    }
    qsc_ok += oracle_ref::same_ranking(cost, hamming) ? 1 : 0;
  }
  return {awgn_ok == 100 && qsc_ok == 100, "AWGN cost vs -tr((y^T t) X): " + std::to_string(awgn_ok) +
                                               "/100 rankings equal; q-SC cost vs Hamming: " + std::to_string(qsc_ok) +
                                               "/100 (values within 1e-9 relative tie)"};
}

Outcome union_bound_sanity() {
  const CodeSpec spec(MultiplicityVector({1, 1}), InitialVector({1.0, 2.0}));
  const auto book = enumerate_codebook(spec);
  const double sigma = 1.0;
  const double bound = union_bound_awgn(book, book[0], spec.t, sigma);
  const double exact = oracle_ref::q_function(1.0 / std::sqrt(2.0));

  const std::size_t trials = 100000;
  std::size_t errors = 0;
  Rng pick(stream_seed(909, 0));
  std::uniform_int_distribution<std::size_t> index(0, book.size() - 1);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t k = index(pick);
    const auto y = sample_awgn(vector_from_matrix(book[k], spec.t), sigma, stream_seed(909, trial + 1));
    const auto ml = ml_decode_exhaustive(book, cost_matrix_awgn(y, spec.t, sigma));
    errors += ml.best_index != k ? 1 : 0;
  }
  const double wer = static_cast<double>(errors) / static_cast<double>(trials);
  const double sd = std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
  const bool reference_ok = std::abs(bound - kUnionBoundReference) <= kUnionBoundTolerance;
  const bool mc_ok = wer <= bound + 3.0 * sd;
  const bool pass = reference_ok && mc_ok;
  return {pass, "bound = " + fmt(bound, 16) + ", Q(1/sqrt 2) = " + fmt(exact, 16) + " (|diff| = " +
                    fmt(std::abs(bound - exact), 3) + "), |bound - " + fmt(kUnionBoundReference) + "| = " +
                    fmt(std::abs(bound - kUnionBoundReference), 3) + " vs tolerance " + fmt(kUnionBoundTolerance, 3) +
                    "; Monte-Carlo WER = " + fmt(wer, 6) + " <= bound + 3 sd = " + fmt(bound + 3.0 * sd, 6) + " " +
                    (mc_ok ? "holds" : "fails")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  std::vector<int> expected_failures;
  app.add_option("--expected-failures", expected_failures, "Criteria expected to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"shieh code metrics", shieh_metrics},
      {"derangement listing", derangement_listing},
      {"Chebyshev LP reproduction", chebyshev_reproduction},
      {"relaxed-matrix decomposition", decomposition_pipeline},
      {"Hamming/trace identities", hamming_identities},
      {"ML certificate soundness", ml_certificate},
      {"permutation-system equivalence", permutation_equivalence},
      {"channel/objective equivalences", channel_equivalences},
      {"union bound sanity", union_bound_sanity},
  };

  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < kLimit[id];
    const bool pass = out.pass && in_time;
    if (!pass) failed.insert(id);
    std::printf("%s %d %s [%.3f s, limit %.0f s%s] %s\n", pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), secs, kLimit[id],
                in_time ? "" : ", over time", out.detail.c_str());
  }

  const std::set<int> expected(expected_failures.begin(), expected_failures.end());
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected) {
    std::printf("failing set differs from --expected-failures\n");
    return 1;
  }
  return 0;
}
