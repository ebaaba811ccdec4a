#pragma once

// Golden checks on small fixed instances: the r = (2,3,2,3) matrix, the
// duplicate-entry initial vector (1,1,2,2), the derangement listing for
// r = (2,2,2), C(2,6,3) metrics and the Chebyshev LP decode on C(2,6,3).

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "multiperm/codes.hpp"
#include "multiperm/core.hpp"
#include "multiperm/decode.hpp"
#include "multiperm/oracle.hpp"

namespace multiperm {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

namespace golden {

inline const std::vector<int> kStaircaseSymbols{2, 1, 4, 1, 2, 3, 4, 4, 2, 3};

inline BinaryMatrix staircase_matrix() {
  BinaryMatrix x(4, 10);
  x << 0, 1, 0, 1, 0, 0, 0, 0, 0, 0,  //
      1, 0, 0, 0, 1, 0, 0, 0, 1, 0,   //
      0, 0, 0, 0, 0, 1, 0, 0, 0, 1,   //
      0, 0, 1, 0, 0, 0, 1, 1, 0, 0;
  return x;
}

inline BinaryMatrix swap_pairs_permutation() {
  BinaryMatrix p(4, 4);
  p << 0, 1, 0, 0,  //
      1, 0, 0, 0,   //
      0, 0, 0, 1,   //
      0, 0, 1, 0;
  return p;
}

inline const std::set<std::vector<int>> kDerangements222{
    {3, 3, 1, 1, 2, 2}, {2, 2, 3, 3, 1, 1}, {2, 3, 1, 3, 2, 1}, {2, 3, 1, 3, 1, 2}, {2, 3, 3, 1, 2, 1},
    {2, 3, 3, 1, 1, 2}, {3, 2, 1, 3, 2, 1}, {3, 2, 1, 3, 1, 2}, {3, 2, 3, 1, 2, 1}, {3, 2, 3, 1, 1, 2}};

inline const std::vector<int> kChebyshevSent{1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6};
inline const std::vector<double> kChebyshevReceived{2, 1, 4, 3, 6, 5, 2, 1, 4, 3, 6, 5};

}  // namespace golden

/// Runs every golden check; eps_int is the integrality tolerance used for the
/// fractional-solution check.
inline std::vector<CheckResult> run_worked_examples(double eps_int = kIntegralityTolerance) {
  std::vector<CheckResult> out;
  const auto record = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const MultiplicityVector r({2, 3, 2, 3});
    const Multipermutation x(golden::kStaircaseSymbols, r);
    const auto mat = matrix_from_multipermutation(x);
    record("r=(2,3,2,3): matrix of x", mat.entries() == golden::staircase_matrix());
    record("r=(2,3,2,3): row sums (2,3,2,3)", mat.entries().rowwise().sum() == Eigen::Vector4i(2, 3, 2, 3));
    record("r=(2,3,2,3): x = tX", vector_from_matrix(mat, InitialVector::natural(4)) == as_reals(golden::kStaircaseSymbols));
  }
  {
    const PermutationMatrix p1(BinaryMatrix::Identity(4, 4));
    const PermutationMatrix p2(golden::swap_pairs_permutation());
    const std::vector<double> s{1, 1, 2, 2};
    const auto apply = [&](const PermutationMatrix& p) {
      std::vector<double> v(4, 0.0);
      for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) v[j] += s[k] * p(k, j);
      }
      return v;
    };
    record("s=(1,1,2,2): d_H(sP1, sP2) = 0", hamming_distance_vectors(apply(p1), apply(p2)) == 0);
    record("s=(1,1,2,2): d_H(P1, P2) = 8", hamming_distance_matrices(p1, p2) == 8);
    BinaryMatrix expected(2, 4);
    expected << 1, 1, 0, 0, 0, 0, 1, 1;
    const auto x = matrix_from_multipermutation(Multipermutation({1, 1, 2, 2}, MultiplicityVector({2, 2})));
    record("s=(1,1,2,2): unique X with s = tX", x.entries() == expected &&
                                                    vector_from_matrix(x, InitialVector({1, 2})) == s);
  }
  {
    const auto spec = derangement_spec(MultiplicityVector({2, 2, 2}), InitialVector({1, 2, 3}));
    const auto book = enumerate_codebook(spec);
    std::set<std::vector<int>> found;
    for (std::size_t k = 0; k < book.size(); ++k) found.insert(book.symbols(k));
    record("derangement r=(2,2,2): 10 listed codewords", found == golden::kDerangements222,
           std::to_string(book.size()) + " codewords");
  }
  {
    const auto spec = shieh_spec(2, 6, 3);
    const auto book = enumerate_codebook(spec);
    record("C(2,6,3): 216 codewords", book.size() == 216 && shieh_cardinality(2, 6, 3) == 216,
           std::to_string(book.size()) + " codewords");
    const double dmin = min_distance(book, Metric::Chebyshev, spec.t);
    record("C(2,6,3): minimum Chebyshev distance 3", dmin == 3.0, "d_inf_min = " + std::to_string(dmin));

    const auto sent = as_reals(golden::kChebyshevSent);
    const auto& y = golden::kChebyshevReceived;
    record("C(2,6,3): d_inf(x, y) = 1", chebyshev_distance(sent, y) == 1.0);
    record("C(2,6,3): d_H(x, y) = 12", hamming_distance_vectors(sent, y) == 12);

    const auto res = decode_chebyshev(spec, y);
    record("C(2,6,3): LP delta = 1", std::abs(*res.delta - 1.0) <= 1e-6, "delta = " + std::to_string(*res.delta));
    record("C(2,6,3): rounded decode = x", res.decoded.symbols == golden::kChebyshevSent);
    record("C(2,6,3): LP optimum is fractional", !certificate_check(res.relaxed.values(), eps_int));

    const auto oracle = chebyshev_decode_exhaustive(book, y, spec.t);
    record("C(2,6,3): exhaustive decode value 1, unique, = x",
           oracle.value == 1.0 && oracle.tie_set_size == 1 && oracle.best == golden::kChebyshevSent);
  }
  return out;
}

}  // namespace multiperm
