#include <gtest/gtest.h>

#include <random>
#include <set>

#include "multiperm/codes.hpp"
#include "multiperm/polytope.hpp"
#include "test_support.hpp"

using namespace multiperm;

namespace {

std::set<std::vector<int>> symbol_set(const Codebook& book) {
  std::set<std::vector<int>> out;
  for (std::size_t k = 0; k < book.size(); ++k) out.insert(book.symbols(k));
  return out;
}

/// Filters the full multiset by direct evaluation of every constraint row.
std::set<std::vector<int>> brute_force_code(const CodeSpec& spec) {
  std::set<std::vector<int>> out;
  for (const auto& w : oracle_ref::all_multipermutations(spec.r.counts())) {
    const auto x = oracle_ref::indicator_matrix(w, spec.m());
    bool ok = true;
    for (const auto& c : spec.constraints) {
      long long lhs = 0;
      for (const auto& term : c.terms()) lhs += term.coef * x(static_cast<Eigen::Index>(term.row), static_cast<Eigen::Index>(term.col));
      ok = ok && (c.relation() == Relation::Equal ? lhs == c.rhs() : lhs <= c.rhs());
    }
    if (ok) out.insert(w);
  }
  return out;
}

CodeSpec random_spec(std::mt19937_64& rng, const std::vector<int>& r, int rows) {
  const MultiplicityVector mult(r);
  std::uniform_int_distribution<std::size_t> row(0, mult.m() - 1), col(0, mult.n() - 1);
  std::uniform_int_distribution<int> coef(-2, 2), rhs(0, 2), len(1, 4), rel(0, 1);
  std::vector<LinearConstraint> cons;
  while (static_cast<int>(cons.size()) < rows) {
    std::vector<ConstraintTerm> terms;
    for (int k = len(rng); k > 0; --k) terms.push_back({row(rng), col(rng), coef(rng)});
    if (std::none_of(terms.begin(), terms.end(), [](const auto& t) { return t.coef != 0; })) continue;
    cons.emplace_back(std::move(terms), rel(rng) ? Relation::Equal : Relation::LessEqual, rhs(rng));
  }
  return CodeSpec(mult, InitialVector::natural(mult.m()), std::move(cons));
}

}  // namespace

TEST(LinearConstraint, NeedsNonzeroCoefficient) {
  EXPECT_THROW(LinearConstraint({{0, 0, 0}}, Relation::Equal, 0), std::invalid_argument);
}

TEST(CodeSpec, RejectsOutOfGridTerms) {
  const MultiplicityVector r({1, 1});
  EXPECT_THROW(CodeSpec(r, InitialVector({1, 2}), {LinearConstraint({{2, 0, 1}}, Relation::Equal, 0)}), std::invalid_argument);
  EXPECT_THROW(CodeSpec(r, InitialVector({1, 2, 3})), std::invalid_argument);
}

TEST(Satisfies, Examples) {
  const MultiplicityVector r({2, 2, 2});
  const CodeSpec free_spec(r, InitialVector::natural(3));
  for (const auto& w : oracle_ref::all_multipermutations(r.counts())) {
    EXPECT_TRUE(satisfies(MultipermutationMatrix(Multipermutation(w, r)), free_spec));
  }
  const auto der = derangement_spec(r, InitialVector::natural(3));
  EXPECT_FALSE(satisfies(canonical_sorted_matrix(r), der));

  const auto shieh = shieh_spec(2, 6, 3);
  const Multipermutation x({1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6}, MultiplicityVector::uniform(2, 6));
  EXPECT_TRUE(satisfies(MultipermutationMatrix(x), shieh));
}

TEST(DerangementSpec, ListedCodewordsAndEdgeCases) {
  const auto book = enumerate_codebook(derangement_spec(MultiplicityVector({2, 2, 2}), InitialVector({1, 2, 3})));
  const std::set<std::vector<int>> expected{{3, 3, 1, 1, 2, 2}, {2, 2, 3, 3, 1, 1}, {2, 3, 1, 3, 2, 1}, {2, 3, 1, 3, 1, 2},
                                            {2, 3, 3, 1, 2, 1}, {2, 3, 3, 1, 1, 2}, {3, 2, 1, 3, 2, 1}, {3, 2, 1, 3, 1, 2},
                                            {3, 2, 3, 1, 2, 1}, {3, 2, 3, 1, 1, 2}};
  EXPECT_EQ(book.size(), 10u);
  EXPECT_EQ(symbol_set(book), expected);

  const auto two = enumerate_codebook(derangement_spec(MultiplicityVector({1, 1}), InitialVector::natural(2)));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.symbols(0), (std::vector<int>{2, 1}));

  EXPECT_TRUE(enumerate_codebook(derangement_spec(MultiplicityVector({4}), InitialVector::natural(1))).empty());
}

TEST(ShiehSpec, ConstraintPattern) {
  const auto spec = shieh_spec(2, 6, 3);
  EXPECT_EQ(spec.constraints.size(), 48u);
  std::set<std::pair<std::size_t, std::size_t>> zeroed;
  for (const auto& c : spec.constraints) {
    ASSERT_EQ(c.terms().size(), 1u);
    EXPECT_EQ(c.relation(), Relation::Equal);
    EXPECT_EQ(c.rhs(), 0);
    zeroed.insert({c.terms()[0].row, c.terms()[0].col});
  }
  for (std::size_t row : {1u, 2u, 4u, 5u}) EXPECT_TRUE(zeroed.contains({row, 0}));
  for (std::size_t row : {0u, 1u, 3u, 4u}) EXPECT_TRUE(zeroed.contains({row, 11}));
  EXPECT_FALSE(zeroed.contains({0, 0}));
  EXPECT_FALSE(zeroed.contains({3, 0}));
  EXPECT_THROW(shieh_spec(2, 6, 4), std::invalid_argument);
}

TEST(ShiehSpec, SmallCases) {
  EXPECT_TRUE(shieh_spec(2, 4, 1).constraints.empty());
  EXPECT_EQ(enumerate_codebook(shieh_spec(2, 4, 1)).size(), 2520u);
  const auto one = enumerate_codebook(shieh_spec(1, 2, 2));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.symbols(0), (std::vector<int>{1, 2}));
}

TEST(ShiehCardinality, ClosedFormAgainstEnumeration) {
  EXPECT_EQ(shieh_cardinality(2, 6, 3), 216u);
  EXPECT_EQ(shieh_cardinality(3, 4, 4), 1u);
  EXPECT_EQ(shieh_cardinality(1, 2, 1), 2u);
  EXPECT_THROW(shieh_cardinality(2, 6, 4), std::invalid_argument);
  for (int r = 1; r <= 3; ++r) {
    for (int m = 1; m <= 6; ++m) {
      for (int d = 1; d <= m; ++d) {
        if (m % d != 0 || r * m > 12 || shieh_cardinality(r, m, d) > 200000) continue;
        EXPECT_EQ(enumerate_codebook(shieh_spec(r, m, d)).size(), shieh_cardinality(r, m, d)) << r << ' ' << m << ' ' << d;
      }
    }
  }
}

TEST(Enumerate, MatchesBruteForceOnRandomSpecs) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = random_spec(rng, trial % 2 ? std::vector<int>{2, 2, 1} : std::vector<int>{1, 2, 1, 2}, 1 + trial % 4);
    const auto book = enumerate_codebook(spec);
    EXPECT_EQ(symbol_set(book), brute_force_code(spec));
    for (std::size_t k = 0; k + 1 < book.size(); ++k) EXPECT_LT(book.symbols(k), book.symbols(k + 1));
    for (const auto& x : book) EXPECT_TRUE(satisfies(x, spec));
  }
}

TEST(Enumerate, UnconstrainedCountAndLimit) {
  const CodeSpec spec(MultiplicityVector({2, 2}), InitialVector::natural(2));
  EXPECT_EQ(enumerate_codebook(spec).size(), 6u);
  EXPECT_THROW(enumerate_codebook(spec, 5), EnumerationTooLarge);
  EXPECT_EQ(multiset_permutation_count(MultiplicityVector({2, 3, 2, 3})), 25200u);
}

TEST(ExclusionConstraint, RemovesOnlyTheExcludedWord) {
  const MultiplicityVector r({2, 2});
  const auto words = oracle_ref::all_multipermutations(r.counts());
  const MultipermutationMatrix y(Multipermutation(words[2], r));
  const auto c = exclusion_constraint(y);
  const auto entry_of = [](const MultipermutationMatrix& x) { return [&x](std::size_t i, std::size_t j) { return x(i, j); }; };
  EXPECT_FALSE(c.holds(c.lhs(entry_of(y))));
  int neighbours = 0;
  for (const auto& w : words) {
    const MultipermutationMatrix x(Multipermutation(w, r));
    if (hamming_distance_vectors(x.to_multipermutation(), y.to_multipermutation()) == 2) {
      EXPECT_TRUE(c.holds(c.lhs(entry_of(x))));
      ++neighbours;
    }
  }
  EXPECT_GT(neighbours, 0);
  const auto book = enumerate_codebook(CodeSpec(r, InitialVector::natural(2), {c}));
  EXPECT_EQ(book.size(), 5u);
  EXPECT_FALSE(book.find(y).has_value());
}

TEST(ExclusionConstraint, CarvesAnyTargetSubset) {
  std::mt19937_64 rng(29);
  for (const auto& counts : std::vector<std::vector<int>>{{2, 2}, {1, 2, 1}}) {
    const MultiplicityVector r(counts);
    const auto words = oracle_ref::all_multipermutations(counts);
    for (int trial = 0; trial < 20; ++trial) {
      std::set<std::vector<int>> target;
      std::vector<LinearConstraint> cons;
      for (const auto& w : words) {
        if (rng() % 2) {
          target.insert(w);
        } else {
          cons.push_back(exclusion_constraint(MultipermutationMatrix(Multipermutation(w, r))));
        }
      }
      EXPECT_EQ(symbol_set(enumerate_codebook(CodeSpec(r, InitialVector::natural(r.m()), cons))), target);
    }
  }
}

TEST(MinDistance, Examples) {
  const auto shieh = shieh_spec(2, 6, 3);
  EXPECT_EQ(min_distance(enumerate_codebook(shieh), Metric::Chebyshev, shieh.t), 3.0);
  const CodeSpec all(MultiplicityVector({2, 2}), InitialVector::natural(2));
  EXPECT_EQ(min_distance(enumerate_codebook(all), Metric::Hamming, all.t), 2.0);
  const auto single = shieh_spec(1, 2, 2);
  EXPECT_THROW(min_distance(enumerate_codebook(single), Metric::Hamming, single.t), std::invalid_argument);
}

TEST(CodewordIndex, OrderAndRoundTrip) {
  const auto spec = shieh_spec(2, 6, 3);
  const auto book = enumerate_codebook(spec);
  EXPECT_EQ(codeword_by_index(book, 0).to_multipermutation().symbols(), (std::vector<int>{1, 2, 3, 1, 2, 3, 4, 5, 6, 4, 5, 6}));
  EXPECT_THROW(codeword_by_index(book, book.size()), std::out_of_range);
  const auto small = enumerate_codebook(shieh_spec(2, 4, 2));
  EXPECT_EQ(small.size(), 36u);
  for (std::size_t k = 0; k < small.size(); ++k) EXPECT_EQ(index_of(small, codeword_by_index(small, k)), k);
  const auto other = MultipermutationMatrix(Multipermutation({2, 1, 1, 2, 3, 4, 3, 4}, MultiplicityVector::uniform(2, 4)));
  EXPECT_THROW(index_of(small, other), std::invalid_argument);
}

TEST(PermutationTranslation, RepeatedInitialVector) {
  const CodeSpec spec(MultiplicityVector({2, 1, 3}), InitialVector({0.5, 2.0, -1.0}));
  const auto p = to_permutation_spec(spec);
  EXPECT_EQ(p.n, 6u);
  EXPECT_EQ(p.s, (std::vector<double>{0.5, 0.5, 2.0, -1.0, -1.0, -1.0}));
}

TEST(PermutationTranslation, LiftsEachCoefficientOverItsBlock) {
  const MultiplicityVector r({2, 1});
  const CodeSpec spec(r, InitialVector::natural(2), {LinearConstraint({{0, 2, 3}, {1, 0, -1}}, Relation::LessEqual, 1)});
  const auto p = to_permutation_spec(spec);
  ASSERT_EQ(p.constraints.size(), 1u);
  const std::vector<ConstraintTerm> expected{{0, 2, 3}, {1, 2, 3}, {2, 0, -1}};
  EXPECT_EQ(p.constraints[0].terms(), expected);
  EXPECT_EQ(p.constraints[0].rhs(), 1);
}

TEST(PermutationTranslation, SameCodewordSets) {
  const CodeSpec free_spec(MultiplicityVector({2, 2}), InitialVector({1, 2}));
  const auto free_words = permutation_codewords(to_permutation_spec(free_spec));
  EXPECT_EQ(free_words.size(), 6u);
  EXPECT_EQ(free_words, transmitted_vectors(enumerate_codebook(free_spec), free_spec.t));

  const auto der = derangement_spec(MultiplicityVector({1, 1, 1}), InitialVector::natural(3));
  const auto der_words = permutation_codewords(to_permutation_spec(der));
  EXPECT_EQ(der_words, (std::set<std::vector<double>>{{2, 3, 1}, {3, 1, 2}}));

  const auto sh = shieh_spec(2, 2, 2);
  EXPECT_EQ(permutation_codewords(to_permutation_spec(sh)), transmitted_vectors(enumerate_codebook(sh), sh.t));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = random_spec(rng, {2, 1, 2}, 3);
    EXPECT_EQ(permutation_codewords(to_permutation_spec(spec)), transmitted_vectors(enumerate_codebook(spec), spec.t));
  }
}
