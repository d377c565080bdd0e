#include <random>
#include <set>

#include <gtest/gtest.h>

#include "permuframe/permutation.hpp"

using permuframe::GroupOrdering;
using permuframe::Permutation;
using permuframe::ValidationError;

namespace {

Permutation cycle(int n, std::vector<int> c) { return Permutation::from_cycles(n, {std::move(c)}); }

Permutation recompose(int n, const std::vector<int>& word) {
  Permutation p = Permutation::identity(n);
  for (int k : word) p = p * Permutation::transposition(n, k, k + 1);
  return p;
}

}  // namespace

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({1, 1, 3}), ValidationError);
  EXPECT_THROW(Permutation({0, 1, 2}), ValidationError);
  EXPECT_THROW(Permutation({1, 2, 4}), ValidationError);
  EXPECT_THROW(Permutation::parse("1,,2"), ValidationError);
  EXPECT_THROW(Permutation::parse("a"), ValidationError);
}

TEST(Permutation, ParseAndPrintOneLine) {
  const auto p = Permutation::parse("2,1,3");
  EXPECT_EQ(p, Permutation::transposition(3, 1, 2));
  EXPECT_EQ(p.to_string(), "2,1,3");
  EXPECT_EQ(Permutation::parse(" 3, 1 ,2").to_string(), "3,1,2");
}

TEST(Permutation, ComposeExamples) {
  const auto t12 = cycle(3, {1, 2});
  const auto t23 = cycle(3, {2, 3});
  const auto id = Permutation::identity(3);
  EXPECT_EQ(t12 * t12, id);
  // (12)(23): 1 -> 2, 2 -> 3, 3 -> 1
  const auto c = compose(t12, t23);
  EXPECT_EQ(c, Permutation({2, 3, 1}));
  EXPECT_EQ(c, cycle(3, {1, 2, 3}));
  EXPECT_EQ(compose(c, id), c);
  EXPECT_THROW(compose(id, Permutation::identity(4)), ValidationError);
}

TEST(Permutation, InverseExamples) {
  EXPECT_EQ(inverse(cycle(3, {1, 2})), cycle(3, {1, 2}));
  EXPECT_EQ(inverse(cycle(3, {1, 2, 3})), cycle(3, {1, 3, 2}));
  EXPECT_EQ(inverse(Permutation::identity(3)), Permutation::identity(3));
}

TEST(Permutation, GroupLawsOnS4) {
  const auto s4 = GroupOrdering::lex(4);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, s4.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& p = s4[pick(rng)];
    const auto& q = s4[pick(rng)];
    const auto& r = s4[pick(rng)];
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(inverse(p * q), inverse(q) * inverse(p));
    EXPECT_TRUE((p * inverse(p)).is_identity());
  }
}

TEST(Enumerate, PaperS3Order) {
  const auto s3 = GroupOrdering::paper_s3();
  const std::vector<Permutation> expected{Permutation::identity(3), cycle(3, {1, 2}), cycle(3, {2, 3}),
                                          cycle(3, {1, 3}), cycle(3, {1, 2, 3}), cycle(3, {1, 3, 2})};
  EXPECT_EQ(s3.elements(), expected);
  EXPECT_EQ(s3.index_of(cycle(3, {1, 3})), 3u);
}

TEST(Enumerate, LexAndSmallCases) {
  EXPECT_EQ(permuframe::enumerate(1), std::vector<Permutation>{Permutation::identity(1)});
  const auto s3 = permuframe::enumerate(3);
  ASSERT_EQ(s3.size(), 6u);
  EXPECT_TRUE(s3.front().is_identity());
  EXPECT_TRUE(std::is_sorted(s3.begin(), s3.end()));
  for (int n = 1; n <= 6; ++n) {
    const auto all = permuframe::enumerate(n);
    EXPECT_EQ(all.size(), permuframe::factorial(n));
    EXPECT_EQ(std::set<Permutation>(all.begin(), all.end()).size(), all.size());
  }
}

TEST(Enumerate, CapAndCustomOrdering) {
  EXPECT_THROW(GroupOrdering::lex(9), ValidationError);
  EXPECT_THROW(GroupOrdering::lex(5, 4), ValidationError);
  EXPECT_THROW(GroupOrdering::from_name("paper_s3", 4), ValidationError);

  auto reversed = permuframe::enumerate(3);
  std::reverse(reversed.begin(), reversed.end());
  const auto custom = GroupOrdering::custom(reversed);
  EXPECT_EQ(custom.id(), permuframe::OrderingId::custom);
  EXPECT_FALSE(custom[0].is_identity());
  EXPECT_EQ(custom.index_of(Permutation::identity(3)), 5u);

  reversed.pop_back();
  EXPECT_THROW(GroupOrdering::custom(reversed), ValidationError);
  reversed.push_back(reversed.front());
  EXPECT_THROW(GroupOrdering::custom(reversed), ValidationError);
}

TEST(AdjacentFactorization, Examples) {
  EXPECT_TRUE(adjacent_factorization(Permutation::identity(3)).empty());
  EXPECT_EQ(adjacent_factorization(cycle(3, {1, 2})), std::vector<int>{1});
  const auto t13 = Permutation({3, 2, 1});
  const auto word = adjacent_factorization(t13);
  EXPECT_EQ(word.size(), 3u);
  EXPECT_EQ(word, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(recompose(3, word), t13);
}

TEST(AdjacentFactorization, ReducedWordsExhaustiveS4) {
  for (const auto& p : GroupOrdering::lex(4)) {
    const auto word = adjacent_factorization(p);
    EXPECT_EQ(recompose(4, word), p);
    EXPECT_EQ(static_cast<int>(word.size()), p.inversions());
  }
}

TEST(AdjacentFactorization, RandomS6) {
  std::mt19937 rng(11);
  std::vector<int> images{1, 2, 3, 4, 5, 6};
  for (int trial = 0; trial < 1000; ++trial) {
    std::shuffle(images.begin(), images.end(), rng);
    const Permutation p(images);
    const auto word = adjacent_factorization(p);
    ASSERT_EQ(recompose(6, word), p);
    ASSERT_EQ(static_cast<int>(word.size()), p.inversions());
  }
}

TEST(MaxDegree, ReadsEnvironment) {
  ::setenv("PERMUFRAME_MAX_N", "4", 1);
  EXPECT_EQ(permuframe::max_degree(), 4);
  EXPECT_THROW(GroupOrdering::lex(5), ValidationError);
  ::setenv("PERMUFRAME_MAX_N", "x", 1);
  EXPECT_THROW(permuframe::max_degree(), ValidationError);
  ::unsetenv("PERMUFRAME_MAX_N");
  EXPECT_EQ(permuframe::max_degree(), permuframe::kDefaultMaxDegree);
}
