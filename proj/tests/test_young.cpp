#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "permuframe/young.hpp"

using permuframe::GroupOrdering;
using permuframe::Partition;
using permuframe::Permutation;
using permuframe::YoungOrthogonalForm;

namespace {

// Oracle: sorted multisets of every composition of n.
std::set<std::vector<int>> brute_partitions(int n) {
  std::set<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int b = 0; b < n - 1; ++b) {
      if (mask & (1u << b)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    std::sort(parts.rbegin(), parts.rend());
    out.insert(parts);
  }
  return out;
}

// Oracle: count fillings of the diagram by 1..n with increasing rows and columns.
std::size_t brute_tableaux(const Partition& shape) {
  const int n = shape.n();
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  std::size_t count = 0;
  do {
    std::vector<std::vector<int>> rows;
    int pos = 0;
    for (int r = 0; r < shape.rows(); ++r) {
      rows.emplace_back(labels.begin() + pos, labels.begin() + pos + shape[r]);
      pos += shape[r];
    }
    bool ok = true;
    for (int r = 0; r < shape.rows() && ok; ++r)
      for (int c = 0; c < shape[r] && ok; ++c) {
        if (c > 0 && rows[r][c - 1] > rows[r][c]) ok = false;
        if (r > 0 && rows[r - 1][c] > rows[r][c]) ok = false;
      }
    if (ok) ++count;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return count;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Partition, ValidatesAndParses) {
  EXPECT_THROW(Partition({1, 2}), permuframe::ValidationError);
  EXPECT_THROW(Partition({2, 0}), permuframe::ValidationError);
  EXPECT_THROW(Partition::parse("2,x"), permuframe::ValidationError);
  EXPECT_EQ(Partition::parse("2,2").to_string(), "2,2");
  EXPECT_EQ(Partition::parse("3,1").n(), 4);
}

TEST(PartitionsOf, Examples) {
  const auto p3 = permuframe::partitions_of(3);
  ASSERT_EQ(p3.size(), 3u);
  EXPECT_EQ(p3[0], Partition({3}));
  EXPECT_EQ(p3[1], Partition({2, 1}));
  EXPECT_EQ(p3[2], Partition({1, 1, 1}));
  EXPECT_EQ(permuframe::partitions_of(1), std::vector<Partition>{Partition({1})});
  EXPECT_EQ(permuframe::partitions_of(5).size(), 7u);
}

TEST(PartitionsOf, MatchesBruteForce) {
  for (int n = 1; n <= 9; ++n) {
    const auto parts = permuframe::partitions_of(n);
    std::set<std::vector<int>> got;
    for (const auto& p : parts) got.insert(p.parts());
    EXPECT_EQ(got.size(), parts.size());
    EXPECT_EQ(got, brute_partitions(n));
    for (std::size_t k = 1; k < parts.size(); ++k) EXPECT_GT(parts[k - 1], parts[k]);
  }
}

TEST(StandardTableaux, Examples) {
  const auto t21 = permuframe::standard_tableaux(Partition({2, 1}));
  ASSERT_EQ(t21.size(), 2u);
  EXPECT_EQ(t21[0].rows(), (std::vector<std::vector<int>>{{1, 2}, {3}}));
  EXPECT_EQ(t21[1].rows(), (std::vector<std::vector<int>>{{1, 3}, {2}}));
  const auto t3 = permuframe::standard_tableaux(Partition({3}));
  ASSERT_EQ(t3.size(), 1u);
  EXPECT_EQ(t3[0].rows(), (std::vector<std::vector<int>>{{1, 2, 3}}));
  EXPECT_EQ(permuframe::standard_tableaux(Partition({2, 2})).size(), brute_tableaux(Partition({2, 2})));
  EXPECT_EQ(permuframe::standard_tableaux(Partition({2, 2})).size(), 2u);
}

TEST(StandardTableaux, RejectsNonStandardFilling) {
  EXPECT_THROW(permuframe::StandardTableau(Partition({2, 1}), {{2, 1}, {3}}), permuframe::ValidationError);
  EXPECT_THROW(permuframe::StandardTableau(Partition({2, 1}), {{1, 3}, {4}}), permuframe::ValidationError);
}

TEST(Dimension, Examples) {
  EXPECT_EQ(permuframe::dimension(Partition({2, 1})), 2u);
  EXPECT_EQ(permuframe::dimension(Partition({5})), 1u);
  EXPECT_EQ(permuframe::dimension(Partition({2, 2})), 2u);
}

TEST(Dimension, HookLengthMatchesTableauCount) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& shape : permuframe::partitions_of(n)) {
      const auto count = permuframe::standard_tableaux(shape).size();
      EXPECT_EQ(permuframe::dimension(shape), count) << shape.to_string();
      if (n <= 5) EXPECT_EQ(count, brute_tableaux(shape)) << shape.to_string();
    }
}

TEST(Dimension, SquaresSumToGroupOrder) {
  for (int n = 1; n <= 7; ++n) {
    std::size_t sum = 0;
    for (const auto& shape : permuframe::partitions_of(n)) {
      const auto d = permuframe::dimension(shape);
      sum += d * d;
    }
    EXPECT_EQ(sum, permuframe::factorial(n)) << n;
  }
}

TEST(YorAdjacent, Examples) {
  EXPECT_DOUBLE_EQ(permuframe::yor_adjacent(Partition({3}), 1)(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(permuframe::yor_adjacent(Partition({3}), 2)(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(permuframe::yor_adjacent(Partition({1, 1, 1}), 1)(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(permuframe::yor_adjacent(Partition({1, 1, 1}), 2)(0, 0), -1.0);

  // Axial distance of 2 -> 3 is -2 in [[1,2],[3]] and +2 in [[1,3],[2]].
  const double h = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXd expected(2, 2);
  expected << -0.5, h, h, 0.5;
  EXPECT_LT(max_abs(permuframe::yor_adjacent(Partition({2, 1}), 2) - expected), 1e-15);
  Eigen::MatrixXd s1(2, 2);
  s1 << 1, 0, 0, -1;
  EXPECT_LT(max_abs(permuframe::yor_adjacent(Partition({2, 1}), 1) - s1), 1e-15);

  EXPECT_THROW(permuframe::yor_adjacent(Partition({2, 1}), 3), permuframe::ValidationError);
  EXPECT_THROW(permuframe::yor_adjacent(Partition({2, 1}), 0), permuframe::ValidationError);
}

TEST(YorEvaluate, Examples) {
  const Partition std21({2, 1});
  EXPECT_LT(max_abs(permuframe::yor_evaluate(std21, Permutation::identity(3)) - Eigen::MatrixXd::Identity(2, 2)),
            1e-15);
  // Character of the standard rep is fixed points - 1.
  EXPECT_NEAR(permuframe::yor_evaluate(std21, Permutation::transposition(3, 1, 2)).trace(), 0.0, 1e-15);
  EXPECT_NEAR(permuframe::yor_evaluate(std21, Permutation::from_cycles(3, {{1, 2, 3}})).trace(), -1.0, 1e-15);
  EXPECT_DOUBLE_EQ(
      permuframe::yor_evaluate(Partition({1, 1, 1}), Permutation::from_cycles(3, {{1, 2, 3}}))(0, 0), 1.0);
}

TEST(YorEvaluate, OrthogonalAndHomomorphicOnS4) {
  const auto s4 = GroupOrdering::lex(4);
  for (const auto& shape : permuframe::partitions_of(4)) {
    const YoungOrthogonalForm yor(shape);
    std::vector<Eigen::MatrixXd> m;
    for (const auto& p : s4) m.push_back(yor.evaluate(p));
    const auto d = static_cast<Eigen::Index>(yor.dim());
    for (std::size_t a = 0; a < s4.size(); ++a) {
      EXPECT_LT(max_abs(m[a].transpose() * m[a] - Eigen::MatrixXd::Identity(d, d)), 1e-12);
      for (std::size_t b = 0; b < s4.size(); ++b)
        ASSERT_LT(max_abs(m[s4.index_of(s4[a] * s4[b])] - m[a] * m[b]), 1e-12) << shape.to_string();
    }
  }
}

TEST(YorEvaluate, OrthogonalForEveryShapeUpToFive) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& shape : permuframe::partitions_of(n)) {
      const YoungOrthogonalForm yor(shape);
      const auto d = static_cast<Eigen::Index>(yor.dim());
      for (const auto& p : GroupOrdering::lex(n)) {
        const auto m = yor.evaluate(p);
        ASSERT_LT(max_abs(m.transpose() * m - Eigen::MatrixXd::Identity(d, d)), 1e-12);
      }
    }
}

TEST(YorAdjacent, CoxeterRelations) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& shape : permuframe::partitions_of(n)) {
      const YoungOrthogonalForm yor(shape);
      const auto d = static_cast<Eigen::Index>(yor.dim());
      const auto id = Eigen::MatrixXd::Identity(d, d);
      for (int k = 1; k < n; ++k) {
        const auto& s = yor.adjacent(k);
        EXPECT_LT(max_abs(s - s.transpose()), 1e-15);
        EXPECT_LT(max_abs(s * s - id), 1e-12);
        if (k + 1 < n) {
          const auto& t = yor.adjacent(k + 1);
          EXPECT_LT(max_abs(s * t * s - t * s * t), 1e-12);
        }
        for (int j = k + 2; j < n; ++j) {
          const auto& u = yor.adjacent(j);
          EXPECT_LT(max_abs(s * u - u * s), 1e-12);
        }
      }
    }
}
