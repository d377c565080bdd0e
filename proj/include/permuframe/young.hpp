#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "permuframe/error.hpp"
#include "permuframe/permutation.hpp"

namespace permuframe {

/// Integer partition of n: non-increasing positive parts.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw ValidationError("partition has no parts");
    for (std::size_t r = 0; r < parts_.size(); ++r) {
      if (parts_[r] < 1) throw ValidationError("partition parts must be positive");
      if (r > 0 && parts_[r] > parts_[r - 1])
        throw ValidationError(fmt::format("partition parts must be non-increasing: {}",
                                          fmt::join(parts_, ",")));
    }
  }

  /// "2,1" -> (2, 1).
  static Partition parse(std::string_view text) {
    return Partition(parse_int_list(text, "partition"));
  }

  int n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int rows() const { return static_cast<int>(parts_.size()); }
  int operator[](int row) const { return parts_[row]; }
  const std::vector<int>& parts() const { return parts_; }
  std::string to_string() const { return fmt::format("{}", fmt::join(parts_, ",")); }

  /// Length of column c (0-based).
  int column_length(int c) const {
    int len = 0;
    for (int p : parts_)
      if (p > c) ++len;
    return len;
  }

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

namespace detail {
inline void partitions_rec(int remaining, int max_part, std::vector<int>& prefix,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_rec(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

/// Every partition of n, in descending lexicographic order: (n), (n-1,1), ...
inline std::vector<Partition> partitions_of(int n) {
  if (n < 1) throw ValidationError(fmt::format("partitions_of needs n >= 1, got {}", n));
  std::vector<Partition> out;
  std::vector<int> prefix;
  detail::partitions_rec(n, n, prefix, out);
  return out;
}

/// Filling of a Young diagram by 1..n, rows and columns strictly increasing.
class StandardTableau {
 public:
  StandardTableau(Partition shape, std::vector<std::vector<int>> rows)
      : shape_(std::move(shape)), rows_(std::move(rows)) {
    const int n = shape_.n();
    row_of_.assign(n + 1, -1);
    col_of_.assign(n + 1, -1);
    if (static_cast<int>(rows_.size()) != shape_.rows())
      throw ValidationError("tableau row count does not match its shape");
    for (int r = 0; r < shape_.rows(); ++r) {
      if (static_cast<int>(rows_[r].size()) != shape_[r])
        throw ValidationError("tableau row length does not match its shape");
      for (int c = 0; c < shape_[r]; ++c) {
        int label = rows_[r][c];
        if (label < 1 || label > n || row_of_[label] != -1)
          throw ValidationError("tableau labels must be 1..n, each once");
        row_of_[label] = r;
        col_of_[label] = c;
        if (c > 0 && rows_[r][c - 1] >= label)
          throw ValidationError("tableau rows must strictly increase");
        if (r > 0 && rows_[r - 1][c] >= label)
          throw ValidationError("tableau columns must strictly increase");
      }
    }
  }

  const Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int row_of(int label) const { return row_of_[label]; }
  int col_of(int label) const { return col_of_[label]; }
  int content(int label) const { return col_of_[label] - row_of_[label]; }

  /// Rows concatenated top to bottom.
  std::vector<int> reading_word() const {
    std::vector<int> word;
    for (const auto& row : rows_) word.insert(word.end(), row.begin(), row.end());
    return word;
  }

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> row_of_;
  std::vector<int> col_of_;
};

namespace detail {
inline void tableaux_rec(const Partition& shape, int next, std::vector<std::vector<int>>& rows,
                         std::vector<StandardTableau>& out) {
  if (next > shape.n()) {
    out.emplace_back(shape, rows);
    return;
  }
  for (int r = 0; r < shape.rows(); ++r) {
    const int len = static_cast<int>(rows[r].size());
    if (len >= shape[r]) continue;
    if (r > 0 && static_cast<int>(rows[r - 1].size()) <= len) continue;
    rows[r].push_back(next);
    tableaux_rec(shape, next + 1, rows, out);
    rows[r].pop_back();
  }
}
}  // namespace detail

/// All standard tableaux of a shape, sorted lexicographically by reading word.
inline std::vector<StandardTableau> standard_tableaux(const Partition& shape) {
  std::vector<StandardTableau> out;
  std::vector<std::vector<int>> rows(shape.rows());
  detail::tableaux_rec(shape, 1, rows, out);
  std::sort(out.begin(), out.end(), [](const StandardTableau& a, const StandardTableau& b) {
    return a.reading_word() < b.reading_word();
  });
  return out;
}

/// Irrep dimension by the hook length formula n! / prod(hooks).
inline std::size_t dimension(const Partition& shape) {
  // Cancel hook factors against 1..n as we go to stay exact in 64 bits.
  std::vector<int> hooks;
  for (int r = 0; r < shape.rows(); ++r)
    for (int c = 0; c < shape[r]; ++c)
      hooks.push_back((shape[r] - c - 1) + (shape.column_length(c) - r - 1) + 1);
  std::size_t numerator = 1;
  std::size_t denominator = 1;
  for (int k = 1; k <= shape.n(); ++k) {
    numerator *= static_cast<std::size_t>(k);
    denominator *= static_cast<std::size_t>(hooks[k - 1]);
    std::size_t g = std::gcd(numerator, denominator);
    numerator /= g;
    denominator /= g;
  }
  if (denominator != 1) throw InvariantError("hook length formula did not divide evenly");
  return numerator;
}

/// Young's orthogonal form of the irrep indexed by a partition.
///
/// Basis: the standard tableaux of the shape in reading-word order.
/// s_k = (k, k+1) acts with diagonal entry 1/d and off-diagonal entry
/// sqrt(1 - 1/d^2) between T and T with k, k+1 swapped, where
/// d = content(k+1) - content(k) is the axial distance in T.
class YoungOrthogonalForm {
 public:
  explicit YoungOrthogonalForm(Partition shape)
      : shape_(std::move(shape)), tableaux_(standard_tableaux(shape_)) {
    const int n = shape_.n();
    const auto d = static_cast<Eigen::Index>(tableaux_.size());
    std::map<std::vector<int>, Eigen::Index> index;
    for (Eigen::Index t = 0; t < d; ++t) index.emplace(tableaux_[t].reading_word(), t);

    generators_.reserve(n > 0 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
      for (Eigen::Index t = 0; t < d; ++t) {
        const auto& tab = tableaux_[t];
        const int axial = tab.content(k + 1) - tab.content(k);
        s(t, t) = 1.0 / axial;
        if (std::abs(axial) > 1) {
          auto word = tab.reading_word();
          for (int& v : word) {
            if (v == k) v = k + 1;
            else if (v == k + 1) v = k;
          }
          const Eigen::Index partner = index.at(word);
          s(t, partner) = std::sqrt(1.0 - 1.0 / (static_cast<double>(axial) * axial));
        }
      }
      generators_.push_back(std::move(s));
    }
  }

  const Partition& shape() const { return shape_; }
  std::size_t dim() const { return tableaux_.size(); }
  const std::vector<StandardTableau>& tableaux() const { return tableaux_; }

  /// Matrix of s_k = (k, k+1), 1 <= k <= n-1.
  const Eigen::MatrixXd& adjacent(int k) const {
    if (k < 1 || k >= shape_.n())
      throw ValidationError(
          fmt::format("adjacent transposition index {} outside 1..{}", k, shape_.n() - 1));
    return generators_[k - 1];
  }

  /// Product of generator matrices along the reduced word of p.
  Eigen::MatrixXd evaluate(const Permutation& p) const {
    if (p.size() != shape_.n())
      throw ValidationError(fmt::format("permutation of size {} for a shape of {}", p.size(),
                                        shape_.n()));
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    for (int k : adjacent_factorization(p)) m = m * generators_[k - 1];
    return m;
  }

 private:
  Partition shape_;
  std::vector<StandardTableau> tableaux_;
  std::vector<Eigen::MatrixXd> generators_;
};

inline Eigen::MatrixXd yor_adjacent(const Partition& shape, int k) {
  return YoungOrthogonalForm(shape).adjacent(k);
}

inline Eigen::MatrixXd yor_evaluate(const Partition& shape, const Permutation& p) {
  return YoungOrthogonalForm(shape).evaluate(p);
}

}  // namespace permuframe
