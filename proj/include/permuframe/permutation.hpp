#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "permuframe/error.hpp"

namespace permuframe {

// Default largest n for which S_n is enumerated; PERMUFRAME_MAX_N overrides.
inline constexpr int kDefaultMaxDegree = 8;

/// Cap on the degree n, read from PERMUFRAME_MAX_N when set.
inline int max_degree(int fallback = kDefaultMaxDegree) {
  if (const char* env = std::getenv("PERMUFRAME_MAX_N")) {
    int value = 0;
    std::string_view text{env};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
    throw ValidationError(fmt::format("PERMUFRAME_MAX_N is not a positive integer: '{}'", env));
  }
  return fallback;
}

/// Splits "a,b,c" into integers; surrounding spaces are ignored.
inline std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view field = text.substr(pos, next - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw ValidationError(fmt::format("malformed {} '{}'", what, text));
    values.push_back(value);
    pos = next + 1;
  }
  return values;
}

inline std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

/// Element of S_n in one-line notation: position k (1-based) holds the image of k.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 1 || v > size() || seen[v - 1])
        throw ValidationError(fmt::format("not a permutation of 1..{}: {}", size(),
                                          fmt::join(images_, ",")));
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
  }

  static Permutation transposition(int n, int a, int b) { return from_cycles(n, {{a, b}}); }

  /// Product of disjoint or overlapping cycles, applied right to left.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Permutation result = identity(n);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      const auto& cycle = *it;
      std::vector<int> images(n);
      std::iota(images.begin(), images.end(), 1);
      std::vector<bool> used(n + 1, false);
      for (std::size_t j = 0; j < cycle.size(); ++j) {
        int from = cycle[j];
        int to = cycle[(j + 1) % cycle.size()];
        if (from < 1 || from > n)
          throw ValidationError(fmt::format("cycle entry {} outside 1..{}", from, n));
        if (used[from]) throw ValidationError(fmt::format("repeated entry {} in cycle", from));
        used[from] = true;
        images[from - 1] = to;
      }
      result = Permutation(std::move(images)) * result;
    }
    return result;
  }

  /// Parses comma-separated one-line notation such as "2,1,3".
  static Permutation parse(std::string_view text) {
    return Permutation(parse_int_list(text, "permutation"));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[k - 1]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const {
    for (int k = 0; k < size(); ++k)
      if (images_[k] != k + 1) return false;
    return true;
  }

  int inversions() const {
    int count = 0;
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (images_[a] > images_[b]) ++count;
    return count;
  }

  int sign() const { return inversions() % 2 == 0 ? 1 : -1; }

  std::string to_string() const { return fmt::format("{}", fmt::join(images_, ",")); }

  /// (p * q)(k) = p(q(k)): q acts first.
  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size())
      throw ValidationError(
          fmt::format("cannot compose permutations of sizes {} and {}", p.size(), q.size()));
    std::vector<int> images(p.size());
    for (int k = 1; k <= p.size(); ++k) images[k - 1] = p(q(k));
    return Permutation(std::move(images));
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

inline Permutation inverse(const Permutation& p) {
  std::vector<int> images(p.size());
  for (int k = 1; k <= p.size(); ++k) images[p(k) - 1] = k;
  return Permutation(std::move(images));
}

/// Reduced word for p in the adjacent transpositions s_k = (k, k+1).
///
/// Returns [k_1, ..., k_m] with p = s_{k_1} * s_{k_2} * ... * s_{k_m} and
/// m equal to the inversion number of p. Obtained by bubble-sorting the
/// one-line word: swapping positions j, j+1 is right multiplication by s_j.
inline std::vector<int> adjacent_factorization(const Permutation& p) {
  std::vector<int> word(p.images().begin(), p.images().end());
  std::vector<int> swaps;
  const int n = p.size();
  for (int pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        swaps.push_back(j + 1);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

enum class OrderingId { lex, paper_s3, custom };

/// Bijection between S_n and {0, ..., n!-1}; the vertex order of every
/// vector on S_n.
class GroupOrdering {
 public:
  static GroupOrdering lex(int n, int max_n = max_degree()) {
    check_degree(n, max_n);
    std::vector<Permutation> elements;
    elements.reserve(factorial(n));
    std::vector<int> word(n);
    std::iota(word.begin(), word.end(), 1);
    do {
      elements.emplace_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return GroupOrdering(OrderingId::lex, std::move(elements));
  }

  /// id, (12), (23), (13), (123), (132).
  static GroupOrdering paper_s3() {
    std::vector<Permutation> elements{
        Permutation::identity(3),
        Permutation::from_cycles(3, {{1, 2}}),
        Permutation::from_cycles(3, {{2, 3}}),
        Permutation::from_cycles(3, {{1, 3}}),
        Permutation::from_cycles(3, {{1, 2, 3}}),
        Permutation::from_cycles(3, {{1, 3, 2}}),
    };
    return GroupOrdering(OrderingId::paper_s3, std::move(elements));
  }

  /// Any listing of all of S_n, each element exactly once.
  static GroupOrdering custom(std::vector<Permutation> elements, int max_n = max_degree()) {
    if (elements.empty()) throw ValidationError("custom ordering is empty");
    const int n = elements.front().size();
    check_degree(n, max_n);
    if (elements.size() != factorial(n))
      throw ValidationError(fmt::format("custom ordering lists {} elements, S_{} has {}",
                                        elements.size(), n, factorial(n)));
    for (const auto& p : elements)
      if (p.size() != n) throw ValidationError("custom ordering mixes permutation sizes");
    return GroupOrdering(OrderingId::custom, std::move(elements));
  }

  /// "lex" or "paper_s3" (custom orderings need an explicit element list).
  static GroupOrdering from_name(std::string_view name, int n, int max_n = max_degree()) {
    if (name == "lex") return lex(n, max_n);
    if (name == "paper_s3") {
      if (n != 3) throw ValidationError("ordering paper_s3 is only defined for n = 3");
      return paper_s3();
    }
    throw ValidationError(fmt::format("unknown ordering '{}'", name));
  }

  OrderingId id() const { return id_; }

  std::string name() const {
    switch (id_) {
      case OrderingId::lex: return "lex";
      case OrderingId::paper_s3: return "paper_s3";
      case OrderingId::custom: return "custom";
    }
    return "custom";
  }

  int degree() const { return elements_.front().size(); }
  std::size_t size() const { return elements_.size(); }
  const Permutation& operator[](std::size_t index) const { return elements_[index]; }
  const std::vector<Permutation>& elements() const { return elements_; }

  std::size_t index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end())
      throw ValidationError(fmt::format("permutation {} is not in S_{}", p.to_string(), degree()));
    return it->second;
  }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  GroupOrdering(OrderingId id, std::vector<Permutation> elements)
      : id_(id), elements_(std::move(elements)) {
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (!index_.emplace(elements_[i], i).second)
        throw ValidationError(
            fmt::format("ordering lists {} twice", elements_[i].to_string()));
  }

  static void check_degree(int n, int max_n) {
    if (n < 1) throw ValidationError(fmt::format("degree must be positive, got {}", n));
    if (n > max_n)
      throw ValidationError(fmt::format(
          "n = {} exceeds the factorial cap {} (set PERMUFRAME_MAX_N to raise it)", n, max_n));
  }

  OrderingId id_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

/// All n! elements of S_n listed in the named ordering ("lex" or "paper_s3").
inline std::vector<Permutation> enumerate(int n, std::string_view ordering = "lex",
                                          int max_n = max_degree()) {
  return GroupOrdering::from_name(ordering, n, max_n).elements();
}

}  // namespace permuframe
