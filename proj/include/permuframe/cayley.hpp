#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "permuframe/error.hpp"
#include "permuframe/irreps.hpp"
#include "permuframe/permutation.hpp"

namespace permuframe {

enum class GensetPreset { adjacent, all_transpositions, custom };

/// Inverse-closed subset S of S_n without the identity.
class GeneratingSet {
 public:
  GeneratingSet(int n, std::vector<Permutation> elements, GensetPreset preset, std::string spec)
      : n_(n), elements_(std::move(elements)), preset_(preset), spec_(std::move(spec)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (const auto& a : elements_) {
      if (a.size() != n_)
        throw ValidationError(fmt::format("generator {} is not in S_{}", a.to_string(), n_));
      if (a.is_identity()) throw ValidationError("generating set contains the identity");
      if (!contains(inverse(a)))
        throw ValidationError(fmt::format(
            "generating set is not inverse-closed: {} is present but its inverse {} is not",
            a.to_string(), inverse(a).to_string()));
    }
  }

  int n() const { return n_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  GensetPreset preset() const { return preset_; }
  const std::string& spec() const { return spec_; }

  bool contains(const Permutation& p) const {
    return std::binary_search(elements_.begin(), elements_.end(), p);
  }

 private:
  int n_;
  std::vector<Permutation> elements_;
  GensetPreset preset_;
  std::string spec_;
};

namespace detail {

// "(1 2 3)", "(1,2,3)" or "(123)"; compact digits need n <= 9.
inline std::vector<int> parse_cycle_body(std::string_view body) {
  std::vector<int> cycle;
  const bool separated = body.find_first_of(" ,") != std::string_view::npos;
  if (!separated) {
    for (char ch : body) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ValidationError(fmt::format("malformed cycle '({})'", body));
      cycle.push_back(ch - '0');
    }
    return cycle;
  }
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    for (char ch : token)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ValidationError(fmt::format("malformed cycle '({})'", body));
    cycle.push_back(std::stoi(token));
    token.clear();
  };
  for (char ch : body) {
    if (ch == ' ' || ch == ',') flush();
    else token.push_back(ch);
  }
  flush();
  return cycle;
}

}  // namespace detail

/// Builds S from "adjacent", "all_transpositions" or a list of cycle
/// literals such as "custom:(1 2),(1 3 2),(1 2 3)" or "[(1 2 3)]".
/// Juxtaposed cycles "(1 2)(3 4)" form a single element. Custom sets that are
/// not inverse-closed are rejected unless `close_inverses` adds the inverses.
inline GeneratingSet parse_genset(int n, std::string_view spec, bool close_inverses = false) {
  if (n < 1) throw ValidationError("generating set needs n >= 1");
  if (spec == "adjacent") {
    std::vector<Permutation> s;
    for (int k = 1; k < n; ++k) s.push_back(Permutation::transposition(n, k, k + 1));
    return {n, std::move(s), GensetPreset::adjacent, "adjacent"};
  }
  if (spec == "all_transpositions") {
    std::vector<Permutation> s;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) s.push_back(Permutation::transposition(n, a, b));
    return {n, std::move(s), GensetPreset::all_transpositions, "all_transpositions"};
  }

  std::string_view body = spec;
  if (body.starts_with("custom:")) body.remove_prefix(7);
  while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  while (!body.empty() && body.back() == ' ') body.remove_suffix(1);
  if (body.starts_with("[") && body.ends_with("]")) body = body.substr(1, body.size() - 2);
  if (body.empty() || body.front() != '(')
    throw ValidationError(fmt::format(
        "unknown generating set '{}' (expected adjacent, all_transpositions or custom:(a b),...)",
        spec));

  std::vector<Permutation> elements;
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  auto finish = [&] {
    if (cycles.empty()) throw ValidationError(fmt::format("empty element in '{}'", spec));
    elements.push_back(Permutation::from_cycles(n, cycles));
    cycles.clear();
  };
  while (pos < body.size()) {
    const char ch = body[pos];
    if (ch == '(') {
      const auto close = body.find(')', pos);
      if (close == std::string_view::npos)
        throw ValidationError(fmt::format("unbalanced parenthesis in '{}'", spec));
      cycles.push_back(detail::parse_cycle_body(body.substr(pos + 1, close - pos - 1)));
      pos = close + 1;
    } else if (ch == ',') {
      finish();
      ++pos;
    } else if (ch == ' ') {
      ++pos;
    } else {
      throw ValidationError(fmt::format("unexpected '{}' in generating set '{}'", ch, spec));
    }
  }
  finish();

  if (close_inverses) {
    const auto count = elements.size();
    for (std::size_t e = 0; e < count; ++e) elements.push_back(inverse(elements[e]));
  }
  return {n, std::move(elements), GensetPreset::custom, std::string(spec)};
}

/// pi(S) = sum over a in S of pi(a); symmetric because S is inverse-closed.
inline Eigen::MatrixXd pi_of_S(const IrrepTable& table, const GeneratingSet& gens) {
  if (gens.n() != table.ordering().degree())
    throw ValidationError(fmt::format("generating set over S_{} used with an irrep of S_{}",
                                      gens.n(), table.ordering().degree()));
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(table.dim(), table.dim());
  for (const auto& a : gens.elements()) sum += table.at(a);
  return sum;
}

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  bool operator==(const Edge&) const = default;
};

/// Undirected edges {x, y} with x^{-1} y in S, as ordering indices a < b.
inline std::vector<Edge> cayley_edges(const GeneratingSet& gens, const GroupOrdering& ordering) {
  if (gens.n() != ordering.degree())
    throw ValidationError("generating set and ordering disagree on n");
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < ordering.size(); ++a) {
    for (const auto& s : gens.elements()) {
      const std::size_t b = ordering.index_of(ordering[a] * s);
      if (a < b) edges.push_back({a, b});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return edges;
}

}  // namespace permuframe
