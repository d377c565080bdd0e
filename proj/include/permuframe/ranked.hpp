#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "permuframe/csv.hpp"
#include "permuframe/error.hpp"
#include "permuframe/frames.hpp"
#include "permuframe/permutation.hpp"

namespace permuframe {

/// Ballot multiplicities over S_n. The ranking "a1,...,an" puts candidate
/// a_k at rank k.
struct RankedDataset {
  int n = 0;
  std::map<Permutation, double> counts;
  std::vector<std::string> labels;  // optional candidate names, labels[c-1] names candidate c
};

struct RankingParse {
  RankedDataset dataset;
  std::vector<std::string> warnings;
};

/// Reads "ranking,count" rows. The header row and blank lines are skipped;
/// "# candidates: A,B,C" names the candidates. Duplicate rankings are
/// summed and reported as warnings.
inline RankingParse parse_rankings(std::istream& in, int n) {
  RankingParse result;
  result.dataset.n = n;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.starts_with("#")) {
      constexpr std::string_view tag = "# candidates:";
      if (line.starts_with(tag)) {
        for (auto& name : csv::split_line(std::string_view(line).substr(tag.size()))) {
          const auto first = name.find_first_not_of(' ');
          const auto last = name.find_last_not_of(' ');
          result.dataset.labels.push_back(first == std::string::npos ? std::string{}
                                                                     : name.substr(first, last - first + 1));
        }
      }
      continue;
    }
    auto fields = csv::split_line(line);
    if (fields.front() == "ranking") continue;
    if (fields.size() < 2)
      throw ValidationError(fmt::format("line {}: expected 'ranking,count', got '{}'", line_no, line));

    std::string ranking = fields.front();
    if (fields.size() > 2) {
      ranking.clear();
      for (std::size_t f = 0; f + 1 < fields.size(); ++f) ranking += (f ? "," : "") + fields[f];
    }
    const std::string& count_text = fields.back();
    char* end = nullptr;
    const double count = std::strtod(count_text.c_str(), &end);
    if (count_text.empty() || end != count_text.c_str() + count_text.size() || !std::isfinite(count) ||
        count < 0.0)
      throw ValidationError(
          fmt::format("line {}: count '{}' is not a non-negative number", line_no, count_text));

    Permutation p;
    try {
      p = Permutation::parse(ranking);
    } catch (const ValidationError&) {
      throw ValidationError(
          fmt::format("line {}: ranking '{}' is not a permutation of 1..{}", line_no, ranking, n));
    }
    if (p.size() != n)
      throw ValidationError(
          fmt::format("line {}: ranking '{}' is not a permutation of 1..{}", line_no, ranking, n));

    auto [it, inserted] = result.dataset.counts.emplace(p, count);
    if (!inserted) {
      it->second += count;
      result.warnings.push_back(
          fmt::format("line {}: duplicate ranking {} summed", line_no, p.to_string()));
    }
  }
  if (!result.dataset.labels.empty() && static_cast<int>(result.dataset.labels.size()) != n)
    throw ValidationError(fmt::format("{} candidate names given for n = {}",
                                      result.dataset.labels.size(), n));
  return result;
}

/// Counts placed by ordering index; unlisted permutations are 0.
inline Eigen::VectorXd to_signal(const RankedDataset& data, const GroupOrdering& ordering) {
  if (data.n != ordering.degree())
    throw ValidationError(fmt::format("dataset has n = {}, ordering has n = {}", data.n,
                                      ordering.degree()));
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ordering.size()));
  for (const auto& [p, count] : data.counts) f(static_cast<Eigen::Index>(ordering.index_of(p))) = count;
  return f;
}

struct Ingested {
  Eigen::VectorXd signal;
  std::vector<std::string> warnings;
};

inline Ingested ingest_rankings(const std::string& path, int n, const GroupOrdering& ordering) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open ranking file '{}'", path));
  auto parsed = parse_rankings(in, n);
  return {to_signal(parsed.dataset, ordering), std::move(parsed.warnings)};
}

/// "ranking,count" CSV of the nonzero entries, in ordering order.
inline std::string export_rankings(const Eigen::VectorXd& signal, const GroupOrdering& ordering) {
  if (static_cast<std::size_t>(signal.size()) != ordering.size())
    throw ValidationError("signal length does not match the ordering");
  std::string out = "ranking,count\n";
  for (std::size_t g = 0; g < ordering.size(); ++g) {
    const double v = signal(static_cast<Eigen::Index>(g));
    if (v != 0.0) out += fmt::format("{},{}\n", csv::quote(ordering[g].to_string()), csv::number(v));
  }
  return out;
}

struct CoefficientGroup {
  Partition shape;
  double eigenvalue = 0.0;
  double energy = 0.0;
  std::vector<std::size_t> atoms;
};

struct CoefficientReport {
  std::vector<FrameCoefficient> coefficients;
  std::vector<CoefficientGroup> groups;
  double signal_energy = 0.0;  // ||f||^2
  double total_energy = 0.0;   // sum of group energies
  bool parseval = false;
};

/// Frame coefficients of f grouped by (partition, lambda), with energies.
inline CoefficientReport coefficient_report(const Frame& frame, const Eigen::VectorXd& f,
                                            double group_tol = 1e-8) {
  CoefficientReport report;
  report.coefficients = analysis(frame, f);
  report.signal_energy = f.squaredNorm();
  for (const auto& c : report.coefficients) {
    auto it = std::find_if(report.groups.begin(), report.groups.end(), [&](const CoefficientGroup& g) {
      return g.shape == c.shape && std::abs(g.eigenvalue - c.eigenvalue) <= group_tol;
    });
    if (it == report.groups.end()) {
      report.groups.push_back({c.shape, c.eigenvalue, 0.0, {}});
      it = std::prev(report.groups.end());
    }
    it->energy += c.value * c.value;
    it->atoms.push_back(c.index);
  }
  // Shapes keep frame order; eigenvalues ascend within a shape.
  std::stable_sort(report.groups.begin(), report.groups.end(),
                   [&](const CoefficientGroup& a, const CoefficientGroup& b) {
                     if (a.shape != b.shape) return a.atoms.front() < b.atoms.front();
                     return a.eigenvalue < b.eigenvalue;
                   });
  for (const auto& g : report.groups) report.total_energy += g.energy;
  const FrameBounds bounds = frame.bounds ? *frame.bounds : frame_bounds(frame);
  report.parseval = std::abs(bounds.lower - 1.0) < 1e-10 && std::abs(bounds.upper - 1.0) < 1e-10;
  return report;
}

/// Coefficient rows "partition,lambda,i,atom,coefficient", a blank line,
/// then the energy summary "partition,lambda,energy" closed by a total row.
inline void write_report_csv(std::ostream& out, const CoefficientReport& report) {
  out << "partition,lambda,i,atom,coefficient\n";
  for (const auto& c : report.coefficients)
    out << csv::quote(c.shape.to_string()) << ',' << csv::number(c.eigenvalue) << ',' << c.i << ','
        << c.index << ',' << csv::number(c.value) << '\n';
  out << "\npartition,lambda,energy\n";
  for (const auto& g : report.groups)
    out << csv::quote(g.shape.to_string()) << ',' << csv::number(g.eigenvalue) << ','
        << csv::number(g.energy) << '\n';
  out << "total,," << csv::number(report.total_energy) << '\n';
  out << "signal_norm_squared,," << csv::number(report.signal_energy) << '\n';
}

}  // namespace permuframe
