#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "json.hpp"
#include "permuframe/cayley.hpp"
#include "permuframe/csv.hpp"
#include "permuframe/error.hpp"
#include "permuframe/frames.hpp"
#include "permuframe/irreps.hpp"
#include "permuframe/permutation.hpp"

namespace permuframe {

inline constexpr const char* kFrameFormat = "permuframe.frame/1";

/// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError(fmt::format("cannot write '{}'", tmp.string()));
    out << content;
    out.flush();
    if (!out) throw ValidationError(fmt::format("write to '{}' failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError(fmt::format("cannot rename onto '{}': {}", path.string(), ec.message()));
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json ordering_to_json(const GroupOrdering& ordering) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& p : ordering) elements.push_back(p.to_string());
  return {{"id", ordering.name()}, {"elements", std::move(elements)}};
}

inline GroupOrdering ordering_from_json(const nlohmann::json& doc, int max_n = max_degree()) {
  std::vector<Permutation> elements;
  for (const auto& label : doc.at("elements")) elements.push_back(Permutation::parse(label.get<std::string>()));
  if (elements.empty()) throw ValidationError("ordering has no elements");
  const std::string id = doc.at("id").get<std::string>();
  const int n = elements.front().size();
  if (id == "lex" || id == "paper_s3") {
    auto named = GroupOrdering::from_name(id, n, max_n);
    if (named.elements() == elements) return named;
  }
  return GroupOrdering::custom(std::move(elements), max_n);
}

/// Ordering from the CLI: "lex", "paper_s3" or "custom:FILE" (one permutation per line).
inline GroupOrdering resolve_ordering(std::string_view spec, int n, int max_n = max_degree()) {
  if (spec.starts_with("custom:")) {
    std::istringstream in(read_file(std::string(spec.substr(7))));
    std::vector<Permutation> elements;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos || line.starts_with("#")) continue;
      elements.push_back(Permutation::parse(line));
    }
    auto ordering = GroupOrdering::custom(std::move(elements), max_n);
    if (ordering.degree() != n)
      throw ValidationError(fmt::format("custom ordering is over S_{}, expected S_{}", ordering.degree(), n));
    return ordering;
  }
  return GroupOrdering::from_name(spec, n, max_n);
}

/// {shape, dimension, ordering, source, matrices: {"2,1,3": [row-major entries]}}.
inline nlohmann::json irrep_table_to_json(const IrrepTable& table) {
  nlohmann::json matrices = nlohmann::json::object();
  for (std::size_t g = 0; g < table.group_size(); ++g) {
    const auto& m = table[g];
    std::vector<double> row_major;
    row_major.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) row_major.push_back(m(r, c));
    matrices[table.ordering()[g].to_string()] = std::move(row_major);
  }
  return {{"shape", table.shape().to_string()},
          {"dimension", table.dim()},
          {"ordering", table.ordering().name()},
          {"source", to_string(table.source())},
          {"matrices", std::move(matrices)}};
}

namespace detail {
inline nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}
inline Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}
}  // namespace detail

inline nlohmann::json frame_to_json(const Frame& frame) {
  nlohmann::json genset_elements = nlohmann::json::array();
  for (const auto& a : frame.genset.elements()) genset_elements.push_back(a.to_string());

  std::vector<std::string> labels;
  for (const auto& p : *frame.ordering) labels.push_back(p.to_string());

  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : frame.atoms) {
    nlohmann::json signal = nlohmann::json::array();
    for (std::size_t g = 0; g < labels.size(); ++g)
      signal.push_back(nlohmann::json::array({labels[g], atom.signal(static_cast<Eigen::Index>(g))}));
    atoms.push_back({{"shape", atom.shape.to_string()},
                     {"i", atom.i},
                     {"lambda", atom.eigenvalue},
                     {"coeff_X", detail::vector_to_json(atom.coeff)},
                     {"scale", atom.scale},
                     {"signal", std::move(signal)}});
  }

  nlohmann::json doc = {
      {"format", kFrameFormat},
      {"n", frame.degree()},
      {"ordering", ordering_to_json(*frame.ordering)},
      {"genset", {{"spec", frame.genset.spec()}, {"elements", std::move(genset_elements)}}},
      {"policy", frame.policy_id},
      {"source", to_string(frame.options.source)},
      {"tolerances",
       {{"eigen_tol", frame.options.spectral.eigen_tol},
        {"group_tol", frame.options.spectral.group_tol},
        {"residual_tol", frame.options.spectral.residual_tol}}},
  };
  if (frame.bounds)
    doc["bounds"] = {{"lower", frame.bounds->lower},
                     {"upper", frame.bounds->upper},
                     {"condition", frame.bounds->condition}};
  doc["atoms"] = std::move(atoms);
  return doc;
}

/// Rebuilds a frame from JSON. Irrep tables and eigenspaces are recomputed
/// from (n, ordering, source, genset); atoms are taken as stored, so a
/// tampered file still loads and fails the compatibility audit instead.
inline Frame frame_from_json(const nlohmann::json& doc, int max_n = max_degree()) {
  try {
    if (doc.value("format", std::string{}) != kFrameFormat)
      throw ValidationError(fmt::format("not a {} document", kFrameFormat));
    const int n = doc.at("n").get<int>();
    auto ordering = std::make_shared<const GroupOrdering>(ordering_from_json(doc.at("ordering"), max_n));
    if (ordering->degree() != n) throw ValidationError("ordering does not match n");

    FrameOptions options;
    options.source = parse_irrep_source(doc.at("source").get<std::string>());
    const auto& tol = doc.at("tolerances");
    options.spectral.eigen_tol = tol.at("eigen_tol").get<double>();
    options.spectral.group_tol = tol.at("group_tol").get<double>();
    options.spectral.residual_tol = tol.value("residual_tol", options.spectral.residual_tol);

    const auto& gs = doc.at("genset");
    const std::string spec = gs.at("spec").get<std::string>();
    std::vector<Permutation> elements;
    for (const auto& e : gs.at("elements")) elements.push_back(Permutation::parse(e.get<std::string>()));
    const GensetPreset preset = spec == "adjacent"             ? GensetPreset::adjacent
                                : spec == "all_transpositions" ? GensetPreset::all_transpositions
                                                               : GensetPreset::custom;
    GeneratingSet genset(n, std::move(elements), preset, spec);

    auto tables = std::make_shared<const std::vector<IrrepTable>>(
        build_all_irrep_tables(ordering, options.source));
    Frame frame{ordering, tables, genset, doc.at("policy").get<std::string>(), options, {}, {},
                std::nullopt};

    for (const auto& a : doc.at("atoms")) {
      FrameAtom atom;
      atom.shape = Partition::parse(a.at("shape").get<std::string>());
      atom.i = a.at("i").get<int>();
      atom.eigenvalue = a.at("lambda").get<double>();
      atom.coeff = detail::vector_from_json(a.at("coeff_X"));
      atom.scale = a.at("scale").get<double>();
      atom.signal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ordering->size()));
      std::vector<bool> seen(ordering->size(), false);
      for (const auto& entry : a.at("signal")) {
        const std::size_t g = ordering->index_of(Permutation::parse(entry.at(0).get<std::string>()));
        if (seen[g]) throw ValidationError("atom signal lists a permutation twice");
        seen[g] = true;
        atom.signal(static_cast<Eigen::Index>(g)) = entry.at(1).get<double>();
      }
      frame.table(atom.shape);  // rejects shapes that do not partition n
      frame.atoms.push_back(std::move(atom));
    }

    std::map<Partition, IrrepSpectrum> spectra;
    for (const auto& table : *tables) spectra.emplace(table.shape(), irrep_spectrum(table, genset, options.spectral));
    for (std::size_t a = 0; a < frame.atoms.size(); ++a) {
      const auto& atom = frame.atoms[a];
      auto& blocks = frame.blocks;
      if (!blocks.empty() && blocks.back().shape == atom.shape && blocks.back().i == atom.i &&
          blocks.back().eigenvalue == atom.eigenvalue) {
        ++blocks.back().atom_count;
        continue;
      }
      FrameBlock block{atom.shape, atom.i, atom.eigenvalue, Eigen::MatrixXd(0, 0), a, 1};
      for (const auto& space : spectra.at(atom.shape).spaces)
        if (std::abs(space.eigenvalue - atom.eigenvalue) < 1e-6) block.eigenbasis = space.basis;
      blocks.push_back(std::move(block));
    }

    if (doc.contains("bounds"))
      frame.bounds = FrameBounds{doc["bounds"].at("lower").get<double>(),
                                 doc["bounds"].at("upper").get<double>(),
                                 doc["bounds"].at("condition").get<double>()};
    return frame;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed frame JSON: {}", e.what()));
  }
}

inline void save_frame(const std::filesystem::path& path, const Frame& frame) {
  write_file_atomic(path, frame_to_json(frame).dump(1) + "\n");
}

inline Frame load_frame(const std::filesystem::path& path, int max_n = max_degree()) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("'{}' is not JSON: {}", path.string(), e.what()));
  }
  return frame_from_json(doc, max_n);
}

/// "perm_a,perm_b" rows, permutations quoted.
inline std::string edges_to_csv(const std::vector<Edge>& edges, const GroupOrdering& ordering) {
  std::string out = "perm_a,perm_b\n";
  for (const auto& e : edges)
    out += fmt::format("{},{}\n", csv::quote(ordering[e.a].to_string()),
                       csv::quote(ordering[e.b].to_string()));
  return out;
}

}  // namespace permuframe
