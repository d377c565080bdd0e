// permuframe: build and apply Frobenius-Schur frames on S_n that are
// compatible with a generating set of its Cayley graph.
//
// Exit codes: 0 success, 1 validation error, 2 invariant failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "permuframe/permuframe.hpp"

namespace pf = permuframe;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;

// Frames hold n! vectors of length n!; above 6 the caller must opt in.
constexpr int kCliDefaultMaxDegree = 6;

struct RunConfig {
  int n = 3;
  std::string genset = "adjacent";
  std::string ordering = "lex";
  std::string policy = "onb";
  std::string source = "yor";
  double eigen_tol = 1e-12;
  double group_tol = 1e-8;
  bool close_inverses = false;
  std::string out;
  std::string frame_path;
  std::string signal_path;
};

void validate(const RunConfig& cfg, int min_n) {
  if (cfg.n < min_n) throw pf::ValidationError(fmt::format("--n must be at least {}", min_n));
  if (!(cfg.eigen_tol > 0) || !(cfg.group_tol > 0))
    throw pf::ValidationError("tolerances must be positive");
  if (cfg.source == "fixture" && cfg.n != 3)
    throw pf::ValidationError("--source fixture is only available for n = 3");
}

pf::FrameOptions frame_options(const RunConfig& cfg) {
  pf::FrameOptions options;
  options.source = pf::parse_irrep_source(cfg.source);
  options.spectral.eigen_tol = cfg.eigen_tol;
  options.spectral.group_tol = cfg.group_tol;
  return options;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    pf::write_file_atomic(path, content);
}

// One machine-readable line per check.
class CheckLog {
 public:
  void record(const std::string& name, double measured, double tol) {
    const bool ok = measured < tol;
    failed_ = failed_ || !ok;
    fmt::print("{},{},{:.3e},{:.0e}\n", name, ok ? "PASS" : "FAIL", measured, tol);
  }
  void record_bool(const std::string& name, bool ok, const std::string& detail) {
    failed_ = failed_ || !ok;
    fmt::print("{},{},{},\n", name, ok ? "PASS" : "FAIL", detail);
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

int cmd_irreps(const RunConfig& cfg) {
  validate(cfg, 1);
  const int max_n = pf::max_degree();
  if (cfg.n > max_n)
    throw pf::ValidationError(fmt::format("n = {} exceeds the cap of {} (set PERMUFRAME_MAX_N)", cfg.n, max_n));
  std::size_t sum = 0;
  fmt::print("partition,dimension\n");
  nlohmann::json irreps = nlohmann::json::array();
  std::shared_ptr<const pf::GroupOrdering> ordering;
  if (!cfg.out.empty())
    ordering = std::make_shared<const pf::GroupOrdering>(pf::resolve_ordering(cfg.ordering, cfg.n, max_n));
  for (const auto& shape : pf::partitions_of(cfg.n)) {
    const std::size_t d = pf::dimension(shape);
    if (d != pf::standard_tableaux(shape).size())
      throw pf::InvariantError(fmt::format("hook length and tableau count disagree for {}", shape.to_string()));
    sum += d * d;
    fmt::print("{},{}\n", pf::csv::quote(shape.to_string()), d);
    if (ordering)
      irreps.push_back(pf::irrep_table_to_json(
          pf::build_irrep_table(shape, ordering, pf::parse_irrep_source(cfg.source))));
  }
  const std::size_t order = pf::factorial(cfg.n);
  fmt::print("sum_of_squares,{}\nn_factorial,{}\n", sum, order);
  if (ordering) {
    nlohmann::json doc = {{"n", cfg.n},
                          {"ordering", pf::ordering_to_json(*ordering)},
                          {"source", cfg.source},
                          {"sum_of_squares", sum},
                          {"irreps", std::move(irreps)}};
    pf::write_file_atomic(cfg.out, doc.dump(1) + "\n");
  }
  if (sum != order) throw pf::InvariantError("sum of squared dimensions differs from n!");
  return 0;
}

// Builds the frame and checks it; returns true if every check passed.
bool check_frame(const pf::Frame& frame, CheckLog& log) {
  const auto audit = pf::audit_compatibility(frame);
  log.record("compatibility_lift_residual", audit.max_lift_residual, 1e-10);
  log.record("compatibility_eigen_residual", audit.max_eigen_residual, 1e-9);

  const auto recovery = pf::recover_partition(frame);
  log.record("closure_partition_leakage", recovery.max_leakage, 1e-10);
  log.record("closure_roundtrip_residual", recovery.max_roundtrip, 1e-10);
  log.record("closure_metadata_mismatch", recovery.max_metadata_mismatch, 1e-9);

  try {
    const auto bounds = pf::frame_bounds(frame);
    log.record_bool("frame_bounds", true,
                    fmt::format("A={:.17g} B={:.17g} condition={:.17g}", bounds.lower, bounds.upper,
                                bounds.condition));
    if (frame.policy_id == "onb") {
      log.record("parseval_lower_bound", std::abs(bounds.lower - 1.0), 1e-10);
      log.record("parseval_upper_bound", std::abs(bounds.upper - 1.0), 1e-10);
      if (frame.dimension() <= pf::kDenseBoundsLimit) {
        const Eigen::MatrixXd s = pf::frame_operator(frame);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(s.rows(), s.cols());
        log.record("parseval_operator", (s - id).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  } catch (const pf::InvariantError& e) {
    log.record_bool("frame_bounds", false, e.what());
  }
  return !log.failed();
}

int cmd_frame(const RunConfig& cfg) {
  validate(cfg, 2);
  const int max_n = pf::max_degree(kCliDefaultMaxDegree);
  auto ordering = std::make_shared<const pf::GroupOrdering>(pf::resolve_ordering(cfg.ordering, cfg.n, max_n));
  const auto gens = pf::parse_genset(cfg.n, cfg.genset, cfg.close_inverses);
  const auto policy = pf::EigenspaceFramePolicy::parse(cfg.policy);
  fmt::print(stderr, "building frame: n={} genset={} policy={} source={} eigen_tol={:g} group_tol={:g}\n",
             cfg.n, gens.spec(), policy.id(), cfg.source, cfg.eigen_tol, cfg.group_tol);

  auto frame = pf::build_compatible_frame(ordering, gens, policy, frame_options(cfg));
  fmt::print("atoms,{}\n", frame.atoms.size());
  CheckLog log;
  if (!check_frame(frame, log)) return kExitInvariant;
  frame.bounds = pf::frame_bounds(frame);
  if (!cfg.out.empty()) pf::save_frame(cfg.out, frame);
  return 0;
}

int cmd_analyze(const RunConfig& cfg) {
  if (cfg.frame_path.empty() || cfg.signal_path.empty())
    throw pf::ValidationError("analyze needs --frame and --signal");
  const auto frame = pf::load_frame(cfg.frame_path, pf::max_degree(kCliDefaultMaxDegree));
  if (cfg.n != 0 && cfg.n != frame.degree())
    throw pf::ValidationError(fmt::format("--n {} does not match the frame (n = {})", cfg.n, frame.degree()));
  const auto ingested = pf::ingest_rankings(cfg.signal_path, frame.degree(), *frame.ordering);
  for (const auto& w : ingested.warnings) fmt::print(stderr, "warning: {}\n", w);

  const auto report = pf::coefficient_report(frame, ingested.signal, frame.options.spectral.group_tol);
  std::ostringstream csv;
  pf::write_report_csv(csv, report);
  emit(cfg.out, csv.str());
  if (!cfg.out.empty()) {
    for (const auto& g : report.groups)
      fmt::print("({}) lambda={:.6g} energy={:.17g}\n", g.shape.to_string(), g.eigenvalue, g.energy);
    fmt::print("total_energy={:.17g} signal_norm_squared={:.17g}\n", report.total_energy,
               report.signal_energy);
  }
  return 0;
}

int verify_frame_file(const RunConfig& cfg) {
  const auto frame = pf::load_frame(cfg.frame_path, pf::max_degree(kCliDefaultMaxDegree));
  fmt::print("check,status,measured,tolerance\n");
  CheckLog log;
  check_frame(frame, log);
  return log.failed() ? kExitInvariant : 0;
}

int cmd_verify(const RunConfig& cfg) {
  if (!cfg.frame_path.empty()) return verify_frame_file(cfg);
  validate(cfg, 2);
  const int max_n = pf::max_degree(kCliDefaultMaxDegree);
  auto ordering = std::make_shared<const pf::GroupOrdering>(pf::resolve_ordering(cfg.ordering, cfg.n, max_n));
  const auto source = pf::parse_irrep_source(cfg.source);
  const auto gens = pf::parse_genset(cfg.n, cfg.genset, cfg.close_inverses);
  const auto tables = pf::build_all_irrep_tables(ordering, source);
  fmt::print("check,status,measured,tolerance\n");
  CheckLog log;

  // Homomorphism on generators: pi(g s_k) = pi(g) pi(s_k) for every g, k,
  // which together with pi(id) = I determines pi on all of S_n.
  double hom = 0.0;
  double orth = 0.0;
  std::size_t dim_sq = 0;
  for (const auto& table : tables) {
    dim_sq += static_cast<std::size_t>(table.dim() * table.dim());
    const auto d = table.dim();
    hom = std::max(hom, (table.at(pf::Permutation::identity(cfg.n)) - Eigen::MatrixXd::Identity(d, d))
                            .cwiseAbs()
                            .maxCoeff());
    for (std::size_t g = 0; g < table.group_size(); ++g) {
      const auto& m = table[g];
      orth = std::max(orth, (m.transpose() * m - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff());
      for (int k = 1; k < cfg.n; ++k) {
        const auto s = pf::Permutation::transposition(cfg.n, k, k + 1);
        hom = std::max(hom, (table.at((*ordering)[g] * s) - m * table.at(s)).cwiseAbs().maxCoeff());
      }
    }
  }
  log.record_bool("sum_of_squared_dimensions", dim_sq == ordering->size(),
                  fmt::format("{} vs {}", dim_sq, ordering->size()));
  log.record("irrep_orthogonality", orth, 1e-12);
  log.record("irrep_homomorphism", hom, 1e-12);

  const auto schur = pf::verify_schur(pf::fs_basis(tables), 1e-9);
  log.record("schur_gram_offdiag", schur.max_offdiag, cfg.n <= 5 ? 1e-10 : 1e-9);
  log.record("schur_gram_norm", schur.max_norm_error, cfg.n <= 5 ? 1e-10 : 1e-9);

  double sym = 0.0;
  double residual = 0.0;
  double range = 0.0;
  for (const auto& table : tables) {
    const auto spectrum = pf::irrep_spectrum(table, gens);
    sym = std::max(sym, (spectrum.pi_s - spectrum.pi_s.transpose()).cwiseAbs().maxCoeff());
    for (const auto& space : spectrum.spaces) {
      residual = std::max(residual, pf::eigen_residual(spectrum.pi_s, space));
      range = std::max(range, std::abs(space.eigenvalue) - static_cast<double>(gens.size()));
    }
  }
  log.record("pi_S_symmetry", sym, 1e-12);
  log.record("pi_S_eigen_residual", residual, 1e-9);
  log.record_bool("pi_S_spectrum_within_S", range <= 1e-9, fmt::format("{:.3e}", range));

  auto frame = pf::build_compatible_frame(ordering, gens, pf::EigenspaceFramePolicy::parse(cfg.policy),
                                          frame_options(cfg));
  log.record_bool("atom_count", frame.policy_id != "onb" || frame.atoms.size() == ordering->size(),
                  fmt::format("{}", frame.atoms.size()));
  check_frame(frame, log);

  if (frame.policy_id == "onb") {
    const Eigen::MatrixXd psi = frame.synthesis_matrix();
    const Eigen::MatrixXd gram = psi.transpose() * psi;
    double cross = 0.0;
    double norm = 0.0;
    for (Eigen::Index r = 0; r < gram.rows(); ++r) {
      norm = std::max(norm, std::abs(gram(r, r) - 1.0));
      for (Eigen::Index c = 0; c < gram.cols(); ++c)
        if (r != c) cross = std::max(cross, std::abs(gram(r, c)));
    }
    log.record("z_space_orthogonality", cross, 1e-10);
    log.record("lift_isometry", norm, 1e-10);
  }

  if (source == pf::IrrepSource::fixture && cfg.genset == "adjacent") {
    const auto paper = pf::GroupOrdering::paper_s3();
    auto permute = [&](const Eigen::VectorXd& v) {
      Eigen::VectorXd out(v.size());
      for (std::size_t g = 0; g < paper.size(); ++g)
        out(static_cast<Eigen::Index>(g)) = v(static_cast<Eigen::Index>(ordering->index_of(paper[g])));
      return out;
    };
    double coeff_err = 0.0;
    for (const auto& ref : pf::s3_reference::coefficient_functions()) {
      const auto& table = frame.table(pf::Partition::parse(ref.shape));
      coeff_err = std::max(coeff_err,
                           (permute(pf::coefficient_vector(table, ref.k, ref.i).values) - ref.values)
                               .cwiseAbs()
                               .maxCoeff());
    }
    log.record("reference_coefficient_functions", coeff_err, 1e-12);
    double z_err = 0.0;
    for (const auto& ref : pf::s3_reference::z_spaces()) {
      const auto& table = frame.table(pf::Partition::parse(ref.shape));
      z_err = std::max(z_err, (permute(pf::theta(table, ref.i, ref.coeff)) - ref.spanning).cwiseAbs().maxCoeff());
      for (const auto& atom : frame.atoms)
        if (atom.shape == table.shape() && atom.i == ref.i && std::abs(atom.eigenvalue - ref.eigenvalue) < 1e-8)
          z_err = std::max(z_err, pf::s3_reference::collinearity_error(permute(atom.signal), ref.spanning));
    }
    log.record("reference_z_spaces", z_err, 1e-12);
  }
  return log.failed() ? kExitInvariant : 0;
}

int cmd_edges(const RunConfig& cfg) {
  validate(cfg, 1);
  const auto ordering = pf::resolve_ordering(cfg.ordering, cfg.n, pf::max_degree(kCliDefaultMaxDegree));
  const auto gens = pf::parse_genset(cfg.n, cfg.genset, cfg.close_inverses);
  const auto edges = pf::cayley_edges(gens, ordering);
  std::vector<std::size_t> degree(ordering.size(), 0);
  for (const auto& e : edges) {
    ++degree[e.a];
    ++degree[e.b];
  }
  const bool regular = std::all_of(degree.begin(), degree.end(), [&](std::size_t d) { return d == gens.size(); });
  emit(cfg.out, pf::edges_to_csv(edges, ordering));
  fmt::print(stderr, "vertices={} edges={} regular_degree={}\n", ordering.size(), edges.size(),
             regular ? std::to_string(gens.size()) : "no");
  return regular ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius-Schur frames on the symmetric group compatible with a Cayley graph"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--n", cfg.n, "degree of the symmetric group S_n");
    cmd->add_option("--ordering", cfg.ordering, "vertex ordering: lex, paper_s3 or custom:FILE");
    cmd->add_option("--source", cfg.source, "irrep matrices: yor or fixture (n = 3)");
  };
  auto add_spectral = [&cfg](CLI::App* cmd) {
    cmd->add_option("--genset", cfg.genset, "adjacent, all_transpositions or custom:(1 2),(1 3 2),...");
    cmd->add_flag("--close-inverses", cfg.close_inverses, "add missing inverses to a custom generating set");
    cmd->add_option("--policy", cfg.policy, "eigenspace frames: onb, repeat:R or custom:FILE");
    cmd->add_option("--eigen-tol", cfg.eigen_tol, "Jacobi off-diagonal threshold");
    cmd->add_option("--group-tol", cfg.group_tol, "eigenvalue grouping tolerance");
  };

  auto* irreps = app.add_subcommand("irreps", "list partitions and irrep dimensions");
  add_common(irreps);
  irreps->add_option("--out", cfg.out, "write irrep tables as JSON");

  auto* frame = app.add_subcommand("frame", "build a compatible Frobenius-Schur frame");
  add_common(frame);
  add_spectral(frame);
  frame->add_option("--out", cfg.out, "frame JSON path");

  auto* analyze = app.add_subcommand("analyze", "frame coefficients of ranked ballot data");
  analyze->add_option("--frame", cfg.frame_path, "frame JSON from 'frame'")->required();
  analyze->add_option("--signal", cfg.signal_path, "CSV of ranking,count rows")->required();
  analyze->add_option("--n", cfg.n, "expected degree (checked against the frame)");
  analyze->add_option("--out", cfg.out, "report CSV path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "run the invariant suite, or audit a frame file");
  add_common(verify);
  add_spectral(verify);
  verify->add_option("--frame", cfg.frame_path, "audit this frame JSON instead");

  auto* edges = app.add_subcommand("edges", "Cayley graph edge list");
  add_common(edges);
  add_spectral(edges);
  edges->add_option("--out", cfg.out, "edge CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (analyze->parsed() && analyze->count("--n") == 0) cfg.n = 0;

  try {
    if (irreps->parsed()) return cmd_irreps(cfg);
    if (frame->parsed()) return cmd_frame(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (edges->parsed()) return cmd_edges(cfg);
  } catch (const pf::ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const pf::InvariantError& e) {
    fmt::print(stderr, "invariant failure: {}\n", e.what());
    return kExitInvariant;
  }
  return kExitValidation;
}
