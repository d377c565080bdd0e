#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "json.hpp"
#include "permuframe/cayley.hpp"
#include "permuframe/error.hpp"
#include "permuframe/irreps.hpp"
#include "permuframe/jacobi.hpp"
#include "permuframe/permutation.hpp"
#include "permuframe/young.hpp"

namespace permuframe {

// Frames on more than this many vertices get blockwise bounds by default.
inline constexpr std::size_t kDenseBoundsLimit = 120;

// Smallest lower frame bound accepted as a frame.
inline constexpr double kFrameLowerBoundFloor = 1e-10;

/// sqrt(d_pi / n!), the factor that makes the coefficient lift an isometry.
inline double lift_scale(const IrrepTable& table) {
  return std::sqrt(static_cast<double>(table.dim()) / static_cast<double>(table.group_size()));
}

/// Unnormalized lift sum_k x_k pi_{k,i}; entry g is row i of pi(g) times x.
inline Eigen::VectorXd theta(const IrrepTable& table, int i, const Eigen::VectorXd& x) {
  if (i < 1 || i > table.dim())
    throw ValidationError(fmt::format("row index {} outside 1..{}", i, table.dim()));
  if (x.size() != table.dim())
    throw ValidationError(fmt::format("coefficient vector has length {}, irrep dimension is {}",
                                      x.size(), table.dim()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(table.group_size()));
  for (std::size_t g = 0; g < table.group_size(); ++g)
    out(static_cast<Eigen::Index>(g)) = table[g].row(i - 1).dot(x);
  return out;
}

/// Normalized lift of an eigenspace vector into Z_{pi,i,lambda}.
/// Throws if x is not in the eigenspace (the atom would not be compatible).
inline Eigen::VectorXd theta_lift(const IrrepTable& table, int i, const Eigenspace& space,
                                  const Eigen::VectorXd& x, double tol = 1e-10) {
  if (x.size() != space.basis.rows())
    throw ValidationError("coefficient vector and eigenspace have different lengths");
  const Eigen::VectorXd outside = x - space.basis * (space.basis.transpose() * x);
  const double residual = outside.size() ? outside.cwiseAbs().maxCoeff() : 0.0;
  if (residual > tol * std::max(1.0, x.norm()))
    throw ValidationError(fmt::format(
        "vector lies outside the lambda = {} eigenspace of {} (residual {:.3e})",
        space.eigenvalue, table.shape().to_string(), residual));
  return lift_scale(table) * theta(table, i, x);
}

/// Coordinates of f against the orthonormal vectors sqrt(d/n!) pi_{k,i};
/// inverts theta_lift on E_{pi,i}.
inline Eigen::VectorXd theta_inverse(const IrrepTable& table, int i, const Eigen::VectorXd& f) {
  if (static_cast<std::size_t>(f.size()) != table.group_size())
    throw ValidationError("signal length does not match the group order");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(table.dim());
  for (std::size_t g = 0; g < table.group_size(); ++g)
    x += f(static_cast<Eigen::Index>(g)) * table[g].row(i - 1).transpose();
  return lift_scale(table) * x;
}

struct ZSpaceBasis {
  Partition shape;
  int i = 1;
  double eigenvalue = 0.0;
  std::vector<Eigen::VectorXd> atoms;
};

/// Orthonormal basis of Z_{pi,i,lambda}: the lifts of the eigenspace basis.
inline ZSpaceBasis z_space_basis(const IrrepTable& table, int i, const Eigenspace& space) {
  ZSpaceBasis z{table.shape(), i, space.eigenvalue, {}};
  for (Eigen::Index c = 0; c < space.basis.cols(); ++c)
    z.atoms.push_back(theta_lift(table, i, space, space.basis.col(c)));
  return z;
}

/// pi(S) of one irrep and its grouped spectrum.
struct IrrepSpectrum {
  Partition shape;
  Eigen::MatrixXd pi_s;
  std::vector<Eigenspace> spaces;
};

struct SpectralOptions {
  double eigen_tol = 1e-12;
  double group_tol = 1e-8;
  double residual_tol = 1e-9;
};

inline IrrepSpectrum irrep_spectrum(const IrrepTable& table, const GeneratingSet& gens,
                                    const SpectralOptions& opts = {}) {
  IrrepSpectrum spectrum{table.shape(), pi_of_S(table, gens), {}};
  spectrum.spaces = group_eigenspaces(symmetric_eigen(spectrum.pi_s, opts.eigen_tol), opts.group_tol);
  Eigen::Index total = 0;
  for (const auto& space : spectrum.spaces) {
    total += space.multiplicity();
    const double residual = eigen_residual(spectrum.pi_s, space);
    if (residual >= opts.residual_tol)
      throw InvariantError(fmt::format("eigen-residual {:.3e} for lambda = {} of pi(S), shape {}",
                                       residual, space.eigenvalue, table.shape().to_string()));
  }
  if (total != table.dim())
    throw InvariantError("eigenspace dimensions do not add up to the irrep dimension");
  return spectrum;
}

/// How each eigenspace E_lambda(pi(S)) is given a frame before lifting.
class EigenspaceFramePolicy {
 public:
  enum class Kind { onb, repeat, custom };

  /// Explicit frame for one (shape, lambda), optionally one row index i only.
  struct CustomFrame {
    Partition shape;
    double eigenvalue = 0.0;
    std::optional<int> i;
    std::vector<Eigen::VectorXd> vectors;
  };

  static EigenspaceFramePolicy onb() { return EigenspaceFramePolicy(Kind::onb, 1, {}, "onb"); }

  static EigenspaceFramePolicy repeat(int copies) {
    if (copies < 1) throw ValidationError("repeat policy needs at least one copy");
    return EigenspaceFramePolicy(Kind::repeat, copies, {}, fmt::format("repeat:{}", copies));
  }

  static EigenspaceFramePolicy custom(std::vector<CustomFrame> frames, std::string id = "custom") {
    return EigenspaceFramePolicy(Kind::custom, 1, std::move(frames), std::move(id));
  }

  /// {"frames": [{"partition": "2,1", "lambda": 0, "i": 1, "vectors": [[..], ..]}]};
  /// "i" is optional.
  static EigenspaceFramePolicy from_json(const nlohmann::json& doc, std::string id = "custom") {
    std::vector<CustomFrame> frames;
    try {
      for (const auto& entry : doc.at("frames")) {
        CustomFrame frame;
        frame.shape = Partition::parse(entry.at("partition").get<std::string>());
        frame.eigenvalue = entry.at("lambda").get<double>();
        if (entry.contains("i")) frame.i = entry.at("i").get<int>();
        for (const auto& v : entry.at("vectors")) {
          const auto values = v.get<std::vector<double>>();
          frame.vectors.push_back(Eigen::Map<const Eigen::VectorXd>(
              values.data(), static_cast<Eigen::Index>(values.size())));
        }
        frames.push_back(std::move(frame));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(fmt::format("malformed custom policy: {}", e.what()));
    }
    return custom(std::move(frames), std::move(id));
  }

  /// "onb", "repeat:R" or "custom:PATH".
  static EigenspaceFramePolicy parse(std::string_view text) {
    if (text == "onb") return onb();
    if (text.starts_with("repeat:")) {
      const auto copies = parse_int_list(text.substr(7), "repeat count");
      if (copies.size() != 1) throw ValidationError("repeat policy takes a single count");
      return repeat(copies.front());
    }
    if (text.starts_with("custom:")) {
      const std::string path(text.substr(7));
      std::ifstream in(path);
      if (!in) throw ValidationError(fmt::format("cannot open policy file '{}'", path));
      nlohmann::json doc;
      try {
        in >> doc;
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(fmt::format("policy file '{}' is not JSON: {}", path, e.what()));
      }
      return from_json(doc, std::string(text));
    }
    throw ValidationError(
        fmt::format("unknown policy '{}' (expected onb, repeat:R or custom:PATH)", text));
  }

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }

  /// Frame vectors (in R^{d_pi}) for E_lambda, given by its orthonormal basis.
  std::vector<Eigen::VectorXd> vectors_for(const Partition& shape, int i, const Eigenspace& space,
                                           double tol = 1e-10) const {
    std::vector<Eigen::VectorXd> out;
    const auto basis_columns = [&] {
      std::vector<Eigen::VectorXd> cols;
      for (Eigen::Index c = 0; c < space.basis.cols(); ++c) cols.push_back(space.basis.col(c));
      return cols;
    };
    if (kind_ == Kind::repeat) {
      for (int r = 0; r < copies_; ++r)
        for (auto& v : basis_columns()) out.push_back(std::move(v));
      return out;
    }
    if (kind_ == Kind::custom) {
      for (const auto& frame : custom_) {
        if (frame.shape != shape || std::abs(frame.eigenvalue - space.eigenvalue) > 1e-6) continue;
        if (frame.i && *frame.i != i) continue;
        check_spans(shape, space, frame.vectors, tol);
        return frame.vectors;
      }
    }
    return basis_columns();
  }

 private:
  EigenspaceFramePolicy(Kind kind, int copies, std::vector<CustomFrame> custom, std::string id)
      : kind_(kind), copies_(copies), custom_(std::move(custom)), id_(std::move(id)) {}

  static void check_spans(const Partition& shape, const Eigenspace& space,
                          const std::vector<Eigen::VectorXd>& vectors, double tol) {
    const auto m = space.multiplicity();
    Eigen::MatrixXd coords(m, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t c = 0; c < vectors.size(); ++c) {
      const auto& v = vectors[c];
      if (v.size() != space.basis.rows())
        throw ValidationError(fmt::format("policy vector for {} has length {}, expected {}",
                                          shape.to_string(), v.size(), space.basis.rows()));
      coords.col(static_cast<Eigen::Index>(c)) = space.basis.transpose() * v;
      const double outside = (v - space.basis * coords.col(static_cast<Eigen::Index>(c)))
                                 .cwiseAbs()
                                 .maxCoeff();
      if (outside > tol * std::max(1.0, v.norm()))
        throw ValidationError(fmt::format(
            "policy vector for {} lies outside the lambda = {} eigenspace (residual {:.3e})",
            shape.to_string(), space.eigenvalue, outside));
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
    const auto& sv = svd.singularValues();
    if (vectors.size() < static_cast<std::size_t>(m) || sv.size() < m ||
        (m > 0 && sv(m - 1) < 1e-10))
      throw ValidationError(fmt::format("policy vectors do not span the lambda = {} eigenspace of {}",
                                        space.eigenvalue, shape.to_string()));
  }

  Kind kind_;
  int copies_;
  std::vector<CustomFrame> custom_;
  std::string id_;
};

/// One frame vector psi in R^{n!}: psi = scale * sum_k coeff_k pi_{k,i}.
struct FrameAtom {
  Partition shape;
  int i = 1;
  double eigenvalue = 0.0;
  Eigen::VectorXd coeff;
  double scale = 1.0;
  Eigen::VectorXd signal;
};

/// Atoms [first_atom, first_atom + atom_count) lifted into Z_{pi,i,lambda}.
struct FrameBlock {
  Partition shape;
  int i = 1;
  double eigenvalue = 0.0;
  Eigen::MatrixXd eigenbasis;
  std::size_t first_atom = 0;
  std::size_t atom_count = 0;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  double condition = 0.0;
};

struct FrameOptions {
  IrrepSource source = IrrepSource::yor;
  SpectralOptions spectral;
};

struct Frame {
  std::shared_ptr<const GroupOrdering> ordering;
  std::shared_ptr<const std::vector<IrrepTable>> tables;
  GeneratingSet genset;
  std::string policy_id;
  FrameOptions options;
  std::vector<FrameAtom> atoms;
  std::vector<FrameBlock> blocks;
  std::optional<FrameBounds> bounds;

  std::size_t dimension() const { return ordering->size(); }
  int degree() const { return ordering->degree(); }

  const IrrepTable& table(const Partition& shape) const {
    for (const auto& t : *tables)
      if (t.shape() == shape) return t;
    throw ValidationError(fmt::format("no irrep of shape {} for n = {}", shape.to_string(), degree()));
  }

  /// n! x (#atoms) matrix with the atoms as columns.
  Eigen::MatrixXd synthesis_matrix() const {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dimension()), static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t a = 0; a < atoms.size(); ++a) m.col(static_cast<Eigen::Index>(a)) = atoms[a].signal;
    return m;
  }
};

/// Lifts policy frames of every eigenspace E_lambda(pi(S)) through the
/// normalized coefficient lift for every irrep pi and row index i. Atoms are
/// ordered shape-major (partitions_of order), then i, then ascending lambda.
inline Frame build_compatible_frame(std::shared_ptr<const GroupOrdering> ordering,
                                    const GeneratingSet& gens, const EigenspaceFramePolicy& policy,
                                    const FrameOptions& options = {}) {
  if (gens.n() != ordering->degree())
    throw ValidationError("generating set and ordering disagree on n");
  auto tables = std::make_shared<const std::vector<IrrepTable>>(
      build_all_irrep_tables(ordering, options.source));

  struct Piece {
    std::vector<FrameBlock> blocks;
    std::vector<FrameAtom> atoms;
  };
  std::vector<std::future<Piece>> pending;
  for (const auto& table : *tables) {
    pending.push_back(std::async(std::launch::async, [&table, &gens, &policy, &options] {
      Piece piece;
      const auto spectrum = irrep_spectrum(table, gens, options.spectral);
      const double scale = lift_scale(table);
      for (int i = 1; i <= table.dim(); ++i) {
        for (const auto& space : spectrum.spaces) {
          const auto vectors = policy.vectors_for(table.shape(), i, space);
          piece.blocks.push_back(
              {table.shape(), i, space.eigenvalue, space.basis, piece.atoms.size(), vectors.size()});
          for (const auto& x : vectors)
            piece.atoms.push_back(
                {table.shape(), i, space.eigenvalue, x, scale, theta_lift(table, i, space, x)});
        }
      }
      return piece;
    }));
  }

  Frame frame{ordering, tables, gens, policy.id(), options, {}, {}, std::nullopt};
  for (auto& f : pending) {
    Piece piece = f.get();
    const std::size_t offset = frame.atoms.size();
    for (auto& block : piece.blocks) {
      block.first_atom += offset;
      frame.blocks.push_back(std::move(block));
    }
    for (auto& atom : piece.atoms) frame.atoms.push_back(std::move(atom));
  }
  return frame;
}

inline Frame build_compatible_frame(int n, const GeneratingSet& gens,
                                    const EigenspaceFramePolicy& policy,
                                    const FrameOptions& options = {}) {
  return build_compatible_frame(std::make_shared<const GroupOrdering>(GroupOrdering::lex(n)), gens,
                                policy, options);
}

/// S = sum_x psi_x psi_x^T.
inline Eigen::MatrixXd frame_operator(const Frame& frame) {
  const Eigen::MatrixXd psi = frame.synthesis_matrix();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(psi.rows(), psi.rows());
  s.selfadjointView<Eigen::Lower>().rankUpdate(psi);
  s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
  return s;
}

namespace detail {
inline FrameBounds finish_bounds(double lower, double upper) {
  if (!(lower >= kFrameLowerBoundFloor))
    throw InvariantError(fmt::format(
        "not a frame: lower frame bound {:.3e} is below {:.0e} (atoms do not span)", lower,
        kFrameLowerBoundFloor));
  return {lower, upper, upper / lower};
}
}  // namespace detail

/// Extreme eigenvalues of the dense frame operator.
inline FrameBounds frame_bounds_dense(const Frame& frame) {
  const auto eig = symmetric_eigen(frame_operator(frame), frame.options.spectral.eigen_tol);
  return detail::finish_bounds(eig.values.minCoeff(), eig.values.maxCoeff());
}

/// Bounds from the per-block eigenspace frame operators. The lift is an
/// isometry onto mutually orthogonal Z-spaces, so the global operator is
/// block diagonal and its spectrum is the union of the block spectra.
/// Blocks must cover L^2(S_n); uncovered dimensions count as a zero bound.
inline FrameBounds frame_bounds_blockwise(const Frame& frame) {
  double lower = std::numeric_limits<double>::infinity();
  double upper = 0.0;
  std::size_t covered = 0;
  for (const auto& block : frame.blocks) {
    const auto m = block.eigenbasis.cols();
    covered += static_cast<std::size_t>(m);
    if (m == 0) continue;
    Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(block.atom_count));
    for (std::size_t a = 0; a < block.atom_count; ++a) {
      const auto& atom = frame.atoms[block.first_atom + a];
      const double to_iso = atom.scale / lift_scale(frame.table(atom.shape));
      coords.col(static_cast<Eigen::Index>(a)) = to_iso * (block.eigenbasis.transpose() * atom.coeff);
    }
    const Eigen::MatrixXd local = coords * coords.transpose();
    const auto eig = symmetric_eigen(local, frame.options.spectral.eigen_tol);
    lower = std::min(lower, eig.values.minCoeff());
    upper = std::max(upper, eig.values.maxCoeff());
  }
  if (covered != frame.dimension() || frame.blocks.empty()) lower = 0.0;
  return detail::finish_bounds(lower, upper);
}

/// Dense up to kDenseBoundsLimit vertices, blockwise above.
inline FrameBounds frame_bounds(const Frame& frame) {
  return frame.dimension() <= kDenseBoundsLimit ? frame_bounds_dense(frame)
                                                : frame_bounds_blockwise(frame);
}

struct FrameCoefficient {
  Partition shape;
  int i = 1;
  double eigenvalue = 0.0;
  std::size_t index = 0;  // atom index in the frame
  double value = 0.0;
};

/// c_x = <f, psi_x>.
inline std::vector<FrameCoefficient> analysis(const Frame& frame, const Eigen::VectorXd& f) {
  if (static_cast<std::size_t>(f.size()) != frame.dimension())
    throw ValidationError(fmt::format("signal has length {}, frame lives on {} vertices", f.size(),
                                      frame.dimension()));
  std::vector<FrameCoefficient> out;
  out.reserve(frame.atoms.size());
  for (std::size_t a = 0; a < frame.atoms.size(); ++a) {
    const auto& atom = frame.atoms[a];
    out.push_back({atom.shape, atom.i, atom.eigenvalue, a, atom.signal.dot(f)});
  }
  return out;
}

inline Eigen::VectorXd coefficient_values(const std::vector<FrameCoefficient>& coeffs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t c = 0; c < coeffs.size(); ++c) v(static_cast<Eigen::Index>(c)) = coeffs[c].value;
  return v;
}

/// sum_x c_x psi_x.
inline Eigen::VectorXd synthesize(const Frame& frame, const Eigen::VectorXd& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != frame.atoms.size())
    throw ValidationError(fmt::format("{} coefficients for a frame of {} atoms", coeffs.size(),
                                      frame.atoms.size()));
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.dimension()));
  for (std::size_t a = 0; a < frame.atoms.size(); ++a)
    f += coeffs(static_cast<Eigen::Index>(a)) * frame.atoms[a].signal;
  return f;
}

inline Eigen::VectorXd synthesize(const Frame& frame, const std::vector<FrameCoefficient>& coeffs) {
  return synthesize(frame, coefficient_values(coeffs));
}

/// Atoms S^{-1} psi_x; reconstruction f = sum_x <f, psi_x> dual_x.
inline Frame canonical_dual(const Frame& frame) {
  const FrameBounds bounds = frame.bounds ? *frame.bounds : frame_bounds(frame);
  const Eigen::MatrixXd psi = frame.synthesis_matrix();
  const Eigen::LDLT<Eigen::MatrixXd> solver(frame_operator(frame));
  const Eigen::MatrixXd dual_signals = solver.solve(psi);

  Frame dual = frame;
  dual.policy_id = frame.policy_id + "+dual";
  for (std::size_t a = 0; a < dual.atoms.size(); ++a) {
    auto& atom = dual.atoms[a];
    const auto& table = frame.table(atom.shape);
    atom.signal = dual_signals.col(static_cast<Eigen::Index>(a));
    atom.coeff = theta_inverse(table, atom.i, atom.signal) * (lift_scale(table) / atom.scale);
  }
  dual.bounds = FrameBounds{1.0 / bounds.upper, 1.0 / bounds.lower, bounds.condition};
  return dual;
}

/// Orthogonal projection onto W_gamma, the span of all coefficient
/// functions of one irrep.
inline Eigen::VectorXd project_w_gamma(const Eigen::VectorXd& f, const IrrepTable& table) {
  if (static_cast<std::size_t>(f.size()) != table.group_size())
    throw ValidationError("signal length does not match the group order");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
  const double scale = lift_scale(table);
  for (int i = 1; i <= table.dim(); ++i) {
    const Eigen::VectorXd x = theta_inverse(table, i, f);
    out += scale * theta(table, i, x);
  }
  return out;
}

/// Orthogonal projection onto Z_{pi,lambda}, the sum over i of Z_{pi,i,lambda}.
inline Eigen::VectorXd project_z(const Eigen::VectorXd& f, const IrrepTable& table,
                                 const Eigenspace& space) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
  const double scale = lift_scale(table);
  for (int i = 1; i <= table.dim(); ++i) {
    const Eigen::VectorXd x = theta_inverse(table, i, f);
    out += scale * theta(table, i, space.basis * (space.basis.transpose() * x));
  }
  return out;
}

struct CompatibilityReport {
  double max_lift_residual = 0.0;
  double max_eigen_residual = 0.0;
  std::vector<std::size_t> failing_atoms;
  bool pass = true;
};

/// Checks every atom against psi(z) = scale * R_{pi,i}(z) X with
/// pi(S) X = lambda X.
inline CompatibilityReport audit_compatibility(const Frame& frame, double lift_tol = 1e-10,
                                               double eigen_tol = 1e-9) {
  CompatibilityReport report;
  std::map<Partition, Eigen::MatrixXd> pi_s;
  for (const auto& table : *frame.tables) pi_s.emplace(table.shape(), pi_of_S(table, frame.genset));

  for (std::size_t a = 0; a < frame.atoms.size(); ++a) {
    const auto& atom = frame.atoms[a];
    double lift_residual = std::numeric_limits<double>::infinity();
    double eigen_residual_value = std::numeric_limits<double>::infinity();
    auto it = pi_s.find(atom.shape);
    if (it != pi_s.end() && atom.coeff.size() == it->second.rows() && atom.i >= 1 &&
        atom.i <= it->second.rows() &&
        static_cast<std::size_t>(atom.signal.size()) == frame.dimension()) {
      const auto& table = frame.table(atom.shape);
      const Eigen::VectorXd expected = atom.scale * theta(table, atom.i, atom.coeff);
      lift_residual = (atom.signal - expected).cwiseAbs().maxCoeff();
      eigen_residual_value =
          (it->second * atom.coeff - atom.eigenvalue * atom.coeff).cwiseAbs().maxCoeff();
    }
    report.max_lift_residual = std::max(report.max_lift_residual, lift_residual);
    report.max_eigen_residual = std::max(report.max_eigen_residual, eigen_residual_value);
    if (!(lift_residual < lift_tol && eigen_residual_value < eigen_tol)) {
      report.failing_atoms.push_back(a);
      report.pass = false;
    }
  }
  return report;
}

struct RecoveredAtom {
  Partition shape;
  int i = 1;
  double eigenvalue = 0.0;
  Eigen::VectorXd coeff;  // inverse lift of the atom
};

struct RecoveryReport {
  std::vector<RecoveredAtom> atoms;
  /// Eigenspace frames keyed by (shape, i, lambda index in ascending order).
  std::map<std::tuple<Partition, int, std::size_t>, std::vector<Eigen::VectorXd>> eigenspace_frames;
  double max_leakage = 0.0;          // energy outside the recovered E_{pi,i}
  double max_roundtrip = 0.0;        // ||lift(recovered X) - atom||_inf
  double max_eigen_residual = 0.0;   // ||pi(S) X - lambda X||_inf / ||X||
  double max_metadata_mismatch = 0.0;
  bool pass = true;
};

/// Rebuilds the (pi, i, lambda) partition of a compatible Frobenius-Schur
/// frame from the atom signals alone, and each eigenspace frame through the
/// inverse lift. Stored metadata is only compared against at the end.
inline RecoveryReport recover_partition(const Frame& frame, double tol = 1e-10,
                                        double eigen_tol = 1e-9) {
  RecoveryReport report;
  const auto basis = fs_basis(*frame.tables);
  const Eigen::MatrixXd coords = basis_matrix(basis).transpose() * frame.synthesis_matrix();

  struct BlockRef {
    const IrrepTable* table;
    int i;
    Eigen::Index row;
    IrrepSpectrum spectrum;
  };
  std::vector<BlockRef> refs;
  Eigen::Index row = 0;
  for (const auto& table : *frame.tables) {
    auto spectrum = irrep_spectrum(table, frame.genset, frame.options.spectral);
    for (int i = 1; i <= table.dim(); ++i) {
      refs.push_back({&table, i, row, spectrum});
      row += table.dim();
    }
  }

  for (std::size_t a = 0; a < frame.atoms.size(); ++a) {
    const Eigen::VectorXd c = coords.col(static_cast<Eigen::Index>(a));
    std::vector<double> energy(refs.size());
    std::size_t best = 0;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      energy[r] = c.segment(refs[r].row, refs[r].table->dim()).squaredNorm();
      if (energy[r] > energy[best]) best = r;
    }
    const auto& ref = refs[best];
    const Eigen::VectorXd x = c.segment(ref.row, ref.table->dim());
    // Summed directly; total minus best would leave rounding noise under the root.
    double outside = 0.0;
    for (std::size_t r = 0; r < refs.size(); ++r)
      if (r != best) outside += energy[r];
    const double leakage = std::sqrt(outside);
    const double roundtrip =
        (lift_scale(*ref.table) * theta(*ref.table, ref.i, x) - frame.atoms[a].signal)
            .cwiseAbs()
            .maxCoeff();
    const double xx = x.squaredNorm();
    const double lambda = xx > 0.0 ? x.dot(ref.spectrum.pi_s * x) / xx : 0.0;
    const double eig_res =
        xx > 0.0 ? (ref.spectrum.pi_s * x - lambda * x).cwiseAbs().maxCoeff() / std::sqrt(xx) : 0.0;

    std::size_t lambda_index = 0;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ref.spectrum.spaces.size(); ++s) {
      const double gap = std::abs(ref.spectrum.spaces[s].eigenvalue - lambda);
      if (gap < nearest) {
        nearest = gap;
        lambda_index = s;
      }
    }

    const auto& stored = frame.atoms[a];
    double mismatch = 0.0;
    if (stored.shape != ref.table->shape() || stored.i != ref.i) {
      mismatch = std::numeric_limits<double>::infinity();
    } else {
      const double to_iso = stored.scale / lift_scale(*ref.table);
      mismatch = std::max(std::abs(stored.eigenvalue - lambda),
                          (to_iso * stored.coeff - x).cwiseAbs().maxCoeff());
    }

    report.max_leakage = std::max(report.max_leakage, leakage);
    report.max_roundtrip = std::max(report.max_roundtrip, roundtrip);
    report.max_eigen_residual = std::max(report.max_eigen_residual, eig_res);
    report.max_metadata_mismatch = std::max(report.max_metadata_mismatch, mismatch);
    report.eigenspace_frames[{ref.table->shape(), ref.i, lambda_index}].push_back(x);
    report.atoms.push_back({ref.table->shape(), ref.i, lambda, x});
  }
  report.pass = report.max_leakage < tol && report.max_roundtrip < tol &&
                report.max_eigen_residual < eigen_tol && report.max_metadata_mismatch < eigen_tol;
  return report;
}

}  // namespace permuframe
