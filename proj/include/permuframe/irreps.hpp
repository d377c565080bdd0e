#pragma once

#include <cmath>
#include <future>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "permuframe/error.hpp"
#include "permuframe/permutation.hpp"
#include "permuframe/young.hpp"

namespace permuframe {

enum class IrrepSource { yor, fixture };

inline std::string to_string(IrrepSource source) {
  return source == IrrepSource::yor ? "yor" : "fixture";
}

inline IrrepSource parse_irrep_source(std::string_view text) {
  if (text == "yor") return IrrepSource::yor;
  if (text == "fixture") return IrrepSource::fixture;
  throw ValidationError(fmt::format("unknown irrep source '{}' (expected yor or fixture)", text));
}

/// One irreducible representation evaluated on every element of S_n.
///
/// Matrices are indexed by position in the ordering. The coefficient
/// function pi_{k,i}(g) is entry (row i, column k) of pi(g), so that the
/// i-th row of pi(g) times X equals sum_k x_k pi_{k,i}(g).
class IrrepTable {
 public:
  IrrepTable(Partition shape, std::shared_ptr<const GroupOrdering> ordering,
             std::vector<Eigen::MatrixXd> matrices, IrrepSource source)
      : shape_(std::move(shape)),
        ordering_(std::move(ordering)),
        matrices_(std::move(matrices)),
        source_(source) {
    if (matrices_.size() != ordering_->size())
      throw ValidationError("irrep table needs one matrix per group element");
    dim_ = matrices_.empty() ? 0 : static_cast<int>(matrices_.front().rows());
  }

  const Partition& shape() const { return shape_; }
  int dim() const { return dim_; }
  IrrepSource source() const { return source_; }
  const GroupOrdering& ordering() const { return *ordering_; }
  const std::shared_ptr<const GroupOrdering>& ordering_ptr() const { return ordering_; }
  std::size_t group_size() const { return matrices_.size(); }

  const Eigen::MatrixXd& operator[](std::size_t g) const { return matrices_[g]; }
  const Eigen::MatrixXd& at(const Permutation& p) const {
    return matrices_[ordering_->index_of(p)];
  }

  /// pi_{k,i}(g) with 1-based k, i.
  double coefficient(std::size_t g, int k, int i) const { return matrices_[g](i - 1, k - 1); }

 private:
  Partition shape_;
  std::shared_ptr<const GroupOrdering> ordering_;
  std::vector<Eigen::MatrixXd> matrices_;
  IrrepSource source_;
  int dim_ = 0;
};

namespace detail {

// Generator matrices for s_1 = (12) and s_2 = (23) of the S_3 reference
// realization: trivial, sign, and the 2-dimensional standard representation.
inline std::vector<Eigen::MatrixXd> fixture_generators(const Partition& shape) {
  if (shape.n() != 3) throw ValidationError("the fixture irreps exist only for n = 3");
  if (shape == Partition({3})) return {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)};
  if (shape == Partition({1, 1, 1}))
    return {-Eigen::MatrixXd::Ones(1, 1), -Eigen::MatrixXd::Ones(1, 1)};
  const double h = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXd s1(2, 2), s2(2, 2);
  s1 << -0.5, h, h, 0.5;
  s2 << 1.0, 0.0, 0.0, -1.0;
  return {s1, s2};
}

}  // namespace detail

/// Evaluates the irrep of `shape` on every element of the ordering.
inline IrrepTable build_irrep_table(const Partition& shape,
                                    std::shared_ptr<const GroupOrdering> ordering,
                                    IrrepSource source = IrrepSource::yor) {
  if (shape.n() != ordering->degree())
    throw ValidationError(fmt::format("shape {} does not partition n = {}", shape.to_string(),
                                      ordering->degree()));
  std::vector<Eigen::MatrixXd> matrices;
  matrices.reserve(ordering->size());
  if (source == IrrepSource::yor) {
    const YoungOrthogonalForm yor(shape);
    for (const auto& p : *ordering) matrices.push_back(yor.evaluate(p));
  } else {
    const auto gens = detail::fixture_generators(shape);
    const auto d = gens.front().rows();
    for (const auto& p : *ordering) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
      for (int k : adjacent_factorization(p)) m = m * gens[k - 1];
      matrices.push_back(std::move(m));
    }
  }
  return IrrepTable(shape, std::move(ordering), std::move(matrices), source);
}

inline IrrepTable build_irrep_table(const Partition& shape, const GroupOrdering& ordering,
                                    IrrepSource source = IrrepSource::yor) {
  return build_irrep_table(shape, std::make_shared<const GroupOrdering>(ordering), source);
}

/// Tables for every partition of n, in partitions_of order.
inline std::vector<IrrepTable> build_all_irrep_tables(
    std::shared_ptr<const GroupOrdering> ordering, IrrepSource source = IrrepSource::yor) {
  const auto shapes = partitions_of(ordering->degree());
  std::vector<std::future<IrrepTable>> pending;
  pending.reserve(shapes.size());
  for (const auto& shape : shapes)
    pending.push_back(std::async(std::launch::async, [shape, ordering, source] {
      return build_irrep_table(shape, ordering, source);
    }));
  std::vector<IrrepTable> tables;
  tables.reserve(shapes.size());
  for (auto& f : pending) tables.push_back(f.get());
  return tables;
}

struct CoefficientVector {
  Partition shape;
  int k = 1;  // basis vector fed to pi(g)
  int i = 1;  // row read out
  Eigen::VectorXd values;
};

/// pi_{k,i} as a vector over the table's ordering (1-based k, i).
inline CoefficientVector coefficient_vector(const IrrepTable& table, int k, int i) {
  if (k < 1 || k > table.dim() || i < 1 || i > table.dim())
    throw ValidationError(fmt::format("coefficient index ({}, {}) outside 1..{}", k, i,
                                      table.dim()));
  Eigen::VectorXd values(static_cast<Eigen::Index>(table.group_size()));
  for (std::size_t g = 0; g < table.group_size(); ++g)
    values(static_cast<Eigen::Index>(g)) = table.coefficient(g, k, i);
  return {table.shape(), k, i, std::move(values)};
}

struct FsBasisVector {
  Partition shape;
  int i = 1;
  int k = 1;
  Eigen::VectorXd values;  // sqrt(d/n!) * pi_{k,i}
};

/// Orthonormal Frobenius-Schur basis of L^2(S_n); vectors of one E_{pi,i}
/// are contiguous (shape-major, then i, then k).
inline std::vector<FsBasisVector> fs_basis(const std::vector<IrrepTable>& tables) {
  std::vector<FsBasisVector> basis;
  for (const auto& table : tables) {
    const double scale =
        std::sqrt(static_cast<double>(table.dim()) / static_cast<double>(table.group_size()));
    for (int i = 1; i <= table.dim(); ++i)
      for (int k = 1; k <= table.dim(); ++k)
        basis.push_back({table.shape(), i, k, scale * coefficient_vector(table, k, i).values});
  }
  return basis;
}

inline std::vector<FsBasisVector> fs_basis(const GroupOrdering& ordering,
                                           IrrepSource source = IrrepSource::yor) {
  return fs_basis(build_all_irrep_tables(std::make_shared<const GroupOrdering>(ordering), source));
}

/// Basis vectors as the columns of an n! x n! matrix.
inline Eigen::MatrixXd basis_matrix(const std::vector<FsBasisVector>& basis) {
  if (basis.empty()) return {};
  Eigen::MatrixXd m(basis.front().values.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c)
    m.col(static_cast<Eigen::Index>(c)) = basis[c].values;
  return m;
}

struct SchurReport {
  std::size_t basis_size = 0;
  double max_offdiag = 0.0;
  double max_norm_error = 0.0;
  bool pass = false;
};

/// Compares the Gram matrix of the Frobenius-Schur basis to the identity.
inline SchurReport verify_schur(const std::vector<FsBasisVector>& basis, double tol) {
  SchurReport report;
  report.basis_size = basis.size();
  const Eigen::MatrixXd f = basis_matrix(basis);
  const Eigen::MatrixXd gram = f.transpose() * f;
  for (Eigen::Index r = 0; r < gram.rows(); ++r)
    for (Eigen::Index c = 0; c < gram.cols(); ++c) {
      if (r == c)
        report.max_norm_error = std::max(report.max_norm_error, std::abs(gram(r, c) - 1.0));
      else
        report.max_offdiag = std::max(report.max_offdiag, std::abs(gram(r, c)));
    }
  const bool complete = static_cast<Eigen::Index>(basis.size()) == f.rows();
  report.pass = complete && report.max_offdiag < tol && report.max_norm_error < tol;
  return report;
}

inline SchurReport verify_schur(int n, double tol, IrrepSource source = IrrepSource::yor) {
  return verify_schur(fs_basis(GroupOrdering::lex(n), source), tol);
}

}  // namespace permuframe
