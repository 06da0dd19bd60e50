#pragma once

// Matrix representations of the q-operators on a TruncatedFock.
//
// Matrices act on coefficient vectors in the (non-orthonormal) Word basis.
// Norms and adjoints go through the per-block Gram factors held by a
// QGeometry, which conjugates each block to an orthonormal frame.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qfock/expr.hpp"
#include "qfock/fockcore.hpp"
#include "qfock/wickalg.hpp"

namespace qfock {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;
using FockPtr = std::shared_ptr<const TruncatedFock>;

inline constexpr double kConditioningThreshold = 1e-12;

/// Gram data of a fock evaluated at one q: per-block matrices, their
/// Cholesky factors G = L Lᵀ, and eigenvalue extremes.
class QGeometry {
 public:
  /// Throws Domain for |q| >= 1 and Conditioning when some block has
  /// λmin < kConditioningThreshold·λmax.
  QGeometry(FockPtr fock, double q);
  QGeometry(FockPtr fock, std::span<const GramBlock> blocks, double q);

  const FockPtr& fock_ptr() const noexcept { return fock_; }
  const TruncatedFock& fock() const noexcept { return *fock_; }
  double q() const noexcept { return q_; }

  const Eigen::MatrixXd& gram(std::size_t block) const { return gram_.at(block); }
  const Eigen::MatrixXd& lower_factor(std::size_t block) const { return lower_.at(block); }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  /// Block-diagonal sparse assemblies over the whole basis.
  const SparseMatrix& gram_matrix() const noexcept { return gram_full_; }
  const SparseMatrix& gram_inverse() const noexcept { return gram_inv_full_; }
  const SparseMatrix& factor_transpose() const noexcept { return lt_full_; }          // Lᵀ
  const SparseMatrix& factor_inverse_transpose() const noexcept { return lit_full_; }  // L^{-T}

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double norm(const Eigen::VectorXd& x) const;

 private:
  void assemble(std::span<const GramBlock> blocks);

  FockPtr fock_;
  double q_;
  std::vector<Eigen::MatrixXd> gram_;
  std::vector<Eigen::MatrixXd> lower_;
  double min_eigenvalue_ = 0.0;
  SparseMatrix gram_full_, gram_inv_full_, lt_full_, lit_full_;
};

/// A linear map on the truncated basis. Entries connect basis vectors
/// whose levels differ by the declared degree when the operator is
/// homogeneous; mixed-degree operators are allowed.
class LevelOperator {
 public:
  LevelOperator(FockPtr fock, SparseMatrix matrix);

  static LevelOperator zero(FockPtr fock);
  static LevelOperator identity(FockPtr fock);

  const FockPtr& fock_ptr() const noexcept { return fock_; }
  const TruncatedFock& fock() const noexcept { return *fock_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }

  /// target level - source level, if the same for every nonzero entry.
  std::optional<int> degree() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return matrix_ * x; }

  /// Zeroes every column whose source level exceeds `max_level`.
  LevelOperator restrict_source_levels(int max_level) const;
  /// Keeps only rows and columns on levels [lo, hi].
  LevelOperator restrict_levels(int lo, int hi) const;

  LevelOperator& operator+=(const LevelOperator& o);
  LevelOperator& operator-=(const LevelOperator& o);
  LevelOperator operator*(const LevelOperator& o) const;
  friend LevelOperator operator+(LevelOperator a, const LevelOperator& b) { return a += b; }
  friend LevelOperator operator-(LevelOperator a, const LevelOperator& b) { return a -= b; }
  LevelOperator scaled(double c) const;

  double max_abs_entry() const;

 private:
  void check_same_fock(const LevelOperator& o) const;

  FockPtr fock_;
  SparseMatrix matrix_;
};

/// e_i ⊗ w for |w| < N; top-level words map to 0.
LevelOperator matrix_creator(int mode, const FockPtr& fock);
/// Σ_k q^{k-1} δ(w_k, i) · (w with slot k removed).
LevelOperator matrix_annihilator(int mode, const FockPtr& fock, double q);

/// Evaluation homomorphism into matrices: letters are composed as written,
/// coefficients evaluated at q. Throws Window if a mode is outside the fock.
LevelOperator matrix_of_expr(const WickExpr& x, const FockPtr& fock, double q);
LevelOperator matrix_of_expr(const ExprAst& x, const FockPtr& fock, double q);
LevelOperator matrix_of_word(const LetterWord& word, const FockPtr& fock, double q);

/// A† = G⁻¹ Aᵀ G, so that <Au, v>_q = <u, A†v>_q.
LevelOperator q_adjoint(const LevelOperator& a, const QGeometry& geometry);

enum class NormMethod { ExactEigen, PowerIteration };
std::string to_string(NormMethod m);

struct NormOptions {
  std::size_t dense_limit = 2000;   // largest eigenproblem solved densely
  double power_tolerance = 1e-10;
  std::size_t power_max_iterations = 100000;
};

struct NormReport {
  double value = 0.0;
  NormMethod method = NormMethod::ExactEigen;
  double residual = 0.0;  // eigen-residual of the dominant pair
  int levels_used = 0;    // max level of the truncation
};

/// Operator norm under <·,·>_q. The operator is conjugated to the
/// orthonormal frame B = Lᵀ A L^{-T} and split into independent components
/// of its block graph; each component's largest singular value comes from
/// the smaller of BᵀB, BBᵀ.
NormReport op_norm_q(const LevelOperator& a, const QGeometry& geometry, const NormOptions& options = {});

/// Frame matrix Lᵀ A L^{-T}.
SparseMatrix frame_matrix(const LevelOperator& a, const QGeometry& geometry);

struct LevelSpectrum {
  int level = 0;
  double min = 0.0;
  double max = 0.0;
};

/// Spectrum extremes, per level, of the symmetrized frame matrix (S + Sᵀ)/2
/// restricted to levels [lo, hi]. Requires a level-preserving operator.
std::vector<LevelSpectrum> q_symmetric_spectrum(const LevelOperator& a, const QGeometry& geometry, int lo, int hi);

/// max |S - Sᵀ| of the frame matrix: zero iff A is q-self-adjoint.
double q_self_adjoint_defect(const LevelOperator& a, const QGeometry& geometry);

/// Σ_{i in window} a_i^+ a_i.
LevelOperator number_operator(const FockPtr& fock, double q);
/// MΩ = Ω, M(f1..fn) = Σ_k q^{k-1} f_k ⊗ f1..f_{k-1} f_{k+1}..fn.
LevelOperator m_operator(const FockPtr& fock, double q);

/// JSON array of per-level-pair triplet blocks:
/// {"source_level", "target_level", "rows", "cols", "entries": [[r, c, v]...]}
/// with r, c local to the levels.
std::string operator_json(const LevelOperator& a);

}  // namespace qfock
