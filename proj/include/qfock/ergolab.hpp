#pragma once

// Experiment harness: norm-bound trials for sums of creators and of shifted
// monomials, Cesàro-average decay along subsequences, and the symmetry,
// kernel and verification suites.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfock/fockcore.hpp"
#include "qfock/qops.hpp"
#include "qfock/wickalg.hpp"

namespace qfock {

inline constexpr double kBoundTolerance = 1e-8;

enum class SeqKind { Arithmetic, Random };
std::string to_string(SeqKind kind);  // "arith" | "random"

/// Strictly increasing nonnegative integers k_1 < k_2 < ...
class Subsequence {
 public:
  explicit Subsequence(std::vector<int> values);

  /// 0, 1, ..., n-1
  static Subsequence arithmetic(std::size_t n);
  /// n sorted draws without replacement from [0, 4n].
  static Subsequence random(std::size_t n, std::uint64_t seed);

  const std::vector<int>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Subsequence prefix(std::size_t n) const;

 private:
  std::vector<int> values_;
};

/// Uniform draws in [-1, 1) from the top 53 bits of mt19937_64, so that
/// streams are identical across standard libraries.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();
  std::uint64_t next_bits();

 private:
  std::mt19937_64 engine_;
};

// -- norm bound for a sum of creators on orthonormal vectors ----------------

struct LemmaTrial {
  std::size_t n = 0;
  double lhs = 0.0;  // ‖Σ a+(e_j) ξ_j‖_q
  double rhs = 0.0;  // sqrt(n / (1-|q|)) max ‖ξ_j‖_q
  bool holds(double tol = kBoundTolerance) const { return lhs <= rhs + tol; }
};

/// f_j = e_{lo+j-1}. Every ξ_j must vanish on the top level.
LemmaTrial lemma_bound_eval(const QGeometry& geometry, std::span<const Eigen::VectorXd> xis);
/// ξ_j with independent uniform[-1,1] coefficients on the words of `xi_level`.
LemmaTrial lemma_bound_trial(const QGeometry& geometry, std::size_t n, std::uint64_t seed, int xi_level);

// -- shifted monomials -------------------------------------------------------

struct DecayRow {
  std::string word_id;
  double q = 0.0;
  SeqKind seq_kind = SeqKind::Arithmetic;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t i = 0;  // creators
  std::size_t j = 0;  // annihilators
  double norm = 0.0;
  double cesaro = 0.0;  // norm / n
  double bound = 0.0;   // |c(q)| sqrt(n / (1-|q|)^{i+j})
  double margin() const { return bound - norm; }
};

/// sqrt(n / (1-|q|)^{i+j})
double shifted_sum_bound(std::size_t n, std::size_t creators, std::size_t annihilators, double q);

/// ‖Σ_l α^{k_l}(word)‖_q with its bound. Throws Precondition for a scalar
/// word and Window if a shifted mode leaves the fock.
DecayRow prop_bound_check(const WickMonomial& word, const Subsequence& seq, const QGeometry& geometry,
                          SeqKind kind = SeqKind::Arithmetic, std::uint64_t seed = 0);

struct DecayOptions {
  int max_level = 2;
  std::size_t basis_cap = kDefaultBasisCap;
};

/// Rows n = 1..nmax along one subsequence. The fock window spans the word's
/// modes translated by every shift up to nmax (arithmetic) or 4·nmax (random).
std::vector<DecayRow> cesaro_decay(const WickMonomial& word, double q, std::size_t nmax, SeqKind kind,
                                   std::uint64_t seed, const DecayOptions& options = {});

std::string decay_csv_header();
std::string decay_csv(std::span<const DecayRow> rows, bool header = true);
std::string decay_json(std::span<const DecayRow> rows);

// -- suites --------------------------------------------------------------------

struct SuiteReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string detail;
  bool passed() const { return failed == 0; }
};

/// Shift and time-reversal identities on all words of length <= 4 over
/// modes {-1, 0, 1} plus `sample_size` seeded random words.
SuiteReport symmetry_suite(std::size_t sample_size, std::uint64_t seed);

/// Leftmost vs rightmost rewriting on all words of length <= `exhaustive_length`
/// over modes {0,1,2} plus `sample_size` random words of length <= 8.
SuiteReport confluence_suite(std::size_t exhaustive_length, std::size_t sample_size, std::uint64_t seed);

struct KernelReport {
  double vacuum_residual = 0.0;      // max |(NΩ)_k|
  double gap = 0.0;                  // smallest eigenvalue on levels 1..N
  double self_adjoint_defect = 0.0;  // frame asymmetry
  bool passed = false;
};

/// Σ_i a_i^+ a_i kills Ω and is strictly positive on levels 1..N.
KernelReport kernel_suite(const QGeometry& geometry);

struct MOperatorReport {
  double vacuum_residual = 0.0;      // ‖MΩ - Ω‖_max
  double min_eigenvalue = 0.0;       // over all levels
  double self_adjoint_defect = 0.0;
  double number_operator_gap = 0.0;  // ‖M - (N + P_Ω)‖_max
  bool passed = false;
};

MOperatorReport m_operator_suite(const QGeometry& geometry);

/// ω(word) from normal ordering, evaluated at q, against <XΩ, Ω>_q from
/// the matrices, for every word of length <= max_length over the window.
/// Exact when max_length <= 2 * max_level.
SuiteReport state_agreement_suite(ModeWindow window, int max_level, double q, std::size_t max_length,
                                  double tolerance = 1e-12);

/// Smallest eigenvalue of (1/(1-|q|)) (1 ⊗ P^{(k)}) - P^{(k+1)}.
double psd_step_min_eigenvalue(ModeWindow window, int k, double q);

// -- verification run ----------------------------------------------------------

struct RunConfig {
  double q = 0.5;
  ModeWindow window{0, 2};
  int max_level = 3;
  std::size_t nmax = 16;
  SeqKind seq_kind = SeqKind::Arithmetic;
  std::uint64_t seed = 1;

  void validate() const;
};

struct VerifyOptions {
  /// Test hook: perturbs one off-diagonal Gram entry before the suites run.
  bool inject_gram_fault = false;
};

struct VerifyReport {
  std::vector<SuiteReport> suites;
  bool passed() const;
  std::string text() const;
};

VerifyReport verify(const RunConfig& config, const VerifyOptions& options = {});

}  // namespace qfock
