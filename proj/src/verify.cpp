#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "format.hpp"
#include "qfock/ergolab.hpp"
#include "qfock/error.hpp"

namespace qfock {

namespace {

// All words of length <= max_length whose letters use the given modes,
// shortest first.
std::vector<LetterWord> enumerate_words(const std::vector<int>& modes, std::size_t max_length) {
  std::vector<Letter> alphabet;
  for (int m : modes) {
    alphabet.push_back(ann(m));
    alphabet.push_back(cre(m));
  }
  std::vector<LetterWord> out{LetterWord{}};
  std::size_t start = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i) {
      for (const auto& l : alphabet) {
        LetterWord w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    start = end;
  }
  return out;
}

LetterWord random_word(UniformStream& rng, int mode_lo, int mode_hi, std::size_t max_length) {
  const std::size_t len = 1 + static_cast<std::size_t>(rng.next_bits() % max_length);
  const auto span = static_cast<std::uint64_t>(mode_hi - mode_lo + 1);
  LetterWord w;
  for (std::size_t k = 0; k < len; ++k) {
    const std::uint64_t bits = rng.next_bits();
    const int mode = mode_lo + static_cast<int>((bits >> 1) % span);
    w.push_back((bits & 1u) ? cre(mode) : ann(mode));
  }
  return w;
}

// Records the first failure and stops counting further failures' details.
void record(SuiteReport& r, bool ok, const std::function<std::string()>& what) {
  ++r.checked;
  if (ok) return;
  if (r.failed == 0) r.detail = what();
  ++r.failed;
}

}  // namespace

SuiteReport symmetry_suite(std::size_t sample_size, std::uint64_t seed) {
  SuiteReport r{"symmetry", 0, 0, {}};
  auto words = enumerate_words({-1, 0, 1}, 4);
  UniformStream rng(seed);
  for (std::size_t s = 0; s < sample_size; ++s) words.push_back(random_word(rng, -2, 2, 8));

  for (const auto& w : words) {
    const WickExpr x = normal_order(w);
    const QPolynomial omega = vacuum_expectation(x);
    const std::string name = to_string(w);
    for (int k = -3; k <= 3; ++k) {
      const WickExpr xs = normal_order(shift(w, k));
      record(r, xs == shift(x, k), [&] { return "normal ordering does not commute with shift " + std::to_string(k) + " on " + name; });
      record(r, vacuum_expectation(xs) == omega, [&] { return "omega not shift invariant (k=" + std::to_string(k) + ") on " + name; });
    }
    const WickExpr xt = normal_order(time_reverse(w));
    record(r, time_reverse(time_reverse(x)) == x && time_reverse(time_reverse(w)) == w,
           [&] { return "time reversal is not an involution on " + name; });
    record(r, time_reverse(shift(x, 1)) == shift(time_reverse(x), -1),
           [&] { return "theta alpha != alpha^-1 theta on " + name; });
    record(r, normal_order(time_reverse(shift(w, 1))) == normal_order(shift(time_reverse(w), -1)),
           [&] { return "theta alpha != alpha^-1 theta (word level) on " + name; });
    record(r, xt == time_reverse(x), [&] { return "normal ordering does not commute with time reversal on " + name; });
    record(r, vacuum_expectation(xt) == omega, [&] { return "omega not time-reversal invariant on " + name; });
    if (r.failed) break;
  }
  return r;
}

SuiteReport confluence_suite(std::size_t exhaustive_length, std::size_t sample_size, std::uint64_t seed) {
  SuiteReport r{"confluence", 0, 0, {}};
  auto words = enumerate_words({0, 1, 2}, exhaustive_length);
  UniformStream rng(seed);
  for (std::size_t s = 0; s < sample_size; ++s) words.push_back(random_word(rng, 0, 2, 8));
  for (const auto& w : words) {
    record(r, normal_order(w, RewriteStrategy::Leftmost) == normal_order(w, RewriteStrategy::Rightmost),
           [&] { return "rewrite strategies disagree on " + to_string(w); });
    if (r.failed) break;
  }
  return r;
}

SuiteReport state_agreement_suite(ModeWindow window, int max_level, double q, std::size_t max_length, double tolerance) {
  SuiteReport r{"state-agreement", 0, 0, {}};
  auto fock = std::make_shared<const TruncatedFock>(TruncatedFock::build(window, max_level));
  const QGeometry geometry(fock, q);
  std::vector<int> modes;
  for (int m = window.lo; m <= window.hi; ++m) modes.push_back(m);

  std::map<Letter, LevelOperator> letters;
  for (int m : modes) {
    letters.emplace(cre(m), matrix_creator(m, fock));
    letters.emplace(ann(m), matrix_annihilator(m, fock, q));
  }
  Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fock->size()));
  vacuum[0] = 1.0;
  for (const auto& w : enumerate_words(modes, max_length)) {
    const double symbolic = vacuum_expectation(w).evaluate(q);
    Eigen::VectorXd v = vacuum;
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = letters.at(*it).apply(v);
    const double numeric = geometry.inner(v, vacuum);
    record(r, std::abs(symbolic - numeric) <= tolerance, [&] {
      return "omega(" + to_string(w) + ") = " + detail::fmt_double(symbolic) + " symbolically but " +
             detail::fmt_double(numeric) + " from matrices";
    });
  }
  return r;
}

KernelReport kernel_suite(const QGeometry& geometry) {
  KernelReport rep;
  const LevelOperator number = number_operator(geometry.fock_ptr(), geometry.q());
  const SparseMatrix& m = number.matrix();
  for (SparseMatrix::InnerIterator it(m, 0); it; ++it) rep.vacuum_residual = std::max(rep.vacuum_residual, std::abs(it.value()));
  rep.self_adjoint_defect = q_self_adjoint_defect(number, geometry);
  rep.gap = std::numeric_limits<double>::infinity();
  for (const auto& s : q_symmetric_spectrum(number, geometry, 1, geometry.fock().max_level())) rep.gap = std::min(rep.gap, s.min);
  rep.passed = rep.vacuum_residual == 0.0 && rep.gap > 0.0 && rep.self_adjoint_defect <= 1e-10;
  return rep;
}

MOperatorReport m_operator_suite(const QGeometry& geometry) {
  MOperatorReport rep;
  const FockPtr& fock = geometry.fock_ptr();
  const LevelOperator m = m_operator(fock, geometry.q());
  Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fock->size()));
  vacuum[0] = 1.0;
  rep.vacuum_residual = (m.apply(vacuum) - vacuum).cwiseAbs().maxCoeff();
  rep.self_adjoint_defect = q_self_adjoint_defect(m, geometry);
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& s : q_symmetric_spectrum(m, geometry, 0, fock->max_level()))
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, s.min);
  SparseMatrix vac(static_cast<Eigen::Index>(fock->size()), static_cast<Eigen::Index>(fock->size()));
  vac.insert(0, 0) = 1.0;
  const LevelOperator shifted = number_operator(fock, geometry.q()) + LevelOperator(fock, vac);
  rep.number_operator_gap = (m - shifted).max_abs_entry();
  rep.passed = rep.vacuum_residual <= 1e-12 && rep.self_adjoint_defect <= 1e-10 && rep.min_eigenvalue > 0.0 &&
               rep.number_operator_gap <= 1e-12;
  return rep;
}

double psd_step_min_eigenvalue(ModeWindow window, int k, double q) {
  require_q_in_domain(q);
  const Eigen::MatrixXd lhs = identity_tensor_p_matrix(window, k, q) / (1.0 - std::abs(q)) - p_matrix(window, k + 1, q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lhs, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  require_q_in_domain(q);
  if (window.lo > window.hi) throw Error(ErrorCode::InvalidArgument, "window requires lo <= hi");
  if (max_level < 1) throw Error(ErrorCode::InvalidArgument, "max level must be at least 1");
  if (nmax < 1) throw Error(ErrorCode::InvalidArgument, "nmax must be at least 1");
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  std::size_t ok = 0;
  for (const auto& s : suites) {
    ok += s.passed() ? 1 : 0;
    os << (s.passed() ? "PASS " : "FAIL ") << s.name << " checked=" << s.checked << " failed=" << s.failed;
    if (!s.detail.empty()) os << " : " << s.detail;
    os << '\n';
  }
  os << "verify: " << ok << "/" << suites.size() << " suites passed\n";
  return os.str();
}

namespace {

template <class F>
SuiteReport guarded(const std::string& name, F body) {
  try {
    SuiteReport r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return SuiteReport{name, 1, 1, std::string("error: ") + e.what()};
  }
}

}  // namespace

VerifyReport verify(const RunConfig& config, const VerifyOptions& options) {
  using detail::fmt_sci;
  config.validate();
  VerifyReport report;
  const double q = config.q;
  auto fock = std::make_shared<const TruncatedFock>(TruncatedFock::build(config.window, config.max_level));
  std::vector<GramBlock> blocks = gram_blocks(*fock);
  if (options.inject_gram_fault) {
    for (auto& b : blocks) {
      if (b.dim() >= 2) {
        b.at(0, 1) += QPolynomial(1);
        break;
      }
    }
  }

  report.suites.push_back(guarded("gram-oracle", [&] {
    SuiteReport r;
    for (const auto& b : blocks) {
      record(r, b.is_symmetric(), [&] { return "Gram block at level " + std::to_string(b.key.level) + " is not symmetric"; });
      if (static_cast<std::size_t>(b.key.level) > kDefaultFactorialCap) continue;
      for (std::size_t row = 0; row < b.dim(); ++row)
        for (std::size_t col = 0; col < b.dim(); ++col)
          record(r, b.at(row, col) == inner_q_bruteforce(fock->word(b.indices[row]), fock->word(b.indices[col])),
                 [&] { return "Gram entry differs from the permutation sum at level " + std::to_string(b.key.level); });
    }
    return r;
  }));

  report.suites.push_back(guarded("gram-positivity", [&] {
    SuiteReport r;
    double worst = std::numeric_limits<double>::infinity();
    for (double qq : {q, -0.9, -0.5, 0.0, 0.5, 0.9}) {
      const double lam = min_gram_eigenvalue(blocks, qq);
      worst = std::min(worst, lam);
      record(r, lam > 0.0, [&] { return "min Gram eigenvalue " + fmt_sci(lam) + " at q=" + detail::fmt_double(qq); });
    }
    if (r.passed()) r.detail = "min_eig=" + fmt_sci(worst);
    return r;
  }));

  // Everything below uses the (possibly corrupted) Gram data.
  std::unique_ptr<QGeometry> geometry;
  auto geo = [&]() -> const QGeometry& {
    if (!geometry) geometry = std::make_unique<QGeometry>(fock, blocks, q);
    return *geometry;
  };

  report.suites.push_back(guarded("relation-residual", [&] {
    SuiteReport r;
    double worst = 0.0;
    for (int i = config.window.lo; i <= config.window.hi; ++i) {
      for (int j = config.window.lo; j <= config.window.hi; ++j) {
        LevelOperator rel = matrix_annihilator(i, fock, q) * matrix_creator(j, fock) -
                            (matrix_creator(j, fock) * matrix_annihilator(i, fock, q)).scaled(q);
        if (i == j) rel -= LevelOperator::identity(fock);
        const double res = op_norm_q(rel.restrict_source_levels(config.max_level - 1), geo()).value;
        worst = std::max(worst, res);
        record(r, res <= 1e-12, [&] { return "residual " + fmt_sci(res) + " for i=" + std::to_string(i) + " j=" + std::to_string(j); });
      }
    }
    if (r.passed()) r.detail = "max_residual=" + fmt_sci(worst);
    return r;
  }));

  report.suites.push_back(guarded("adjointness", [&] {
    SuiteReport r;
    for (int i = config.window.lo; i <= config.window.hi; ++i) {
      const double dev = (q_adjoint(matrix_creator(i, fock), geo()) - matrix_annihilator(i, fock, q)).max_abs_entry();
      record(r, dev <= 1e-12, [&] { return "adjoint of a+(" + std::to_string(i) + ") deviates by " + fmt_sci(dev); });
    }
    return r;
  }));

  report.suites.push_back(guarded("creator-norm-bound", [&] {
    SuiteReport r;
    const double bound = 1.0 / std::sqrt(1.0 - std::abs(q));
    for (int i = config.window.lo; i <= config.window.hi; ++i) {
      const double nv = op_norm_q(matrix_creator(i, fock), geo()).value;
      record(r, nv <= bound + kBoundTolerance, [&] { return "norm " + fmt_sci(nv) + " exceeds " + fmt_sci(bound); });
    }
    return r;
  }));

  report.suites.push_back(guarded("psd-inequality", [&] {
    SuiteReport r;
    const ModeWindow w{config.window.lo, std::min(config.window.hi, config.window.lo + 2)};
    for (int k = 0; k + 1 <= std::min(4, config.max_level); ++k) {
      const double lam = psd_step_min_eigenvalue(w, k, q);
      record(r, lam >= -1e-10, [&] { return "min eigenvalue " + fmt_sci(lam) + " at k=" + std::to_string(k); });
    }
    return r;
  }));

  report.suites.push_back(guarded("confluence", [&] { return confluence_suite(5, 1000, config.seed); }));
  report.suites.push_back(guarded("symmetry", [&] { return symmetry_suite(1000, config.seed); }));

  report.suites.push_back(guarded("state-agreement", [&] {
    const int n = std::min(config.max_level, 3);
    return state_agreement_suite(ModeWindow{config.window.lo, std::min(config.window.hi, config.window.lo + 1)}, n, q,
                                 static_cast<std::size_t>(2 * n));
  }));

  report.suites.push_back(guarded("number-operator-kernel", [&] {
    const KernelReport k = kernel_suite(geo());
    SuiteReport r;
    record(r, k.passed, [&] {
      return "vacuum residual " + fmt_sci(k.vacuum_residual) + ", gap " + fmt_sci(k.gap) + ", asymmetry " +
             fmt_sci(k.self_adjoint_defect);
    });
    if (r.passed()) r.detail = "gap=" + fmt_sci(k.gap);
    return r;
  }));

  report.suites.push_back(guarded("m-operator", [&] {
    const MOperatorReport m = m_operator_suite(geo());
    SuiteReport r;
    record(r, m.passed, [&] {
      return "vacuum residual " + fmt_sci(m.vacuum_residual) + ", min eigenvalue " + fmt_sci(m.min_eigenvalue) +
             ", asymmetry " + fmt_sci(m.self_adjoint_defect) + ", |M - N - P_vac| " + fmt_sci(m.number_operator_gap);
    });
    if (r.passed()) r.detail = "min_eig=" + fmt_sci(m.min_eigenvalue);
    return r;
  }));

  return report;
}

}  // namespace qfock
