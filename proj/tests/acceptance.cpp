// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qfock/ergolab.hpp"
#include "qfock/error.hpp"
#include "qfock/expr.hpp"
#include "qfock/qfock.h"

using namespace qfock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

FockPtr make(int lo, int hi, int n) { return std::make_shared<const TruncatedFock>(TruncatedFock::build({lo, hi}, n)); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Outcome inner_product_oracle() {
  const auto fock = TruncatedFock::build({0, 2}, 5);
  std::size_t pairs = 0, mismatches = 0;
  for (std::size_t u = 0; u < fock.size(); ++u)
    for (std::size_t v = 0; v < fock.size(); ++v) {
      if (inner_q_bruteforce(fock.word(u), fock.word(v)) != inner_q_recursive(fock.word(u), fock.word(v))) ++mismatches;
      ++pairs;
    }
  return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome gram_positivity() {
  double worst = INFINITY;
  std::size_t cases = 0;
  for (int w = 1; w <= 4; ++w)
    for (int n = 1; n <= 5; ++n) {
      const auto blocks = gram_blocks(TruncatedFock::build({0, w - 1}, n));
      for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        worst = std::min(worst, min_gram_eigenvalue(blocks, q));
        ++cases;
      }
    }
  return {worst > 0.0, std::to_string(cases) + " cases, smallest eigenvalue " + sci(worst)};
}

Outcome relation_residual() {
  const auto fock = make(0, 2, 4);
  double worst = 0.0;
  for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    const QGeometry g(fock, q);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        auto r = matrix_annihilator(i, fock, q) * matrix_creator(j, fock) -
                 (matrix_creator(j, fock) * matrix_annihilator(i, fock, q)).scaled(q);
        if (i == j) r -= LevelOperator::identity(fock);
        worst = std::max(worst, op_norm_q(r.restrict_source_levels(fock->max_level() - 1), g).value);
      }
  }
  return {worst <= 1e-12, "max residual norm " + sci(worst)};
}

Outcome creator_norm_bound() {
  double worst_margin = INFINITY;
  for (double q : {-0.9, -0.5, 0.5, 0.9})
    for (int n = 1; n <= 4; ++n) {
      const auto fock = make(0, 1, n);
      const QGeometry g(fock, q);
      for (int i = 0; i <= 1; ++i) {
        const double value = op_norm_q(matrix_creator(i, fock), g).value;
        worst_margin = std::min(worst_margin, 1.0 / std::sqrt(1.0 - std::abs(q)) - value);
      }
    }
  return {worst_margin >= -1e-8, "smallest margin " + sci(worst_margin)};
}

Outcome lemma_bound() {
  const auto fock = make(0, 7, 3);
  std::size_t trials = 0, violations = 0;
  double worst_ratio = 0.0;
  for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    const QGeometry g(fock, q);
    for (std::uint64_t t = 0; t < 200; ++t) {
      const auto trial = lemma_bound_trial(g, 1 + t % 8, 1000 + t, static_cast<int>(t % 3));
      if (!trial.holds()) ++violations;
      if (trial.rhs > 0) worst_ratio = std::max(worst_ratio, trial.lhs / trial.rhs);
      ++trials;
    }
  }
  return {violations == 0,
          std::to_string(trials) + " trials, " + std::to_string(violations) + " violations, max lhs/rhs " + sci(worst_ratio)};
}

const std::vector<std::pair<std::string, WickMonomial>>& grid_words() {
  static const std::vector<std::pair<std::string, WickMonomial>> words = {
      {"(1,0)", {{{0}, {}}, QPolynomial(1)}},
      {"(0,1)", {{{}, {0}}, QPolynomial(1)}},
      {"(1,1)", {{{0}, {0}}, QPolynomial(1)}},
      {"(2,1)", {{{0, 1}, {0}}, QPolynomial(1)}},
  };
  return words;
}

Outcome proposition_grid() {
  std::size_t rows = 0, violations = 0;
  double worst = INFINITY;
  for (double q : {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9})
    for (const auto& [id, word] : grid_words()) {
      std::vector<std::pair<SeqKind, std::uint64_t>> seqs = {
          {SeqKind::Arithmetic, 0}, {SeqKind::Random, 1}, {SeqKind::Random, 2}, {SeqKind::Random, 3}};
      for (const auto& [kind, seed] : seqs)
        for (const auto& row : cesaro_decay(word, q, 32, kind, seed)) {
          ++rows;
          if (row.norm > row.bound + kBoundTolerance) ++violations;
          worst = std::min(worst, row.margin());
        }
    }
  return {violations == 0 && rows == 7 * 4 * 4 * 32,
          std::to_string(rows) + " rows, " + std::to_string(violations) + " violations, smallest margin " + sci(worst)};
}

Outcome exact_free_law() {
  const WickMonomial word{{{0}, {}}, QPolynomial(1)};
  double worst = 0.0;
  const auto rows = cesaro_decay(word, 0.0, 32, SeqKind::Arithmetic, 0);
  for (const auto& r : rows) {
    const double n = static_cast<double>(r.n);
    worst = std::max({worst, std::abs(r.norm - std::sqrt(n)), std::abs(r.cesaro - 1.0 / std::sqrt(n))});
  }
  return {rows.size() == 32 && worst <= 1e-10, "max deviation " + sci(worst)};
}

Outcome state_agreement() {
  std::size_t checked = 0, failed = 0;
  for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    const auto r = state_agreement_suite({0, 1}, 4, q, 8, 1e-12);
    checked += r.checked;
    failed += r.failed;
  }
  const auto s4 = vacuum_expectation(to_wick(parse_expr("s(0)^4")));
  const bool s4_ok = s4 == QPolynomial(std::vector<BigInt>{2, 1});
  return {failed == 0 && s4_ok, std::to_string(checked) + " words checked, " + std::to_string(failed) +
                                    " mismatches, omega(s(0)^4) = " + s4.to_string()};
}

Outcome symmetry() {
  const auto r = symmetry_suite(1000, 20261014);
  return {r.passed(), std::to_string(r.checked) + " identities, " + std::to_string(r.failed) + " failures"};
}

Outcome psd_step() {
  double worst = INFINITY;
  for (double q : {-0.9, -0.5, 0.5, 0.9})
    for (int k = 0; k <= 3; ++k) worst = std::min(worst, psd_step_min_eigenvalue({0, 2}, k, q));
  return {worst >= -1e-10, "smallest eigenvalue " + sci(worst)};
}

Outcome number_kernel() {
  const auto fock = make(0, 1, 4);
  bool ok = true;
  std::ostringstream out;
  for (double q : {-0.5, 0.0, 0.5, 0.9}) {
    const QGeometry g(fock, q);
    const auto k = kernel_suite(g);
    const auto m = m_operator_suite(g);
    ok = ok && k.passed && m.passed;
    out << "q=" << q << " gap " << sci(k.gap) << " M min " << sci(m.min_eigenvalue) << "; ";
  }
  auto text = out.str();
  text.resize(text.size() - 2);
  return {ok, text};
}

std::string run_verify() {
  qf_config cfg;
  qf_config_default(&cfg);
  qf_text* t = nullptr;
  int failures = 0;
  if (qf_verify(&cfg, 0, &t, &failures) != QF_OK) return std::string("error: ") + qf_last_error();
  std::string s(qf_text_data(t), qf_text_size(t));
  qf_text_free(t);
  return s;
}

std::string run_mixing(const char* src, qf_seq_kind kind, qf_format format) {
  qf_config cfg;
  qf_config_default(&cfg);
  cfg.seq_kind = kind;
  cfg.seed = 7;
  cfg.max_level = 2;
  qf_expr* e = nullptr;
  if (qf_expr_parse(src, &e) != QF_OK) return std::string("error: ") + qf_last_error();
  qf_text* t = nullptr;
  int violations = 0;
  const qf_status st = qf_mixing(e, &cfg, format, &t, &violations);
  qf_expr_free(e);
  if (st != QF_OK) return std::string("error: ") + qf_last_error();
  std::string s(qf_text_data(t), qf_text_size(t));
  qf_text_free(t);
  return s;
}

Outcome determinism() {
  std::size_t compared = 0, differing = 0, errors = 0;
  auto check = [&](const std::function<std::string()>& f) {
    const std::string a = f(), b = f();
    ++compared;
    if (a.rfind("error", 0) == 0) {
      ++errors;
      std::fprintf(stderr, "%s\n", a.c_str());
    } else if (a != b) {
      ++differing;
    }
  };
  check(run_verify);
  check([] { return run_mixing("a+(0) a(0)", QF_SEQ_ARITHMETIC, QF_FORMAT_CSV); });
  check([] { return run_mixing("a+(0) a+(1) a(0)", QF_SEQ_RANDOM, QF_FORMAT_CSV); });
  check([] { return run_mixing("a(0)", QF_SEQ_RANDOM, QF_FORMAT_JSON); });
  return {differing == 0 && errors == 0, std::to_string(compared) + " output pairs, " + std::to_string(differing) +
                                             " differing, " + std::to_string(errors) + " errors"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"inner-product oracle equivalence", inner_product_oracle},
      {"gram positivity", gram_positivity},
      {"commutation relation residual", relation_residual},
      {"creator norm bound", creator_norm_bound},
      {"orthonormal creator sum bound", lemma_bound},
      {"shifted monomial sum bound grid", proposition_grid},
      {"exact q=0 law", exact_free_law},
      {"symbolic/numeric state agreement", state_agreement},
      {"symmetry suite", symmetry},
      {"psd tensor step inequality", psd_step},
      {"number operator kernel and M operator", number_kernel},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
