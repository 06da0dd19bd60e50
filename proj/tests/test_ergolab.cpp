#include <cmath>
#include <memory>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "qfock/ergolab.hpp"
#include "qfock/error.hpp"

using namespace qfock;

namespace {

FockPtr make(int lo, int hi, int n) { return std::make_shared<const TruncatedFock>(TruncatedFock::build({lo, hi}, n)); }

WickMonomial mono(std::vector<int> c, std::vector<int> a) { return {{std::move(c), std::move(a)}, QPolynomial(1)}; }

}  // namespace

TEST_CASE("subsequences") {
  CHECK(Subsequence::arithmetic(4).values() == std::vector<int>{0, 1, 2, 3});
  const auto r = Subsequence::random(10, 3);
  CHECK(r.size() == 10);
  for (std::size_t k = 1; k < r.size(); ++k) CHECK(r.values()[k - 1] < r.values()[k]);
  CHECK(r.values().back() <= 40);
  CHECK(Subsequence::random(10, 3).values() == r.values());
  CHECK(Subsequence::random(10, 4).values() != r.values());
  CHECK(r.prefix(3).values() == std::vector<int>(r.values().begin(), r.values().begin() + 3));
  CHECK_THROWS_AS(Subsequence({2, 2}), Error);
  CHECK_THROWS_AS(Subsequence({-1, 2}), Error);
}

TEST_CASE("uniform stream") {
  UniformStream a(5), b(5);
  for (int k = 0; k < 100; ++k) {
    const double x = a.next();
    CHECK(x == b.next());
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("lemma bound examples") {
  const auto f = make(0, 1, 2);
  {
    QGeometry g(f, 0.0);
    std::vector<Eigen::VectorXd> xis{Eigen::VectorXd::Unit(Eigen::Index(f->size()), 0)};
    const auto t = lemma_bound_eval(g, xis);
    CHECK(t.lhs == doctest::Approx(1.0));
    CHECK(t.rhs == doctest::Approx(1.0));
  }
  {
    QGeometry g(f, 0.5);
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(Eigen::Index(f->size()));
    xi(1) = 0.3;
    xi(2) = -0.8;
    std::vector<Eigen::VectorXd> xis{xi};
    const auto t = lemma_bound_eval(g, xis);
    CHECK(t.rhs == doctest::Approx(std::sqrt(2.0) * g.norm(xi)));
    CHECK(t.holds());
    std::vector<Eigen::VectorXd> zeros(2, Eigen::VectorXd::Zero(Eigen::Index(f->size())));
    const auto z = lemma_bound_eval(g, zeros);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
  }
}

TEST_CASE("lemma bound trials") {
  const auto f = make(0, 3, 3);
  for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    QGeometry g(f, q);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto t = lemma_bound_trial(g, 1 + seed % 4, seed, int(seed % 3));
      CHECK(t.holds());
      CHECK(t.lhs > 0.0);
    }
  }
  QGeometry g(f, 0.5);
  CHECK_THROWS_AS(lemma_bound_trial(g, 5, 1, 0), Error);
  CHECK_THROWS_AS(lemma_bound_trial(g, 2, 1, 3), Error);
}

TEST_CASE("shifted sum bound and proposition rows") {
  CHECK(shifted_sum_bound(16, 1, 0, 0.5) == doctest::Approx(std::sqrt(32.0)));
  CHECK(shifted_sum_bound(1, 1, 1, 0.5) == doctest::Approx(2.0));

  const auto f = make(0, 8, 2);
  QGeometry g0(f, 0.0);
  const auto row = prop_bound_check(mono({0}, {}), Subsequence::arithmetic(8), g0);
  CHECK(row.norm == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(row.bound == doctest::Approx(std::sqrt(8.0)));
  CHECK(row.cesaro == doctest::Approx(row.norm / 8));

  for (double q : {-0.6, 0.5}) {
    QGeometry g(f, q);
    const auto c = prop_bound_check(mono({0}, {}), Subsequence::arithmetic(5), g);
    const auto a = prop_bound_check(mono({}, {0}), Subsequence::arithmetic(5), g);
    CHECK(a.norm == doctest::Approx(c.norm).epsilon(1e-10));
  }
  QGeometry g(f, 0.5);
  const auto one = prop_bound_check(mono({0}, {0}), Subsequence::arithmetic(1), g);
  CHECK(one.bound == doctest::Approx(2.0));
  CHECK(one.norm <= 2.0 + 1e-8);
  CHECK(one.i == 1);
  CHECK(one.j == 1);

  try {
    prop_bound_check(mono({}, {}), Subsequence::arithmetic(2), g);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
  CHECK_THROWS_AS(prop_bound_check(mono({0}, {}), Subsequence::arithmetic(10), g), Error);
}

TEST_CASE("cesaro decay at q = 0 follows 1/sqrt(n)") {
  const auto rows = cesaro_decay(mono({0}, {}), 0.0, 16, SeqKind::Arithmetic, 1);
  REQUIRE(rows.size() == 16);
  for (const auto& r : rows) {
    CHECK(std::abs(r.norm - std::sqrt(double(r.n))) <= 1e-10);
    CHECK(std::abs(r.cesaro - 1.0 / std::sqrt(double(r.n))) <= 1e-10);
    CHECK(std::abs(r.margin()) <= 1e-10);
  }
  const auto single = cesaro_decay(mono({0}, {}), 0.3, 1, SeqKind::Arithmetic, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].cesaro == single[0].norm);
}

TEST_CASE("cesaro decay bound at q = 0.5") {
  const auto rows = cesaro_decay(mono({0}, {}), 0.5, 16, SeqKind::Arithmetic, 1);
  CHECK(rows.back().cesaro <= std::sqrt(2.0 / 16) + 1e-8);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].cesaro <= rows[k - 1].cesaro + 1e-6);
  const auto random = cesaro_decay(mono({0}, {1}), -0.3, 6, SeqKind::Random, 11);
  for (const auto& r : random) CHECK(r.norm <= r.bound + 1e-8);
}

TEST_CASE("cesaro decay reports the feasible size") {
  DecayOptions opts;
  opts.basis_cap = 200;
  try {
    cesaro_decay(mono({0}, {}), 0.5, 30, SeqKind::Arithmetic, 1, opts);
    FAIL("expected a size error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Size);
    CHECK(std::string(e.what()).find("nmax") != std::string::npos);
  }
}

TEST_CASE("csv and json output") {
  const auto rows = cesaro_decay(mono({0}, {}), 0.0, 2, SeqKind::Arithmetic, 1);
  CHECK(decay_csv_header() == "word,q,seq_kind,seed,n,i,j,norm,cesaro,bound,margin");
  const auto csv = decay_csv(rows);
  CHECK(csv.rfind("word,q,seq_kind,seed,n,i,j,norm,cesaro,bound,margin\n", 0) == 0);
  CHECK(csv.find("a+(0),0,arith,1,1,1,0,1,1,1,0\n") != std::string::npos);
  CHECK(decay_csv(rows, false).find("word,") == std::string::npos);
  const auto doc = nlohmann::json::parse(decay_json(rows));
  REQUIRE(doc.size() == 2);
  CHECK(doc[1]["seq_kind"] == "arith");
  CHECK(doc[1]["n"] == 2);
  CHECK(doc[1]["norm"].get<double>() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("symmetry and confluence suites") {
  const auto s = symmetry_suite(200, 9);
  CHECK(s.passed());
  CHECK(s.checked > 1000);
  const auto c = confluence_suite(4, 200, 9);
  CHECK(c.passed());
}

TEST_CASE("kernel suite") {
  {
    QGeometry g(make(0, 1, 2), 0.0);
    const auto k = kernel_suite(g);
    CHECK(k.passed);
    CHECK(k.gap == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k.vacuum_residual == 0.0);
  }
  {
    QGeometry g(make(0, 1, 3), 0.9);
    const auto k = kernel_suite(g);
    CHECK(k.passed);
    CHECK(k.gap > 0.0);
  }
  QGeometry g(make(0, 1, 3), -0.7);
  const auto m = m_operator_suite(g);
  CHECK(m.passed);
  CHECK(m.min_eigenvalue > 0.0);
}

TEST_CASE("state agreement and psd step") {
  CHECK(state_agreement_suite({0, 1}, 2, 0.5, 4).passed());
  for (double q : {-0.9, 0.5}) CHECK(psd_step_min_eigenvalue({0, 1}, 2, q) >= -1e-10);
}

TEST_CASE("verify and its fault hook") {
  RunConfig cfg;
  const auto ok = verify(cfg);
  CHECK(ok.passed());
  CHECK(ok.text().find("FAIL") == std::string::npos);
  VerifyOptions bad;
  bad.inject_gram_fault = true;
  CHECK_FALSE(verify(cfg, bad).passed());
  cfg.q = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
