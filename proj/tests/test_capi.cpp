#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qfock/qfock.h"

namespace {

std::string take(qf_text* t) {
  std::string s(qf_text_data(t), qf_text_size(t));
  qf_text_free(t);
  return s;
}

}  // namespace

TEST_CASE("c api: parse, canonical form, expectation") {
  qf_expr* e = nullptr;
  REQUIRE(qf_expr_parse("s(0)^4", &e) == QF_OK);
  qf_text* t = nullptr;
  REQUIRE(qf_expr_canonical(e, &t) == QF_OK);
  CHECK(take(t) == "s(0)^4");
  double value = 0.0;
  REQUIRE(qf_expect(e, 0.5, &t, &value) == QF_OK);
  CHECK(take(t) == "2 + q");
  CHECK(value == doctest::Approx(2.5));
  CHECK(qf_expect(e, 1.0, &t, &value) == QF_ERR_DOMAIN);
  qf_expr_free(e);

  REQUIRE(qf_expr_parse("a(0) a+(0)", &e) == QF_OK);
  REQUIRE(qf_expr_normal_form(e, &t) == QF_OK);
  CHECK(take(t).find("a+(0) a(0)") != std::string::npos);
  qf_expr_free(e);
}

TEST_CASE("c api: errors") {
  qf_expr* e = nullptr;
  CHECK(qf_expr_parse("a(0) b", &e) == QF_ERR_PARSE);
  CHECK(e == nullptr);
  CHECK(std::string(qf_last_error()).find("column") != std::string::npos);
  CHECK(qf_expr_parse(nullptr, &e) == QF_ERR_INVALID_ARGUMENT);
  CHECK(std::strcmp(qf_status_name(QF_ERR_DOMAIN), "domain error") == 0);
  qf_fock* f = nullptr;
  CHECK(qf_fock_create(2, 1, 2, &f) == QF_ERR_INVALID_ARGUMENT);
  CHECK(qf_fock_create(0, 9, 6, &f) == QF_ERR_SIZE);
  qf_expr_free(nullptr);
  qf_fock_free(nullptr);
}

TEST_CASE("c api: fock, operators, norms") {
  qf_fock* f = nullptr;
  REQUIRE(qf_fock_create(0, 1, 2, &f) == QF_OK);
  CHECK(qf_fock_size(f) == 7);
  double lam = 0.0;
  REQUIRE(qf_fock_min_gram_eigenvalue(f, 0.5, &lam) == QF_OK);
  CHECK(lam == doctest::Approx(0.5));
  qf_text* t = nullptr;
  REQUIRE(qf_fock_gram_json(f, &t) == QF_OK);
  CHECK(take(t).find("\"1 + q\"") != std::string::npos);

  qf_expr* e = nullptr;
  REQUIRE(qf_expr_parse("a+(0) + a+(1)", &e) == QF_OK);
  qf_op* op = nullptr;
  REQUIRE(qf_op_from_expr(f, e, 0.0, &op) == QF_OK);
  qf_norm_report r{};
  REQUIRE(qf_op_norm(op, &r) == QF_OK);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.method == QF_NORM_EXACT_EIGEN);
  REQUIRE(qf_op_json(op, &t) == QF_OK);
  CHECK(nlohmann::json::parse(take(t))[0]["target_level"] == 1);
  qf_op_free(op);
  qf_expr_free(e);

  REQUIRE(qf_expr_parse("a(0) a+(0)", &e) == QF_OK);
  REQUIRE(qf_op_from_expr(f, e, 0.3, &op) == QF_OK);
  double v = 0.0;
  REQUIRE(qf_op_vacuum_expectation(op, &v) == QF_OK);
  CHECK(v == doctest::Approx(1.0));
  qf_op_free(op);
  qf_expr_free(e);

  REQUIRE(qf_expr_parse("a(5)", &e) == QF_OK);
  CHECK(qf_op_from_expr(f, e, 0.3, &op) == QF_ERR_WINDOW);
  qf_expr_free(e);
  qf_fock_free(f);
}

TEST_CASE("c api: mixing and verify") {
  qf_config cfg;
  qf_config_default(&cfg);
  CHECK(cfg.q == 0.5);
  CHECK(cfg.nmax == 16);
  cfg.q = 0.0;
  cfg.nmax = 4;
  qf_expr* e = nullptr;
  REQUIRE(qf_expr_parse("a+(0)", &e) == QF_OK);
  qf_text* t = nullptr;
  int violations = -1;
  REQUIRE(qf_mixing(e, &cfg, QF_FORMAT_CSV, &t, &violations) == QF_OK);
  CHECK(violations == 0);
  const auto csv = take(t);
  CHECK(csv.rfind("word,q,seq_kind,seed,n,i,j,norm,cesaro,bound,margin\n", 0) == 0);
  REQUIRE(qf_mixing(e, &cfg, QF_FORMAT_JSON, &t, &violations) == QF_OK);
  CHECK(nlohmann::json::parse(take(t)).size() == 4);
  qf_expr_free(e);

  REQUIRE(qf_expr_parse("s(0)", &e) == QF_OK);
  CHECK(qf_mixing(e, &cfg, QF_FORMAT_CSV, &t, &violations) == QF_ERR_PRECONDITION);
  qf_expr_free(e);
  REQUIRE(qf_expr_parse("3", &e) == QF_OK);
  CHECK(qf_mixing(e, &cfg, QF_FORMAT_CSV, &t, &violations) == QF_ERR_PRECONDITION);
  qf_expr_free(e);

  qf_config_default(&cfg);
  int failures = -1;
  REQUIRE(qf_verify(&cfg, 0, &t, &failures) == QF_OK);
  CHECK(failures == 0);
  qf_text_free(t);
  REQUIRE(qf_verify(&cfg, 1, &t, &failures) == QF_OK);
  CHECK(failures > 0);
  qf_text_free(t);
  cfg.q = -1.0;
  CHECK(qf_verify(&cfg, 0, &t, &failures) == QF_ERR_DOMAIN);
}
