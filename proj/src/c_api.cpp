#include "qfock/qfock.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "qfock/ergolab.hpp"
#include "qfock/error.hpp"
#include "qfock/expr.hpp"
#include "qfock/fockcore.hpp"
#include "qfock/qops.hpp"

struct qf_text {
  std::string data;
};

struct qf_expr {
  qfock::ExprAst ast;
};

struct qf_fock {
  qfock::FockPtr fock;
};

struct qf_op {
  qfock::LevelOperator op;
  double q;
};

namespace {

thread_local std::string g_last_error;

qf_status to_status(qfock::ErrorCode code) {
  using qfock::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return QF_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return QF_ERR_PARSE;
    case ErrorCode::Domain: return QF_ERR_DOMAIN;
    case ErrorCode::Size: return QF_ERR_SIZE;
    case ErrorCode::Conditioning: return QF_ERR_CONDITIONING;
    case ErrorCode::Precondition: return QF_ERR_PRECONDITION;
    case ErrorCode::Window: return QF_ERR_WINDOW;
  }
  return QF_ERR_INTERNAL;
}

template <class F>
qf_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QF_OK;
  } catch (const qfock::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QF_ERR_INTERNAL;
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw qfock::Error(qfock::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

qf_text* make_text(std::string s) { return new qf_text{std::move(s)}; }

qfock::RunConfig to_run_config(const qf_config& c) {
  qfock::RunConfig rc;
  rc.q = c.q;
  rc.window = qfock::ModeWindow{c.window_lo, c.window_hi};
  rc.max_level = c.max_level;
  if (c.nmax < 1) throw qfock::Error(qfock::ErrorCode::InvalidArgument, "nmax must be at least 1");
  rc.nmax = static_cast<std::size_t>(c.nmax);
  rc.seq_kind = c.seq_kind == QF_SEQ_RANDOM ? qfock::SeqKind::Random : qfock::SeqKind::Arithmetic;
  rc.seed = c.seed;
  rc.validate();
  return rc;
}

}  // namespace

extern "C" {

const char* qf_version(void) { return "1.0.0"; }

const char* qf_last_error(void) { return g_last_error.c_str(); }

const char* qf_status_name(qf_status status) {
  switch (status) {
    case QF_OK: return "ok";
    case QF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QF_ERR_PARSE: return "parse error";
    case QF_ERR_DOMAIN: return "domain error";
    case QF_ERR_SIZE: return "size error";
    case QF_ERR_CONDITIONING: return "conditioning error";
    case QF_ERR_PRECONDITION: return "precondition error";
    case QF_ERR_WINDOW: return "window error";
    case QF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qf_config_default(qf_config* config) {
  if (!config) return;
  const qfock::RunConfig rc;
  config->q = rc.q;
  config->window_lo = rc.window.lo;
  config->window_hi = rc.window.hi;
  config->max_level = rc.max_level;
  config->nmax = static_cast<int>(rc.nmax);
  config->seq_kind = QF_SEQ_ARITHMETIC;
  config->seed = rc.seed;
}

const char* qf_text_data(const qf_text* text) { return text ? text->data.c_str() : ""; }
size_t qf_text_size(const qf_text* text) { return text ? text->data.size() : 0; }
void qf_text_free(qf_text* text) { delete text; }

qf_status qf_expr_parse(const char* source, qf_expr** out) {
  return guard([&] {
    require(source, "source");
    require(out, "out");
    *out = new qf_expr{qfock::parse_expr(source)};
  });
}

void qf_expr_free(qf_expr* expr) { delete expr; }

qf_status qf_expr_canonical(const qf_expr* expr, qf_text** out) {
  return guard([&] {
    require(expr, "expr");
    require(out, "out");
    *out = make_text(qfock::to_string(expr->ast));
  });
}

qf_status qf_expr_normal_form(const qf_expr* expr, qf_text** out) {
  return guard([&] {
    require(expr, "expr");
    require(out, "out");
    *out = make_text(qfock::to_wick(expr->ast).to_string());
  });
}

qf_status qf_expect(const qf_expr* expr, double q, qf_text** poly, double* value) {
  return guard([&] {
    require(expr, "expr");
    qfock::require_q_in_domain(q);
    const qfock::QPolynomial omega = qfock::vacuum_expectation(qfock::to_wick(expr->ast));
    if (poly) *poly = make_text(omega.to_string());
    if (value) *value = omega.evaluate(q);
  });
}

qf_status qf_fock_create(int window_lo, int window_hi, int max_level, qf_fock** out) {
  return guard([&] {
    require(out, "out");
    auto fock = qfock::TruncatedFock::build(qfock::ModeWindow{window_lo, window_hi}, max_level);
    *out = new qf_fock{std::make_shared<const qfock::TruncatedFock>(std::move(fock))};
  });
}

void qf_fock_free(qf_fock* fock) { delete fock; }

size_t qf_fock_size(const qf_fock* fock) { return fock ? fock->fock->size() : 0; }

qf_status qf_fock_gram_json(const qf_fock* fock, qf_text** out) {
  return guard([&] {
    require(fock, "fock");
    require(out, "out");
    const auto blocks = qfock::gram_blocks(*fock->fock);
    *out = make_text(qfock::gram_blocks_json(blocks));
  });
}

qf_status qf_fock_min_gram_eigenvalue(const qf_fock* fock, double q, double* out) {
  return guard([&] {
    require(fock, "fock");
    require(out, "out");
    *out = qfock::min_gram_eigenvalue(*fock->fock, q);
  });
}

qf_status qf_op_from_expr(const qf_fock* fock, const qf_expr* expr, double q, qf_op** out) {
  return guard([&] {
    require(fock, "fock");
    require(expr, "expr");
    require(out, "out");
    *out = new qf_op{qfock::matrix_of_expr(expr->ast, fock->fock, q), q};
  });
}

void qf_op_free(qf_op* op) { delete op; }

qf_status qf_op_norm(const qf_op* op, qf_norm_report* out) {
  return guard([&] {
    require(op, "op");
    require(out, "out");
    const qfock::QGeometry geometry(op->op.fock_ptr(), op->q);
    const qfock::NormReport r = qfock::op_norm_q(op->op, geometry);
    out->value = r.value;
    out->method = r.method == qfock::NormMethod::ExactEigen ? QF_NORM_EXACT_EIGEN : QF_NORM_POWER_ITERATION;
    out->residual = r.residual;
    out->levels_used = r.levels_used;
  });
}

qf_status qf_op_json(const qf_op* op, qf_text** out) {
  return guard([&] {
    require(op, "op");
    require(out, "out");
    *out = make_text(qfock::operator_json(op->op));
  });
}

qf_status qf_op_vacuum_expectation(const qf_op* op, double* out) {
  return guard([&] {
    require(op, "op");
    require(out, "out");
    const qfock::QGeometry geometry(op->op.fock_ptr(), op->q);
    Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(op->op.fock().size()));
    vacuum[0] = 1.0;
    *out = geometry.inner(op->op.apply(vacuum), vacuum);
  });
}

qf_status qf_mixing(const qf_expr* expr, const qf_config* config, qf_format format, qf_text** out, int* violations) {
  return guard([&] {
    require(expr, "expr");
    require(config, "config");
    require(out, "out");
    const qfock::RunConfig rc = to_run_config(*config);
    const auto word = qfock::to_wick(expr->ast).single_monomial();
    if (!word)
      throw qfock::Error(qfock::ErrorCode::Precondition, "mixing needs an expression whose normal form is a single monomial");
    qfock::DecayOptions options;
    options.max_level = rc.max_level;
    const auto rows = qfock::cesaro_decay(*word, rc.q, rc.nmax, rc.seq_kind, rc.seed, options);
    int bad = 0;
    for (const auto& r : rows) bad += r.norm > r.bound + qfock::kBoundTolerance ? 1 : 0;
    if (violations) *violations = bad;
    *out = make_text(format == QF_FORMAT_JSON ? qfock::decay_json(rows) : qfock::decay_csv(rows));
  });
}

qf_status qf_verify(const qf_config* config, int inject_gram_fault, qf_text** report, int* failures) {
  return guard([&] {
    require(config, "config");
    const qfock::RunConfig rc = to_run_config(*config);
    qfock::VerifyOptions options;
    options.inject_gram_fault = inject_gram_fault != 0;
    const qfock::VerifyReport r = qfock::verify(rc, options);
    int failed = 0;
    for (const auto& s : r.suites) failed += s.passed() ? 0 : 1;
    if (failures) *failures = failed;
    if (report) *report = make_text(r.text());
  });
}

}  // extern "C"
