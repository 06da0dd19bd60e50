// qfock command-line front end. Links only the C interface.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qfock/qfock.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Owning wrappers for the C handles.
struct Text {
  qf_text* p = nullptr;
  ~Text() { qf_text_free(p); }
  std::string str() const { return std::string(qf_text_data(p), qf_text_size(p)); }
};
struct Expr {
  qf_expr* p = nullptr;
  ~Expr() { qf_expr_free(p); }
};
struct Fock {
  qf_fock* p = nullptr;
  ~Fock() { qf_fock_free(p); }
};
struct Op {
  qf_op* p = nullptr;
  ~Op() { qf_op_free(p); }
};

struct Failure {
  qf_status status;
};

void check(qf_status s) {
  if (s != QF_OK) throw Failure{s};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  qf_config config;
  qf_config_default(&config);

  CLI::App app{"q-deformed Fock space operators, vacuum expectations and shift-mixing experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string window = std::to_string(config.window_lo) + ":" + std::to_string(config.window_hi);
  std::optional<int> max_level;
  std::string seq = "arith";
  std::string format = "csv";
  std::string out_path;
  bool inject_fault = false;

  app.add_option("--q", config.q, "deformation parameter, |q| < 1")->capture_default_str();
  app.add_option("--window", window, "mode window LO:HI")->capture_default_str();
  app.add_option("--max-level", max_level, "truncation level N (default 3; 2 for mixing)");
  app.add_option("--nmax", config.nmax, "number of shifted terms for mixing")->capture_default_str();
  app.add_option("--seq", seq, "subsequence kind")->check(CLI::IsMember({"arith", "random"}))->capture_default_str();
  app.add_option("--seed", config.seed, "seed for random subsequences and samples")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", out_path, "write output to PATH instead of stdout");
  app.add_flag("--inject-gram-fault", inject_fault, "corrupt one Gram entry before verify (test hook)")->group("");

  std::string expr_src;
  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  auto* expect = app.add_subcommand("expect", "symbolic vacuum expectation of EXPR");
  auto* norm = app.add_subcommand("norm", "operator norm of EXPR under the q-inner product");
  auto* mixing = app.add_subcommand("mixing", "Cesaro decay table for a monomial EXPR");
  auto* gram = app.add_subcommand("gram", "dump the Gram blocks of the truncated basis");
  auto* matrix = app.add_subcommand("matrix", "dump the matrix of EXPR as level-pair triplets");
  for (auto* sub : {expect, norm, mixing, matrix}) sub->add_option("EXPR", expr_src, "operator expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  {
    const auto colon = window.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      config.window_lo = std::stoi(window.substr(0, colon));
      config.window_hi = std::stoi(window.substr(colon + 1));
    } catch (const std::exception&) {
      std::cerr << "error: --window expects LO:HI, got '" << window << "'\n";
      return kExitUsage;
    }
  }
  config.seq_kind = seq == "random" ? QF_SEQ_RANDOM : QF_SEQ_ARITHMETIC;
  config.max_level = max_level.value_or(mixing->parsed() ? 2 : 3);
  const bool json = format == "json";

  try {
    Output output(out_path);
    std::ostream& os = output.stream();

    if (verify->parsed()) {
      Text report;
      int failures = 0;
      check(qf_verify(&config, inject_fault ? 1 : 0, &report.p, &failures));
      os << report.str();
      return failures == 0 ? kExitOk : kExitViolation;
    }

    if (gram->parsed()) {
      Fock fock;
      Text text;
      check(qf_fock_create(config.window_lo, config.window_hi, config.max_level, &fock.p));
      check(qf_fock_gram_json(fock.p, &text.p));
      os << text.str();
      return kExitOk;
    }

    Expr expr;
    check(qf_expr_parse(expr_src.c_str(), &expr.p));
    Text canonical;
    check(qf_expr_canonical(expr.p, &canonical.p));

    if (expect->parsed()) {
      Text poly;
      double value = 0.0;
      check(qf_expect(expr.p, config.q, &poly.p, &value));
      if (json) {
        os << "{\"expr\": \"" << json_escape(canonical.str()) << "\", \"poly\": \"" << poly.str()
           << "\", \"q\": " << fmt(config.q) << ", \"value\": " << fmt(value) << "}\n";
      } else {
        os << poly.str() << '\n' << fmt(value) << '\n';
      }
      return kExitOk;
    }

    if (mixing->parsed()) {
      Text table;
      int violations = 0;
      check(qf_mixing(expr.p, &config, json ? QF_FORMAT_JSON : QF_FORMAT_CSV, &table.p, &violations));
      os << table.str();
      if (violations) std::cerr << violations << " row(s) violate the bound\n";
      return violations == 0 ? kExitOk : kExitViolation;
    }

    Fock fock;
    Op op;
    check(qf_fock_create(config.window_lo, config.window_hi, config.max_level, &fock.p));
    check(qf_op_from_expr(fock.p, expr.p, config.q, &op.p));

    if (matrix->parsed()) {
      Text text;
      check(qf_op_json(op.p, &text.p));
      os << text.str();
      return kExitOk;
    }

    qf_norm_report report;
    check(qf_op_norm(op.p, &report));
    const char* method = report.method == QF_NORM_EXACT_EIGEN ? "exact-eigen" : "power-iteration";
    if (json) {
      os << "{\"expr\": \"" << json_escape(canonical.str()) << "\", \"q\": " << fmt(config.q)
         << ", \"value\": " << fmt(report.value) << ", \"method\": \"" << method
         << "\", \"residual\": " << fmt(report.residual) << ", \"levels_used\": " << report.levels_used << "}\n";
    } else {
      os << "expr,q,value,method,residual,levels_used\n"
         << canonical.str() << ',' << fmt(config.q) << ',' << fmt(report.value) << ',' << method << ','
         << fmt(report.residual) << ',' << report.levels_used << '\n';
    }
    return kExitOk;
  } catch (const Failure& f) {
    std::cerr << "error (" << qf_status_name(f.status) << "): " << qf_last_error() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
