#include "qfock/expr.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "qfock/error.hpp"

namespace qfock {

namespace {

ExprPtr make(ExprAst e) { return std::make_shared<const ExprAst>(std::move(e)); }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprAst parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    ExprAst e = parse_sum();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "parse error at column " << (pos_ + 1) << ": " << msg;
    throw Error(ErrorCode::Parse, os.str());
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  // Consumes `c` after optional whitespace.
  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool starts_with(std::string_view word) const { return src_.substr(pos_).starts_with(word); }

  long long parse_uint_value() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const int d = src_[pos_++] - '0';
      if (v > (std::numeric_limits<int>::max() - d) / 10) fail("integer out of range");
      v = v * 10 + d;
    }
    return v;
  }

  int parse_int_value(const char* what) {
    skip_ws();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
      skip_ws();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string(what) + " must be an integer");
    const long long v = parse_uint_value();
    return static_cast<int>(negative ? -v : v);
  }

  unsigned parse_q_power() {
    // 'q' already consumed
    if (!accept('^')) return 1;
    return static_cast<unsigned>(parse_uint_value());
  }

  ExprAst parse_sum() {
    ast::Sum sum;
    skip_ws();
    long long sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    sum.terms.push_back(parse_prod(sign));
    for (;;) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        sum.terms.push_back(parse_prod(sign));
      } else {
        break;
      }
    }
    return ExprAst{std::move(sum)};
  }

  ast::SumTerm parse_prod(long long sign) {
    skip_ws();
    Coefficient coeff;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff.value = parse_uint_value();
      have_coeff = true;
      if (accept('*')) {
        skip_ws();
        if (peek() != 'q') fail("expected 'q^' after '*'");
        ++pos_;
        coeff.q_power = parse_q_power();
      }
    } else if (peek() == 'q') {
      ++pos_;
      coeff.q_power = parse_q_power();
      have_coeff = true;
    }
    coeff.value *= sign;

    ast::Product prod;
    while (starts_atom()) prod.factors.push_back(make(parse_atom()));
    if (prod.factors.empty() && !have_coeff) {
      if (at_end()) fail("expected a term");
      fail(std::string("unknown token '") + peek() + "'");
    }
    return ast::SumTerm{coeff, make(ExprAst{std::move(prod)})};
  }

  bool starts_atom() {
    skip_ws();
    const char c = peek();
    return c == 'a' || c == 's' || c == '(';
  }

  ExprAst parse_atom() {
    skip_ws();
    ExprAst base;
    if (starts_with("alpha")) {
      pos_ += 5;
      expect('^');
      const int k = parse_int_value("shift exponent");
      expect('(');
      ExprAst body = parse_sum();
      expect(')');
      base = ExprAst{ast::ShiftApply{k, make(std::move(body))}};
    } else if (peek() == 'a') {
      ++pos_;
      const bool creator = accept('+');
      expect('(');
      const int mode = parse_int_value("mode");
      expect(')');
      base = creator ? ExprAst{ast::Creator{mode}} : ExprAst{ast::Annihilator{mode}};
    } else if (peek() == 's') {
      ++pos_;
      expect('(');
      const int mode = parse_int_value("mode");
      expect(')');
      base = ExprAst{ast::Field{mode}};
    } else if (peek() == '(') {
      ++pos_;
      base = parse_sum();
      expect(')');
    } else {
      fail(std::string("unknown token '") + peek() + "'");
    }
    while (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      const long long e = parse_uint_value();
      if (e == 0) {
        pos_ = at;
        fail("exponent must be positive");
      }
      base = ExprAst{ast::Power{make(std::move(base)), static_cast<unsigned>(e)}};
    }
    return base;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void print(std::ostream& os, const ExprAst& e);

// A Sum below the top level is a parenthesised atom.
void print_atom(std::ostream& os, const ExprAst& e) {
  const bool group = std::holds_alternative<ast::Sum>(e.node);
  if (group) os << '(';
  print(os, e);
  if (group) os << ')';
}

void print_coeff_magnitude(std::ostream& os, long long mag, unsigned q_power) {
  if (q_power == 0) {
    os << mag;
  } else {
    if (mag != 1) os << mag << '*';
    os << 'q';
    if (q_power != 1) os << '^' << q_power;
  }
}

void print_sum(std::ostream& os, const ast::Sum& s) {
  for (std::size_t t = 0; t < s.terms.size(); ++t) {
    const auto& [coeff, term] = s.terms[t];
    const bool negative = coeff.value < 0;
    const long long mag = negative ? -coeff.value : coeff.value;
    if (t == 0) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    const auto& factors = std::get<ast::Product>(term->node).factors;
    const bool unit = mag == 1 && coeff.q_power == 0;
    if (factors.empty() || !unit) {
      print_coeff_magnitude(os, mag, coeff.q_power);
      if (!factors.empty()) os << ' ';
    }
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (f) os << ' ';
      print_atom(os, *factors[f]);
    }
  }
}

void print(std::ostream& os, const ExprAst& e) {
  std::visit(overloaded{
                 [&](const ast::Creator& c) { os << "a+(" << c.mode << ')'; },
                 [&](const ast::Annihilator& a) { os << "a(" << a.mode << ')'; },
                 [&](const ast::Field& f) { os << "s(" << f.mode << ')'; },
                 [&](const ast::Product& p) {
                   for (std::size_t f = 0; f < p.factors.size(); ++f) {
                     if (f) os << ' ';
                     print_atom(os, *p.factors[f]);
                   }
                 },
                 [&](const ast::Sum& s) { print_sum(os, s); },
                 [&](const ast::Power& p) {
                   print_atom(os, *p.base);
                   os << '^' << p.exponent;
                 },
                 [&](const ast::ShiftApply& s) {
                   os << "alpha^" << s.k << '(';
                   print(os, *s.body);
                   os << ')';
                 },
             },
             e.node);
}

ExprAst lower(const ExprAst& e, int offset) {
  return std::visit(
      overloaded{
          [&](const ast::Creator& c) { return ExprAst{ast::Creator{c.mode + offset}}; },
          [&](const ast::Annihilator& a) { return ExprAst{ast::Annihilator{a.mode + offset}}; },
          [&](const ast::Field& f) { return ExprAst{ast::Field{f.mode + offset}}; },
          [&](const ast::Product& p) {
            ast::Product out;
            for (const auto& f : p.factors) {
              ExprAst x = lower(*f, offset);
              // splice a group holding one unit-coefficient product, so that
              // "alpha^2(a+(0) a(3))" lowers to "a+(2) a(5)"
              if (const auto* sum = std::get_if<ast::Sum>(&x.node);
                  sum && sum->terms.size() == 1 && sum->terms[0].coeff == Coefficient{}) {
                const auto& inner = std::get<ast::Product>(sum->terms[0].term->node).factors;
                out.factors.insert(out.factors.end(), inner.begin(), inner.end());
              } else {
                out.factors.push_back(make(std::move(x)));
              }
            }
            return ExprAst{std::move(out)};
          },
          [&](const ast::Sum& s) {
            ast::Sum out;
            for (const auto& t : s.terms) out.terms.push_back({t.coeff, make(lower(*t.term, offset))});
            return ExprAst{std::move(out)};
          },
          [&](const ast::Power& p) { return ExprAst{ast::Power{make(lower(*p.base, offset)), p.exponent}}; },
          [&](const ast::ShiftApply& s) {
            // A shift of a parenthesised body becomes a parenthesised atom.
            return lower(*s.body, offset + s.k);
          },
      },
      e.node);
}

}  // namespace

bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.node.index() != b.node.index()) return false;
  auto same = [](const ExprPtr& x, const ExprPtr& y) { return *x == *y; };
  return std::visit(
      overloaded{
          [&](const ast::Creator& x) { return x.mode == std::get<ast::Creator>(b.node).mode; },
          [&](const ast::Annihilator& x) { return x.mode == std::get<ast::Annihilator>(b.node).mode; },
          [&](const ast::Field& x) { return x.mode == std::get<ast::Field>(b.node).mode; },
          [&](const ast::Product& x) {
            const auto& y = std::get<ast::Product>(b.node);
            if (x.factors.size() != y.factors.size()) return false;
            for (std::size_t i = 0; i < x.factors.size(); ++i)
              if (!same(x.factors[i], y.factors[i])) return false;
            return true;
          },
          [&](const ast::Sum& x) {
            const auto& y = std::get<ast::Sum>(b.node);
            if (x.terms.size() != y.terms.size()) return false;
            for (std::size_t i = 0; i < x.terms.size(); ++i)
              if (!(x.terms[i].coeff == y.terms[i].coeff) || !same(x.terms[i].term, y.terms[i].term)) return false;
            return true;
          },
          [&](const ast::Power& x) {
            const auto& y = std::get<ast::Power>(b.node);
            return x.exponent == y.exponent && same(x.base, y.base);
          },
          [&](const ast::ShiftApply& x) {
            const auto& y = std::get<ast::ShiftApply>(b.node);
            return x.k == y.k && same(x.body, y.body);
          },
      },
      a.node);
}

ExprAst parse_expr(std::string_view src) { return Parser(src).parse(); }

std::string to_string(const ExprAst& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

ExprAst lower_shifts(const ExprAst& e) { return lower(e, 0); }

WickExpr to_wick(const ExprAst& e, std::size_t cap) {
  return std::visit(overloaded{
                        [&](const ast::Creator& c) { return WickExpr::letter(cre(c.mode)); },
                        [&](const ast::Annihilator& a) { return WickExpr::letter(ann(a.mode)); },
                        [&](const ast::Field& f) { return WickExpr::letter(ann(f.mode)) + WickExpr::letter(cre(f.mode)); },
                        [&](const ast::Product& p) {
                          WickExpr acc = WickExpr::one();
                          for (const auto& f : p.factors) acc = multiply(acc, to_wick(*f, cap), cap);
                          return acc;
                        },
                        [&](const ast::Sum& s) {
                          WickExpr acc;
                          for (const auto& t : s.terms) acc += to_wick(*t.term, cap).scaled(t.coeff.polynomial());
                          return acc;
                        },
                        [&](const ast::Power& p) {
                          const WickExpr base = to_wick(*p.base, cap);
                          WickExpr acc = base;
                          for (unsigned i = 1; i < p.exponent; ++i) acc = multiply(acc, base, cap);
                          return acc;
                        },
                        [&](const ast::ShiftApply& s) { return shift(to_wick(*s.body, cap), s.k); },
                    },
                    e.node);
}

std::set<int> modes_of(const ExprAst& e) {
  std::set<int> out;
  auto collect = [&](auto&& self, const ExprAst& x, int offset) -> void {
    std::visit(overloaded{
                   [&](const ast::Creator& c) { out.insert(c.mode + offset); },
                   [&](const ast::Annihilator& a) { out.insert(a.mode + offset); },
                   [&](const ast::Field& f) { out.insert(f.mode + offset); },
                   [&](const ast::Product& p) {
                     for (const auto& f : p.factors) self(self, *f, offset);
                   },
                   [&](const ast::Sum& s) {
                     for (const auto& t : s.terms) self(self, *t.term, offset);
                   },
                   [&](const ast::Power& p) { self(self, *p.base, offset); },
                   [&](const ast::ShiftApply& s) { self(self, *s.body, offset + s.k); },
               },
               x.node);
  };
  collect(collect, e, 0);
  return out;
}

}  // namespace qfock
