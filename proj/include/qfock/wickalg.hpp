#pragma once

// Symbolic algebra of creator/annihilator words modulo
//   a_i a_j^+ - q a_j^+ a_i = δ_ij
// Every expression is kept as a sum of normal-ordered monomials with exact
// polynomial coefficients.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfock/qcombinat.hpp"

namespace qfock {

inline constexpr std::size_t kDefaultWordCap = 16;

enum class LetterKind { Creator, Annihilator };

struct Letter {
  LetterKind kind = LetterKind::Annihilator;
  int mode = 0;

  auto operator<=>(const Letter&) const = default;
};

inline Letter cre(int mode) { return {LetterKind::Creator, mode}; }
inline Letter ann(int mode) { return {LetterKind::Annihilator, mode}; }

using LetterWord = std::vector<Letter>;

/// a+(creators[0]) ... a+(creators[i-1]) a(annihilators[0]) ... a(annihilators[j-1]).
/// Ordered sequences: creators do not commute among themselves.
struct WickKey {
  std::vector<int> creators;
  std::vector<int> annihilators;

  std::size_t length() const noexcept { return creators.size() + annihilators.size(); }
  bool is_scalar() const noexcept { return creators.empty() && annihilators.empty(); }
  LetterWord letters() const;
  auto operator<=>(const WickKey&) const = default;
};

/// "a+(0) a+(1) a(2)"; the empty key prints as "1".
std::string to_string(const WickKey& key);

struct WickMonomial {
  WickKey key;
  QPolynomial coeff;
};

class WickExpr {
 public:
  using TermMap = std::map<WickKey, QPolynomial>;

  WickExpr() = default;  // zero
  static WickExpr scalar(const QPolynomial& c);
  static WickExpr one() { return scalar(QPolynomial(1)); }
  static WickExpr monomial(WickKey key, const QPolynomial& coeff = QPolynomial(1));
  static WickExpr letter(Letter l);

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of a key (zero if absent).
  QPolynomial coeff(const WickKey& key) const;
  /// The unique term, if there is exactly one.
  std::optional<WickMonomial> single_monomial() const;
  /// Longest key length among the terms.
  std::size_t max_length() const;

  void add_term(const WickKey& key, const QPolynomial& coeff);
  WickExpr& operator+=(const WickExpr& o);
  WickExpr& operator-=(const WickExpr& o);
  friend WickExpr operator+(WickExpr a, const WickExpr& b) { return a += b; }
  friend WickExpr operator-(WickExpr a, const WickExpr& b) { return a -= b; }
  WickExpr scaled(const QPolynomial& c) const;

  bool operator==(const WickExpr&) const = default;

  /// Terms in key order: "1 + (1 + q) a+(0) a(0) + q a+(1)"; zero prints "0".
  std::string to_string() const;

 private:
  TermMap terms_;
};

enum class RewriteStrategy {
  Leftmost,   // eliminate the leftmost a a+ adjacency first
  Rightmost,  // eliminate the rightmost one first
};

/// Throws ErrorCode::Size if the word is longer than `cap`.
WickExpr normal_order(const LetterWord& word, RewriteStrategy strategy = RewriteStrategy::Leftmost,
                      std::size_t cap = kDefaultWordCap);

/// Product x·y, normal-ordered. Throws ErrorCode::Size if any concatenated
/// term exceeds `cap` letters.
WickExpr multiply(const WickExpr& x, const WickExpr& y, std::size_t cap = kDefaultWordCap);

/// ω(x) = <xΩ, Ω>: the coefficient of the empty monomial.
QPolynomial vacuum_expectation(const WickExpr& x);
QPolynomial vacuum_expectation(const LetterWord& word);

/// α^k: every mode translated by k.
WickExpr shift(const WickExpr& x, int k);
LetterWord shift(const LetterWord& word, int k);

/// θ: every mode negated.
WickExpr time_reverse(const WickExpr& x);
LetterWord time_reverse(const LetterWord& word);

/// x*: word reversed, creator and annihilator swapped. Coefficients are real.
WickExpr adjoint(const WickExpr& x);
LetterWord adjoint(const LetterWord& word);

/// "a(0) a+(1)"
std::string to_string(const LetterWord& word);

}  // namespace qfock
