#pragma once

// Permutations, inversion counts and exact polynomials in q.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qfock {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultFactorialCap = 8;

/// A bijection of {1..n}, stored as the image list (p(1), ..., p(n)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  /// 1-indexed evaluation p(k).
  int operator()(std::size_t k) const { return images_.at(k - 1); }
  const std::vector<int>& images() const noexcept { return images_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// #{(a,b) : a < b, p(a) > p(b)}.
std::size_t inversions(const Permutation& p);

/// All n! permutations in lexicographic order of their image lists.
/// Throws ErrorCode::Size when n exceeds `cap`.
std::vector<Permutation> all_permutations(std::size_t n, std::size_t cap = kDefaultFactorialCap);

/// Univariate polynomial in q with exact integer coefficients. Canonical:
/// no trailing zero coefficient, so the zero polynomial has no coefficients.
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(long long constant);  // NOLINT(google-explicit-constructor)
  explicit QPolynomial(std::vector<BigInt> coeffs);

  /// c * q^k
  static QPolynomial monomial(const BigInt& c, std::size_t k);
  /// 1 + q + ... + q^(k-1)
  static QPolynomial q_integer(std::size_t k);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  std::size_t term_count() const;
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  BigInt coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

  double evaluate(double q) const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial& operator*=(const QPolynomial& o);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(QPolynomial a, const QPolynomial& b) { return a *= b; }
  QPolynomial operator-() const;

  bool operator==(const QPolynomial&) const = default;

  /// Canonical text form, ascending powers: "2 + q", "1 - 3*q^2", "0".
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Sum over all permutations of S_n of q^{inversions}, by enumeration.
QPolynomial q_factorial(std::size_t n, std::size_t cap = kDefaultFactorialCap);

}  // namespace qfock
