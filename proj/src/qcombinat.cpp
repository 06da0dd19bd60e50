#include "qfock/qcombinat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qfock/error.hpp"

namespace qfock {

void require_q_in_domain(double q) {
  if (!(std::fabs(q) < 1.0)) {
    std::ostringstream os;
    os << "q must satisfy |q| < 1, got " << q;
    throw Error(ErrorCode::Domain, os.str());
  }
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || static_cast<std::size_t>(v) > images_.size() || seen[v]) {
      throw Error(ErrorCode::InvalidArgument, "permutation images must be a rearrangement of 1..n");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

std::size_t inversions(const Permutation& p) {
  const auto& im = p.images();
  std::size_t count = 0;
  for (std::size_t a = 0; a < im.size(); ++a)
    for (std::size_t b = a + 1; b < im.size(); ++b)
      if (im[a] > im[b]) ++count;
  return count;
}

std::vector<Permutation> all_permutations(std::size_t n, std::size_t cap) {
  if (n > cap) {
    std::ostringstream os;
    os << "permutation enumeration of size " << n << " exceeds factorial cap " << cap;
    throw Error(ErrorCode::Size, os.str());
  }
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// ---------------------------------------------------------------------------

QPolynomial::QPolynomial(long long constant) {
  if (constant != 0) coeffs_.emplace_back(constant);
}

QPolynomial::QPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::monomial(const BigInt& c, std::size_t k) {
  std::vector<BigInt> coeffs(k + 1, BigInt(0));
  coeffs[k] = c;
  return QPolynomial(std::move(coeffs));
}

QPolynomial QPolynomial::q_integer(std::size_t k) {
  return QPolynomial(std::vector<BigInt>(k, BigInt(1)));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t QPolynomial::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c != 0; }));
}

double QPolynomial::evaluate(double q) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + it->convert_to<double>();
  return acc;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator*=(const QPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * o.coeffs_[b];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << 'q';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

QPolynomial q_factorial(std::size_t n, std::size_t cap) {
  std::vector<BigInt> hist;
  for (const auto& p : all_permutations(n, cap)) {
    const std::size_t inv = inversions(p);
    if (hist.size() <= inv) hist.resize(inv + 1, BigInt(0));
    hist[inv] += 1;
  }
  return QPolynomial(std::move(hist));
}

}  // namespace qfock
