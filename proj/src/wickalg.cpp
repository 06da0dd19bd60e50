#include "qfock/wickalg.hpp"

#include <algorithm>
#include <sstream>

#include "qfock/error.hpp"

namespace qfock {

LetterWord WickKey::letters() const {
  LetterWord w;
  w.reserve(length());
  for (int m : creators) w.push_back(cre(m));
  for (int m : annihilators) w.push_back(ann(m));
  return w;
}

std::string to_string(const WickKey& key) {
  if (key.is_scalar()) return "1";
  return to_string(key.letters());
}

std::string to_string(const LetterWord& word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << ' ';
    os << (word[i].kind == LetterKind::Creator ? "a+(" : "a(") << word[i].mode << ')';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

WickExpr WickExpr::scalar(const QPolynomial& c) { return monomial(WickKey{}, c); }

WickExpr WickExpr::monomial(WickKey key, const QPolynomial& coeff) {
  WickExpr e;
  e.add_term(key, coeff);
  return e;
}

WickExpr WickExpr::letter(Letter l) {
  WickKey key;
  (l.kind == LetterKind::Creator ? key.creators : key.annihilators).push_back(l.mode);
  return monomial(std::move(key));
}

QPolynomial WickExpr::coeff(const WickKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? QPolynomial() : it->second;
}

std::optional<WickMonomial> WickExpr::single_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  return WickMonomial{terms_.begin()->first, terms_.begin()->second};
}

std::size_t WickExpr::max_length() const {
  std::size_t n = 0;
  for (const auto& [key, c] : terms_) n = std::max(n, key.length());
  return n;
}

void WickExpr::add_term(const WickKey& key, const QPolynomial& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WickExpr& WickExpr::operator+=(const WickExpr& o) {
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

WickExpr& WickExpr::operator-=(const WickExpr& o) {
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

WickExpr WickExpr::scaled(const QPolynomial& c) const {
  WickExpr out;
  for (const auto& [key, coeff] : terms_) out.add_term(key, coeff * c);
  return out;
}

std::string WickExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = false;
    if (c.term_count() == 1 && coeff.front() == '-') {
      negative = true;
      coeff.erase(0, 1);
    } else if (c.term_count() > 1) {
      coeff = "(" + coeff + ")";
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (key.is_scalar()) {
      os << coeff;
    } else {
      if (coeff != "1") os << coeff << ' ';
      os << qfock::to_string(key);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Position t such that word[t] is an annihilator and word[t+1] a creator.
std::optional<std::size_t> find_disorder(const LetterWord& w, RewriteStrategy strategy) {
  if (w.size() < 2) return std::nullopt;
  auto disordered = [&](std::size_t t) {
    return w[t].kind == LetterKind::Annihilator && w[t + 1].kind == LetterKind::Creator;
  };
  if (strategy == RewriteStrategy::Leftmost) {
    for (std::size_t t = 0; t + 1 < w.size(); ++t)
      if (disordered(t)) return t;
  } else {
    for (std::size_t t = w.size() - 1; t-- > 0;)
      if (disordered(t)) return t;
  }
  return std::nullopt;
}

WickKey key_of_ordered(const LetterWord& w) {
  WickKey key;
  for (const auto& l : w) (l.kind == LetterKind::Creator ? key.creators : key.annihilators).push_back(l.mode);
  return key;
}

void check_cap(std::size_t length, std::size_t cap) {
  if (length > cap) {
    std::ostringstream os;
    os << "word of length " << length << " exceeds word-length cap " << cap;
    throw Error(ErrorCode::Size, os.str());
  }
}

}  // namespace

WickExpr normal_order(const LetterWord& word, RewriteStrategy strategy, std::size_t cap) {
  check_cap(word.size(), cap);
  // Each rewrite a_i a_j^+ -> q a_j^+ a_i + δ_ij strictly lowers the number of
  // (annihilator, creator-to-its-right) pairs, so the worklist drains.
  std::map<LetterWord, QPolynomial> pending;
  pending.emplace(word, QPolynomial(1));
  WickExpr result;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    LetterWord w = std::move(node.key());
    const QPolynomial c = std::move(node.mapped());
    if (c.is_zero()) continue;
    const auto pos = find_disorder(w, strategy);
    if (!pos) {
      result.add_term(key_of_ordered(w), c);
      continue;
    }
    const std::size_t t = *pos;
    if (w[t].mode == w[t + 1].mode) {
      LetterWord contracted;
      contracted.reserve(w.size() - 2);
      contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
      contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 2, w.end());
      pending[std::move(contracted)] += c;
    }
    std::swap(w[t], w[t + 1]);
    pending[std::move(w)] += c * QPolynomial::monomial(1, 1);
  }
  return result;
}

WickExpr multiply(const WickExpr& x, const WickExpr& y, std::size_t cap) {
  WickExpr out;
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      check_cap(kx.length() + ky.length(), cap);
      LetterWord w = kx.letters();
      const LetterWord wy = ky.letters();
      w.insert(w.end(), wy.begin(), wy.end());
      out += normal_order(w, RewriteStrategy::Leftmost, cap).scaled(cx * cy);
    }
  }
  return out;
}

QPolynomial vacuum_expectation(const WickExpr& x) { return x.coeff(WickKey{}); }

QPolynomial vacuum_expectation(const LetterWord& word) { return vacuum_expectation(normal_order(word)); }

namespace {

template <class F>
WickExpr map_modes(const WickExpr& x, F f) {
  WickExpr out;
  for (const auto& [key, c] : x.terms()) {
    WickKey k = key;
    for (int& m : k.creators) m = f(m);
    for (int& m : k.annihilators) m = f(m);
    out.add_term(k, c);
  }
  return out;
}

template <class F>
LetterWord map_modes(const LetterWord& w, F f) {
  LetterWord out = w;
  for (auto& l : out) l.mode = f(l.mode);
  return out;
}

}  // namespace

WickExpr shift(const WickExpr& x, int k) {
  return map_modes(x, [k](int m) { return m + k; });
}
LetterWord shift(const LetterWord& word, int k) {
  return map_modes(word, [k](int m) { return m + k; });
}

WickExpr time_reverse(const WickExpr& x) {
  return map_modes(x, [](int m) { return -m; });
}
LetterWord time_reverse(const LetterWord& word) {
  return map_modes(word, [](int m) { return -m; });
}

WickExpr adjoint(const WickExpr& x) {
  WickExpr out;
  for (const auto& [key, c] : x.terms()) {
    WickKey k;
    k.creators.assign(key.annihilators.rbegin(), key.annihilators.rend());
    k.annihilators.assign(key.creators.rbegin(), key.creators.rend());
    out.add_term(k, c);
  }
  return out;
}

LetterWord adjoint(const LetterWord& word) {
  LetterWord out(word.rbegin(), word.rend());
  for (auto& l : out) l.kind = l.kind == LetterKind::Creator ? LetterKind::Annihilator : LetterKind::Creator;
  return out;
}

}  // namespace qfock
