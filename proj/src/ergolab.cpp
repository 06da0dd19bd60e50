#include "qfock/ergolab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "format.hpp"
#include "qfock/error.hpp"

namespace qfock {

std::string to_string(SeqKind kind) { return kind == SeqKind::Arithmetic ? "arith" : "random"; }

Subsequence::Subsequence(std::vector<int> values) : values_(std::move(values)) {
  for (std::size_t l = 0; l < values_.size(); ++l) {
    if (values_[l] < 0 || (l > 0 && values_[l] <= values_[l - 1]))
      throw Error(ErrorCode::InvalidArgument, "subsequence must be strictly increasing and nonnegative");
  }
}

Subsequence Subsequence::arithmetic(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Subsequence(std::move(v));
}

Subsequence Subsequence::random(std::size_t n, std::uint64_t seed) {
  std::vector<int> pool(4 * n + 1);
  std::iota(pool.begin(), pool.end(), 0);
  UniformStream rng(seed);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t pick = l + static_cast<std::size_t>(rng.next_bits() % (pool.size() - l));
    std::swap(pool[l], pool[pick]);
  }
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  return Subsequence(std::move(pool));
}

Subsequence Subsequence::prefix(std::size_t n) const {
  return Subsequence(std::vector<int>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size()))));
}

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

std::uint64_t UniformStream::next_bits() { return engine_(); }

double UniformStream::next() {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

// ---------------------------------------------------------------------------

LemmaTrial lemma_bound_eval(const QGeometry& geometry, std::span<const Eigen::VectorXd> xis) {
  const TruncatedFock& fock = geometry.fock();
  const std::size_t n = xis.size();
  if (n > static_cast<std::size_t>(fock.window().size()))
    throw Error(ErrorCode::InvalidArgument, "number of orthonormal vectors exceeds the window size");
  LemmaTrial trial;
  trial.n = n;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fock.size()));
  double max_xi = 0.0;
  const auto top = static_cast<Eigen::Index>(fock.level_begin(fock.max_level()));
  for (std::size_t l = 0; l < n; ++l) {
    const Eigen::VectorXd& xi = xis[l];
    if (xi.size() != sum.size()) throw Error(ErrorCode::InvalidArgument, "vector does not match the fock dimension");
    if (xi.tail(sum.size() - top).cwiseAbs().maxCoeff() != 0.0)
      throw Error(ErrorCode::Precondition, "vectors must vanish on the top truncation level");
    sum += matrix_creator(fock.window().lo + static_cast<int>(l), geometry.fock_ptr()).apply(xi);
    max_xi = std::max(max_xi, geometry.norm(xi));
  }
  trial.lhs = geometry.norm(sum);
  trial.rhs = std::sqrt(static_cast<double>(n) / (1.0 - std::abs(geometry.q()))) * max_xi;
  return trial;
}

LemmaTrial lemma_bound_trial(const QGeometry& geometry, std::size_t n, std::uint64_t seed, int xi_level) {
  const TruncatedFock& fock = geometry.fock();
  if (xi_level < 0 || xi_level >= fock.max_level())
    throw Error(ErrorCode::InvalidArgument, "vector level must lie below the top truncation level");
  UniformStream rng(seed);
  std::vector<Eigen::VectorXd> xis;
  for (std::size_t l = 0; l < n; ++l) {
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fock.size()));
    for (std::size_t i = fock.level_begin(xi_level); i < fock.level_end(xi_level); ++i)
      xi[static_cast<Eigen::Index>(i)] = rng.next();
    xis.push_back(std::move(xi));
  }
  return lemma_bound_eval(geometry, xis);
}

// ---------------------------------------------------------------------------

double shifted_sum_bound(std::size_t n, std::size_t creators, std::size_t annihilators, double q) {
  return std::sqrt(static_cast<double>(n) / std::pow(1.0 - std::abs(q), static_cast<double>(creators + annihilators)));
}

namespace {

void require_nonscalar(const WickMonomial& word) {
  if (word.key.is_scalar())
    throw Error(ErrorCode::Precondition, "shifted-sum bound needs at least one creator or annihilator");
}

std::pair<int, int> mode_range(const WickKey& key) {
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (int m : key.creators) lo = std::min(lo, m), hi = std::max(hi, m);
  for (int m : key.annihilators) lo = std::min(lo, m), hi = std::max(hi, m);
  return {lo, hi};
}

LevelOperator shifted_term(const WickMonomial& word, int k, const FockPtr& fock, double q) {
  const WickExpr shifted = shift(WickExpr::monomial(word.key, QPolynomial(1)), k);
  return matrix_of_expr(shifted, fock, q);
}

DecayRow make_row(const WickMonomial& word, std::size_t n, double norm, double q, SeqKind kind, std::uint64_t seed) {
  DecayRow row;
  row.word_id = to_string(word.key);
  row.q = q;
  row.seq_kind = kind;
  row.seed = seed;
  row.n = n;
  row.i = word.key.creators.size();
  row.j = word.key.annihilators.size();
  const double scale = std::abs(word.coeff.evaluate(q));
  row.norm = scale * norm;
  row.cesaro = row.norm / static_cast<double>(n);
  row.bound = scale * shifted_sum_bound(n, row.i, row.j, q);
  return row;
}

}  // namespace

DecayRow prop_bound_check(const WickMonomial& word, const Subsequence& seq, const QGeometry& geometry, SeqKind kind,
                          std::uint64_t seed) {
  require_nonscalar(word);
  if (seq.size() == 0) throw Error(ErrorCode::InvalidArgument, "subsequence must be nonempty");
  LevelOperator sum = LevelOperator::zero(geometry.fock_ptr());
  for (int k : seq.values()) sum += shifted_term(word, k, geometry.fock_ptr(), geometry.q());
  return make_row(word, seq.size(), op_norm_q(sum, geometry).value, geometry.q(), kind, seed);
}

std::vector<DecayRow> cesaro_decay(const WickMonomial& word, double q, std::size_t nmax, SeqKind kind,
                                   std::uint64_t seed, const DecayOptions& options) {
  require_nonscalar(word);
  require_q_in_domain(q);
  if (nmax == 0) throw Error(ErrorCode::InvalidArgument, "nmax must be positive");
  const Subsequence seq = kind == SeqKind::Arithmetic ? Subsequence::arithmetic(nmax) : Subsequence::random(nmax, seed);
  const auto [lo, hi] = mode_range(word.key);
  const int reach = kind == SeqKind::Arithmetic ? static_cast<int>(nmax) : static_cast<int>(4 * nmax);
  const ModeWindow window{lo, hi + reach};

  FockPtr fock;
  try {
    fock = std::make_shared<const TruncatedFock>(TruncatedFock::build(window, options.max_level, options.basis_cap));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Size) throw;
    std::size_t feasible = 0;
    for (std::size_t n = nmax; n-- > 1;) {
      const int r = kind == SeqKind::Arithmetic ? static_cast<int>(n) : static_cast<int>(4 * n);
      const double w = static_cast<double>(hi + r - lo + 1);
      double total = 0.0, p = 1.0;
      for (int k = 0; k <= options.max_level; ++k, p *= w) total += p;
      if (total <= static_cast<double>(options.basis_cap)) {
        feasible = n;
        break;
      }
    }
    std::ostringstream os;
    os << e.what() << "; the largest feasible nmax at max level " << options.max_level << " is " << feasible;
    throw Error(ErrorCode::Size, os.str());
  }
  const QGeometry geometry(fock, q);

  std::vector<DecayRow> rows;
  rows.reserve(nmax);
  LevelOperator sum = LevelOperator::zero(fock);
  for (std::size_t n = 1; n <= nmax; ++n) {
    sum += shifted_term(word, seq.values()[n - 1], fock, q);
    rows.push_back(make_row(word, n, op_norm_q(sum, geometry).value, q, kind, seed));
  }
  return rows;
}

std::string decay_csv_header() { return "word,q,seq_kind,seed,n,i,j,norm,cesaro,bound,margin"; }

std::string decay_csv(std::span<const DecayRow> rows, bool header) {
  using detail::fmt_double;
  std::ostringstream os;
  if (header) os << decay_csv_header() << '\n';
  for (const auto& r : rows) {
    os << r.word_id << ',' << fmt_double(r.q) << ',' << to_string(r.seq_kind) << ',' << r.seed << ',' << r.n << ','
       << r.i << ',' << r.j << ',' << fmt_double(r.norm) << ',' << fmt_double(r.cesaro) << ',' << fmt_double(r.bound)
       << ',' << fmt_double(r.margin()) << '\n';
  }
  return os.str();
}

std::string decay_json(std::span<const DecayRow> rows) {
  using detail::fmt_double;
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    os << (k ? ",\n " : "\n ") << "{\"word\": \"" << r.word_id << "\", \"q\": " << fmt_double(r.q)
       << ", \"seq_kind\": \"" << to_string(r.seq_kind) << "\", \"seed\": " << r.seed << ", \"n\": " << r.n
       << ", \"i\": " << r.i << ", \"j\": " << r.j << ", \"norm\": " << fmt_double(r.norm)
       << ", \"cesaro\": " << fmt_double(r.cesaro) << ", \"bound\": " << fmt_double(r.bound)
       << ", \"margin\": " << fmt_double(r.margin()) << '}';
  }
  os << "\n]\n";
  return os.str();
}

}  // namespace qfock
