#include "qfock/qops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "qfock/error.hpp"

namespace qfock {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& t) {
  SparseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  return m;
}

double int_power(double q, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= q;
  return r;
}

void require_mode(const TruncatedFock& fock, int mode) {
  if (!fock.window().contains(mode)) {
    std::ostringstream os;
    os << "mode " << mode << " outside window [" << fock.window().lo << ", " << fock.window().hi << "]";
    throw Error(ErrorCode::Window, os.str());
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// ---------------------------------------------------------------------------

QGeometry::QGeometry(FockPtr fock, double q) : fock_(std::move(fock)), q_(q) {
  require_q_in_domain(q);
  const auto blocks = gram_blocks(*fock_);
  assemble(blocks);
}

QGeometry::QGeometry(FockPtr fock, std::span<const GramBlock> blocks, double q) : fock_(std::move(fock)), q_(q) {
  require_q_in_domain(q);
  if (blocks.size() != fock_->blocks().size())
    throw Error(ErrorCode::InvalidArgument, "Gram block list does not match the fock block partition");
  assemble(blocks);
}

void QGeometry::assemble(std::span<const GramBlock> blocks) {
  const std::size_t n = fock_->size();
  std::vector<Triplet> g, gi, lt, lit;
  min_eigenvalue_ = std::numeric_limits<double>::infinity();
  gram_.reserve(blocks.size());
  lower_.reserve(blocks.size());
  for (const auto& block : blocks) {
    Eigen::MatrixXd m = block.evaluate(q_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo >= kConditioningThreshold * hi) || !(hi > 0.0)) {
      std::ostringstream os;
      os << "Gram block (level " << block.key.level << ") ill-conditioned at q=" << q_ << ": eigenvalues in [" << lo
         << ", " << hi << "]";
      throw Error(ErrorCode::Conditioning, os.str());
    }
    min_eigenvalue_ = std::min(min_eigenvalue_, lo);
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::Conditioning, "Cholesky factorization of a Gram block failed");
    Eigen::MatrixXd l = llt.matrixL();
    const auto d = static_cast<Eigen::Index>(block.dim());
    Eigen::MatrixXd l_inv = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
    Eigen::MatrixXd g_inv = l_inv.transpose() * l_inv;
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const auto gr = static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(r)]);
        const auto gc = static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(c)]);
        g.emplace_back(gr, gc, m(r, c));
        gi.emplace_back(gr, gc, g_inv(r, c));
        lt.emplace_back(gr, gc, l(c, r));
        lit.emplace_back(gr, gc, l_inv(c, r));
      }
    }
    gram_.push_back(std::move(m));
    lower_.push_back(std::move(l));
  }
  gram_full_ = from_triplets(n, n, g);
  gram_inv_full_ = from_triplets(n, n, gi);
  lt_full_ = from_triplets(n, n, lt);
  lit_full_ = from_triplets(n, n, lit);
}

double QGeometry::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(gram_full_ * y); }

double QGeometry::norm(const Eigen::VectorXd& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

// ---------------------------------------------------------------------------

LevelOperator::LevelOperator(FockPtr fock, SparseMatrix matrix) : fock_(std::move(fock)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(fock_->size());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "operator matrix does not match the fock dimension");
  matrix_.makeCompressed();
}

LevelOperator LevelOperator::zero(FockPtr fock) {
  const auto n = static_cast<Eigen::Index>(fock->size());
  return LevelOperator(std::move(fock), SparseMatrix(n, n));
}

LevelOperator LevelOperator::identity(FockPtr fock) {
  const auto n = static_cast<Eigen::Index>(fock->size());
  SparseMatrix id(n, n);
  id.setIdentity();
  return LevelOperator(std::move(fock), std::move(id));
}

std::optional<int> LevelOperator::degree() const {
  std::optional<int> d;
  for (Eigen::Index c = 0; c < matrix_.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix_, c); it; ++it) {
      const int here = fock_->level_of(static_cast<std::size_t>(it.row())) - fock_->level_of(static_cast<std::size_t>(c));
      if (!d) d = here;
      else if (*d != here) return std::nullopt;
    }
  }
  return d.value_or(0);
}

LevelOperator LevelOperator::restrict_source_levels(int max_level) const {
  std::vector<Triplet> t;
  for (Eigen::Index c = 0; c < matrix_.outerSize(); ++c) {
    if (fock_->level_of(static_cast<std::size_t>(c)) > max_level) continue;
    for (SparseMatrix::InnerIterator it(matrix_, c); it; ++it) t.emplace_back(it.row(), c, it.value());
  }
  return LevelOperator(fock_, from_triplets(fock_->size(), fock_->size(), t));
}

LevelOperator LevelOperator::restrict_levels(int lo, int hi) const {
  auto inside = [&](Eigen::Index i) {
    const int l = fock_->level_of(static_cast<std::size_t>(i));
    return lo <= l && l <= hi;
  };
  std::vector<Triplet> t;
  for (Eigen::Index c = 0; c < matrix_.outerSize(); ++c) {
    if (!inside(c)) continue;
    for (SparseMatrix::InnerIterator it(matrix_, c); it; ++it)
      if (inside(it.row())) t.emplace_back(it.row(), c, it.value());
  }
  return LevelOperator(fock_, from_triplets(fock_->size(), fock_->size(), t));
}

void LevelOperator::check_same_fock(const LevelOperator& o) const {
  if (fock_ != o.fock_) throw Error(ErrorCode::InvalidArgument, "operators belong to different focks");
}

LevelOperator& LevelOperator::operator+=(const LevelOperator& o) {
  check_same_fock(o);
  matrix_ = SparseMatrix(matrix_ + o.matrix_);
  return *this;
}

LevelOperator& LevelOperator::operator-=(const LevelOperator& o) {
  check_same_fock(o);
  matrix_ = SparseMatrix(matrix_ - o.matrix_);
  return *this;
}

LevelOperator LevelOperator::operator*(const LevelOperator& o) const {
  check_same_fock(o);
  return LevelOperator(fock_, SparseMatrix(matrix_ * o.matrix_));
}

LevelOperator LevelOperator::scaled(double c) const { return LevelOperator(fock_, SparseMatrix(matrix_ * c)); }

double LevelOperator::max_abs_entry() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < matrix_.nonZeros(); ++k) m = std::max(m, std::abs(matrix_.valuePtr()[k]));
  return m;
}

// ---------------------------------------------------------------------------

LevelOperator matrix_creator(int mode, const FockPtr& fock) {
  require_mode(*fock, mode);
  std::vector<Triplet> t;
  Word target;
  for (std::size_t i = 0; i < fock->level_begin(fock->max_level()); ++i) {
    const Word& w = fock->word(i);
    target.assign(1, mode);
    target.insert(target.end(), w.begin(), w.end());
    t.emplace_back(static_cast<Eigen::Index>(*fock->index_of(target)), static_cast<Eigen::Index>(i), 1.0);
  }
  return LevelOperator(fock, from_triplets(fock->size(), fock->size(), t));
}

LevelOperator matrix_annihilator(int mode, const FockPtr& fock, double q) {
  require_mode(*fock, mode);
  require_q_in_domain(q);
  std::vector<Triplet> t;
  Word target;
  for (std::size_t i = fock->level_begin(1); i < fock->size(); ++i) {
    const Word& w = fock->word(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] != mode) continue;
      target.assign(w.begin(), w.end());
      target.erase(target.begin() + static_cast<std::ptrdiff_t>(k));
      t.emplace_back(static_cast<Eigen::Index>(*fock->index_of(target)), static_cast<Eigen::Index>(i), int_power(q, k));
    }
  }
  return LevelOperator(fock, from_triplets(fock->size(), fock->size(), t));
}

namespace {

class LetterMatrices {
 public:
  LetterMatrices(const FockPtr& fock, double q) : fock_(fock), q_(q) {}

  const LevelOperator& get(Letter l) {
    auto it = cache_.find(l);
    if (it == cache_.end()) {
      it = cache_
               .emplace(l, l.kind == LetterKind::Creator ? matrix_creator(l.mode, fock_)
                                                         : matrix_annihilator(l.mode, fock_, q_))
               .first;
    }
    return it->second;
  }

  LevelOperator word(const LetterWord& w) {
    if (w.empty()) return LevelOperator::identity(fock_);
    LevelOperator acc = get(w.front());
    for (std::size_t i = 1; i < w.size(); ++i) acc = acc * get(w[i]);
    return acc;
  }

  const FockPtr& fock() const { return fock_; }
  double q() const { return q_; }

 private:
  FockPtr fock_;
  double q_;
  std::map<Letter, LevelOperator> cache_;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

LevelOperator eval_ast(const ExprAst& e, LetterMatrices& letters) {
  return std::visit(overloaded{
                        [&](const ast::Creator& c) { return letters.get(cre(c.mode)); },
                        [&](const ast::Annihilator& a) { return letters.get(ann(a.mode)); },
                        [&](const ast::Field& f) { return letters.get(ann(f.mode)) + letters.get(cre(f.mode)); },
                        [&](const ast::Product& p) {
                          LevelOperator acc = LevelOperator::identity(letters.fock());
                          for (const auto& f : p.factors) acc = acc * eval_ast(*f, letters);
                          return acc;
                        },
                        [&](const ast::Sum& s) {
                          LevelOperator acc = LevelOperator::zero(letters.fock());
                          for (const auto& t : s.terms)
                            acc += eval_ast(*t.term, letters).scaled(t.coeff.polynomial().evaluate(letters.q()));
                          return acc;
                        },
                        [&](const ast::Power& p) {
                          const LevelOperator base = eval_ast(*p.base, letters);
                          LevelOperator acc = base;
                          for (unsigned i = 1; i < p.exponent; ++i) acc = acc * base;
                          return acc;
                        },
                        [&](const ast::ShiftApply&) -> LevelOperator {
                          throw Error(ErrorCode::InvalidArgument, "shifts must be lowered before evaluation");
                        },
                    },
                    e.node);
}

}  // namespace

LevelOperator matrix_of_word(const LetterWord& word, const FockPtr& fock, double q) {
  require_q_in_domain(q);
  for (const auto& l : word) require_mode(*fock, l.mode);
  LetterMatrices letters(fock, q);
  return letters.word(word);
}

LevelOperator matrix_of_expr(const WickExpr& x, const FockPtr& fock, double q) {
  require_q_in_domain(q);
  for (const auto& [key, c] : x.terms())
    for (const auto& l : key.letters()) require_mode(*fock, l.mode);
  LetterMatrices letters(fock, q);
  LevelOperator acc = LevelOperator::zero(fock);
  for (const auto& [key, c] : x.terms()) acc += letters.word(key.letters()).scaled(c.evaluate(q));
  return acc;
}

LevelOperator matrix_of_expr(const ExprAst& x, const FockPtr& fock, double q) {
  require_q_in_domain(q);
  const ExprAst lowered = lower_shifts(x);
  for (int m : modes_of(lowered)) require_mode(*fock, m);
  LetterMatrices letters(fock, q);
  return eval_ast(lowered, letters);
}

LevelOperator q_adjoint(const LevelOperator& a, const QGeometry& geometry) {
  if (a.fock_ptr() != geometry.fock_ptr()) throw Error(ErrorCode::InvalidArgument, "operator and geometry use different focks");
  SparseMatrix at = a.matrix().transpose();
  SparseMatrix adj = geometry.gram_inverse() * at * geometry.gram_matrix();
  adj.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  return LevelOperator(a.fock_ptr(), std::move(adj));
}

// ---------------------------------------------------------------------------

std::string to_string(NormMethod m) { return m == NormMethod::ExactEigen ? "exact-eigen" : "power-iteration"; }

SparseMatrix frame_matrix(const LevelOperator& a, const QGeometry& geometry) {
  if (a.fock_ptr() != geometry.fock_ptr()) throw Error(ErrorCode::InvalidArgument, "operator and geometry use different focks");
  SparseMatrix b = geometry.factor_transpose() * a.matrix() * geometry.factor_inverse_transpose();
  b.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  return b;
}

namespace {

struct DominantPair {
  double lambda = 0.0;
  double residual = 0.0;
  NormMethod method = NormMethod::ExactEigen;
};

DominantPair dominant_eigen(const SparseMatrix& c, const NormOptions& options) {
  const Eigen::Index n = c.rows();
  DominantPair out;
  if (static_cast<std::size_t>(n) <= options.dense_limit) {
    Eigen::MatrixXd dense(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    Eigen::Index top;
    out.lambda = es.eigenvalues().maxCoeff(&top);
    const Eigen::VectorXd v = es.eigenvectors().col(top);
    out.residual = (dense * v - out.lambda * v).norm();
    return out;
  }
  out.method = NormMethod::PowerIteration;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 1.0 / static_cast<double>(i + 1);
  v.normalize();
  double lambda = 0.0;
  for (std::size_t it = 0; it < options.power_max_iterations; ++it) {
    Eigen::VectorXd w = c * v;
    const double next = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) {
      lambda = 0.0;
      break;
    }
    out.residual = (w - next * v).norm();
    v = w / wn;
    const bool settled = std::abs(next - lambda) <= options.power_tolerance * std::max(1.0, std::abs(next));
    lambda = next;
    if (settled && out.residual <= std::sqrt(options.power_tolerance) * std::max(1.0, std::abs(next))) break;
  }
  out.lambda = lambda;
  return out;
}

}  // namespace

NormReport op_norm_q(const LevelOperator& a, const QGeometry& geometry, const NormOptions& options) {
  NormReport report;
  report.levels_used = geometry.fock().max_level();
  const SparseMatrix b = frame_matrix(a, geometry);
  if (b.nonZeros() == 0) return report;

  const TruncatedFock& fock = geometry.fock();
  const std::size_t nb = fock.blocks().size();
  // Nodes [0, nb) are source blocks, [nb, 2nb) target blocks.
  UnionFind uf(2 * nb);
  for (Eigen::Index c = 0; c < b.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(b, c); it; ++it)
      uf.unite(fock.block_of(static_cast<std::size_t>(c)), nb + fock.block_of(static_cast<std::size_t>(it.row())));

  struct Component {
    std::vector<std::size_t> src_blocks, tgt_blocks;
    std::vector<Triplet> entries;
  };
  std::map<std::size_t, Component> components;
  std::vector<char> src_seen(nb, 0), tgt_seen(nb, 0);
  for (Eigen::Index c = 0; c < b.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(b, c); it; ++it) {
      const std::size_t sb = fock.block_of(static_cast<std::size_t>(c));
      const std::size_t tb = fock.block_of(static_cast<std::size_t>(it.row()));
      auto& comp = components[uf.find(sb)];
      if (!src_seen[sb]) {
        src_seen[sb] = 1;
        comp.src_blocks.push_back(sb);
      }
      if (!tgt_seen[tb]) {
        tgt_seen[tb] = 1;
        comp.tgt_blocks.push_back(tb);
      }
      comp.entries.emplace_back(it.row(), c, it.value());
    }
  }

  std::vector<Eigen::Index> row_local(fock.size(), -1), col_local(fock.size(), -1);
  for (auto& [root, comp] : components) {
    Eigen::Index rows = 0, cols = 0;
    for (std::size_t tb : comp.tgt_blocks)
      for (std::size_t i : fock.blocks()[tb].indices) row_local[i] = rows++;
    for (std::size_t sb : comp.src_blocks)
      for (std::size_t i : fock.blocks()[sb].indices) col_local[i] = cols++;
    std::vector<Triplet> t;
    t.reserve(comp.entries.size());
    for (const auto& e : comp.entries)
      t.emplace_back(row_local[static_cast<std::size_t>(e.row())], col_local[static_cast<std::size_t>(e.col())], e.value());

    SparseMatrix bc(rows, cols);
    bc.setFromTriplets(t.begin(), t.end());
    SparseMatrix gram = cols <= rows ? SparseMatrix(bc.transpose() * bc) : SparseMatrix(bc * bc.transpose());
    const DominantPair dp = dominant_eigen(gram, options);
    const double value = std::sqrt(std::max(0.0, dp.lambda));
    if (value > report.value) report.value = value;
    report.residual = std::max(report.residual, dp.residual);
    if (dp.method == NormMethod::PowerIteration) report.method = NormMethod::PowerIteration;
  }
  return report;
}

std::vector<LevelSpectrum> q_symmetric_spectrum(const LevelOperator& a, const QGeometry& geometry, int lo, int hi) {
  const auto d = a.degree();
  if (!d || *d != 0) throw Error(ErrorCode::InvalidArgument, "spectrum requires a level-preserving operator");
  const TruncatedFock& fock = geometry.fock();
  lo = std::max(lo, 0);
  hi = std::min(hi, fock.max_level());
  const SparseMatrix s = frame_matrix(a, geometry);
  const SparseMatrix sym = SparseMatrix(0.5 * (s + SparseMatrix(s.transpose())));

  const std::size_t nb = fock.blocks().size();
  UnionFind uf(nb);
  for (Eigen::Index c = 0; c < sym.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sym, c); it; ++it)
      uf.unite(fock.block_of(static_cast<std::size_t>(c)), fock.block_of(static_cast<std::size_t>(it.row())));

  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t blk = 0; blk < nb; ++blk) {
    const int level = fock.blocks()[blk].key.level;
    if (level < lo || level > hi) continue;
    for (std::size_t i : fock.blocks()[blk].indices) members[uf.find(blk)].push_back(i);
  }

  std::map<int, LevelSpectrum> per_level;
  std::vector<Eigen::Index> local(fock.size(), -1);
  for (auto& [root, idx] : members) {
    std::sort(idx.begin(), idx.end());
    const auto n = static_cast<Eigen::Index>(idx.size());
    for (Eigen::Index k = 0; k < n; ++k) local[idx[static_cast<std::size_t>(k)]] = k;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
      for (SparseMatrix::InnerIterator it(sym, static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)])); it; ++it)
        if (local[static_cast<std::size_t>(it.row())] >= 0) m(local[static_cast<std::size_t>(it.row())], k) = it.value();
    for (std::size_t i : idx) local[i] = -1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const int level = fock.level_of(idx.front());
    auto [it, inserted] = per_level.try_emplace(level, LevelSpectrum{level, es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()});
    if (!inserted) {
      it->second.min = std::min(it->second.min, es.eigenvalues().minCoeff());
      it->second.max = std::max(it->second.max, es.eigenvalues().maxCoeff());
    }
  }
  std::vector<LevelSpectrum> out;
  for (const auto& [level, spec] : per_level) out.push_back(spec);
  return out;
}

double q_self_adjoint_defect(const LevelOperator& a, const QGeometry& geometry) {
  const SparseMatrix s = frame_matrix(a, geometry);
  const SparseMatrix diff = s - SparseMatrix(s.transpose());
  double m = 0.0;
  for (Eigen::Index k = 0; k < diff.nonZeros(); ++k) m = std::max(m, std::abs(diff.valuePtr()[k]));
  return m;
}

LevelOperator number_operator(const FockPtr& fock, double q) {
  require_q_in_domain(q);
  LevelOperator acc = LevelOperator::zero(fock);
  for (int i = fock->window().lo; i <= fock->window().hi; ++i)
    acc += matrix_creator(i, fock) * matrix_annihilator(i, fock, q);
  return acc;
}

LevelOperator m_operator(const FockPtr& fock, double q) {
  require_q_in_domain(q);
  std::vector<Triplet> t;
  t.emplace_back(0, 0, 1.0);
  Word target;
  for (std::size_t i = fock->level_begin(1); i < fock->size(); ++i) {
    const Word& w = fock->word(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      target.assign(1, w[k]);
      target.insert(target.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      target.insert(target.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
      t.emplace_back(static_cast<Eigen::Index>(*fock->index_of(target)), static_cast<Eigen::Index>(i), int_power(q, k));
    }
  }
  return LevelOperator(fock, from_triplets(fock->size(), fock->size(), t));
}

std::string operator_json(const LevelOperator& a) {
  const TruncatedFock& fock = a.fock();
  std::map<std::pair<int, int>, std::vector<std::tuple<std::size_t, std::size_t, double>>> groups;
  const SparseMatrix& m = a.matrix();
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      const int sl = fock.level_of(static_cast<std::size_t>(c));
      const int tl = fock.level_of(static_cast<std::size_t>(it.row()));
      groups[{sl, tl}].emplace_back(static_cast<std::size_t>(it.row()) - fock.level_begin(tl),
                                    static_cast<std::size_t>(c) - fock.level_begin(sl), it.value());
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "[";
  bool first = true;
  for (auto& [levels, entries] : groups) {
    std::sort(entries.begin(), entries.end());
    os << (first ? "\n " : ",\n ") << "{\"source_level\": " << levels.first << ", \"target_level\": " << levels.second
       << ", \"rows\": " << fock.level_size(levels.second) << ", \"cols\": " << fock.level_size(levels.first)
       << ", \"entries\": [";
    first = false;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& [r, c, v] = entries[k];
      os << (k ? ", [" : "[") << r << ", " << c << ", " << v << "]";
    }
    os << "]}";
  }
  os << "\n]\n";
  return os.str();
}

}  // namespace qfock
