#include "qfock/fockcore.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "qfock/error.hpp"

namespace qfock {

namespace {

std::vector<int> sorted_letters(const Word& w) {
  std::vector<int> m = w;
  std::sort(m.begin(), m.end());
  return m;
}

// Advances `w` to the next word in lexicographic order over the window;
// returns false after the last word.
bool next_word(Word& w, ModeWindow window) {
  for (std::size_t pos = w.size(); pos-- > 0;) {
    if (w[pos] < window.hi) {
      ++w[pos];
      std::fill(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end(), window.lo);
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Word> words_of_length(ModeWindow window, int n) {
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(n), window.lo);
  do {
    out.push_back(w);
  } while (next_word(w, window));
  return out;
}

TruncatedFock TruncatedFock::build(ModeWindow window, int max_level, std::size_t basis_cap) {
  if (window.hi < window.lo) throw Error(ErrorCode::InvalidArgument, "mode window must be nonempty");
  if (max_level < 0) throw Error(ErrorCode::InvalidArgument, "max level must be nonnegative");

  const std::size_t w = static_cast<std::size_t>(window.size());
  std::size_t total = 0;
  std::size_t power = 1;
  for (int k = 0; k <= max_level; ++k) {
    total += power;
    if (total > basis_cap) {
      std::ostringstream os;
      os << "truncated Fock basis for window size " << w << " and max level " << max_level
         << " exceeds basis cap " << basis_cap;
      throw Error(ErrorCode::Size, os.str());
    }
    power *= w;
  }

  TruncatedFock fock;
  fock.window_ = window;
  fock.max_level_ = max_level;
  fock.words_.reserve(total);
  for (int k = 0; k <= max_level; ++k) {
    fock.level_offsets_.push_back(fock.words_.size());
    for (auto& word : words_of_length(window, k)) fock.words_.push_back(std::move(word));
  }
  fock.level_offsets_.push_back(fock.words_.size());

  std::map<BlockKey, std::size_t> block_ids;
  fock.block_of_.resize(fock.words_.size());
  fock.position_in_block_.resize(fock.words_.size());
  for (std::size_t i = 0; i < fock.words_.size(); ++i) {
    BlockKey key{static_cast<int>(fock.words_[i].size()), sorted_letters(fock.words_[i])};
    auto [it, inserted] = block_ids.try_emplace(key, fock.blocks_.size());
    if (inserted) fock.blocks_.push_back(Block{std::move(key), {}});
    auto& block = fock.blocks_[it->second];
    fock.block_of_[i] = it->second;
    fock.position_in_block_[i] = block.indices.size();
    block.indices.push_back(i);
  }
  return fock;
}

std::optional<std::size_t> TruncatedFock::index_of(std::span<const int> word) const {
  const int level = static_cast<int>(word.size());
  if (level > max_level_) return std::nullopt;
  std::size_t offset = 0;
  for (int letter : word) {
    if (!window_.contains(letter)) return std::nullopt;
    offset = offset * static_cast<std::size_t>(window_.size()) + static_cast<std::size_t>(letter - window_.lo);
  }
  return level_offsets_[level] + offset;
}

// ---------------------------------------------------------------------------

QPolynomial inner_q_bruteforce(const Word& u, const Word& v, std::size_t factorial_cap) {
  if (u.size() != v.size()) return {};
  std::vector<BigInt> hist;
  for (const auto& p : all_permutations(u.size(), factorial_cap)) {
    bool match = true;
    for (std::size_t k = 1; k <= u.size() && match; ++k) match = u[k - 1] == v[p(k) - 1];
    if (!match) continue;
    const std::size_t inv = inversions(p);
    if (hist.size() <= inv) hist.resize(inv + 1, BigInt(0));
    hist[inv] += 1;
  }
  return QPolynomial(std::move(hist));
}

namespace {

class InnerRecursion {
 public:
  explicit InnerRecursion(const Word& u) : u_(u) {}

  // <u[t..], rest>_q
  QPolynomial eval(std::size_t t, const Word& rest) {
    if (t == u_.size()) return QPolynomial(1);
    auto key = std::make_pair(t, rest);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    QPolynomial acc;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (rest[k] != u_[t]) continue;
      Word shorter;
      shorter.reserve(rest.size() - 1);
      shorter.insert(shorter.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
      shorter.insert(shorter.end(), rest.begin() + static_cast<std::ptrdiff_t>(k) + 1, rest.end());
      acc += QPolynomial::monomial(1, k) * eval(t + 1, shorter);
    }
    memo_.emplace(std::move(key), acc);
    return acc;
  }

 private:
  const Word& u_;
  std::map<std::pair<std::size_t, Word>, QPolynomial> memo_;
};

}  // namespace

QPolynomial inner_q_recursive(const Word& u, const Word& v) {
  if (u.size() != v.size() || sorted_letters(u) != sorted_letters(v)) return {};
  InnerRecursion rec(u);
  return rec.eval(0, v);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd GramBlock::evaluate(double q) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).evaluate(q);
  return m;
}

bool GramBlock::is_symmetric() const {
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = r + 1; c < dim(); ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

std::vector<GramBlock> gram_blocks(const TruncatedFock& fock) {
  std::vector<GramBlock> out;
  out.reserve(fock.blocks().size());
  for (const auto& block : fock.blocks()) {
    GramBlock g{block.key, block.indices, {}};
    const std::size_t n = block.indices.size();
    g.entries.resize(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      const Word& u = fock.word(block.indices[r]);
      for (std::size_t c = r; c < n; ++c) {
        g.at(r, c) = inner_q_recursive(u, fock.word(block.indices[c]));
        if (c != r) g.at(c, r) = g.at(r, c);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

double min_gram_eigenvalue(std::span<const GramBlock> blocks, double q) {
  require_q_in_domain(q);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& block : blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block.evaluate(q), Eigen::EigenvaluesOnly);
    best = std::min(best, es.eigenvalues().minCoeff());
  }
  return best;
}

double min_gram_eigenvalue(const TruncatedFock& fock, double q) {
  require_q_in_domain(q);
  const auto blocks = gram_blocks(fock);
  return min_gram_eigenvalue(blocks, q);
}

std::string gram_blocks_json(std::span<const GramBlock> blocks) {
  std::ostringstream os;
  os << "[";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& g = blocks[b];
    os << (b ? ",\n " : "\n ") << "{\"block\": {\"level\": " << g.key.level << ", \"multiset\": [";
    for (std::size_t i = 0; i < g.key.multiset.size(); ++i) os << (i ? ", " : "") << g.key.multiset[i];
    os << "]}, \"matrix\": [";
    for (std::size_t r = 0; r < g.dim(); ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < g.dim(); ++c) os << (c ? ", " : "") << '"' << g.at(r, c).to_string() << '"';
      os << "]";
    }
    os << "]}";
  }
  os << "\n]\n";
  return os.str();
}

Eigen::MatrixXd p_matrix(ModeWindow window, int n, double q) {
  const auto words = words_of_length(window, n);
  const auto dim = static_cast<Eigen::Index>(words.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = r; c < dim; ++c) p(r, c) = p(c, r) = inner_q_recursive(words[r], words[c]).evaluate(q);
  return p;
}

Eigen::MatrixXd identity_tensor_p_matrix(ModeWindow window, int k, double q) {
  const auto words = words_of_length(window, k + 1);
  const auto dim = static_cast<Eigen::Index>(words.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (words[r][0] != words[c][0]) continue;
      const Word ur(words[r].begin() + 1, words[r].end());
      const Word vc(words[c].begin() + 1, words[c].end());
      m(r, c) = inner_q_recursive(ur, vc).evaluate(q);
    }
  }
  return m;
}

}  // namespace qfock
