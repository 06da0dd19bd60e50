#pragma once

// Truncated q-Fock space: the Word basis, its block partition by
// (level, letter multiset), and the q-inner product.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfock/qcombinat.hpp"

namespace qfock {

/// Tensor basis vector e_{w1} ⊗ ... ⊗ e_{wn}; the empty word is the vacuum.
using Word = std::vector<int>;

inline constexpr std::size_t kDefaultBasisCap = 100000;

struct ModeWindow {
  int lo = 0;
  int hi = 0;

  int size() const noexcept { return hi - lo + 1; }
  bool contains(int mode) const noexcept { return lo <= mode && mode <= hi; }
  bool operator==(const ModeWindow&) const = default;
};

struct BlockKey {
  int level = 0;
  std::vector<int> multiset;  // sorted letters

  auto operator<=>(const BlockKey&) const = default;
};

class TruncatedFock {
 public:
  struct Block {
    BlockKey key;
    std::vector<std::size_t> indices;  // ascending basis indices
  };

  /// Basis order: level-major, then lexicographic in letters.
  /// Throws ErrorCode::Size if the basis would exceed `basis_cap` vectors.
  static TruncatedFock build(ModeWindow window, int max_level, std::size_t basis_cap = kDefaultBasisCap);

  const ModeWindow& window() const noexcept { return window_; }
  int max_level() const noexcept { return max_level_; }
  std::size_t size() const noexcept { return words_.size(); }

  const Word& word(std::size_t index) const { return words_.at(index); }
  int level_of(std::size_t index) const { return static_cast<int>(words_.at(index).size()); }
  std::optional<std::size_t> index_of(std::span<const int> word) const;

  /// First basis index of a level; level_begin(max_level()+1) == size().
  std::size_t level_begin(int level) const { return level_offsets_.at(level); }
  std::size_t level_end(int level) const { return level_offsets_.at(level + 1); }
  std::size_t level_size(int level) const { return level_end(level) - level_begin(level); }

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t index) const { return block_of_.at(index); }
  /// Position of a basis vector inside its block.
  std::size_t position_in_block(std::size_t index) const { return position_in_block_.at(index); }

 private:
  ModeWindow window_;
  int max_level_ = 0;
  std::vector<Word> words_;
  std::vector<std::size_t> level_offsets_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> position_in_block_;
};

/// <u, v>_q by summing q^{i(π)} over all π with u_k = v_{π(k)}.
QPolynomial inner_q_bruteforce(const Word& u, const Word& v, std::size_t factorial_cap = kDefaultFactorialCap);

/// <u, v>_q by expanding the first letter of u against each matching slot k
/// of v with weight q^{k-1}. Memoized; no factorial cap.
QPolynomial inner_q_recursive(const Word& u, const Word& v);

/// Gram matrix of one block as exact polynomials, row-major over the
/// block's words in basis order.
struct GramBlock {
  BlockKey key;
  std::vector<std::size_t> indices;
  std::vector<QPolynomial> entries;

  std::size_t dim() const noexcept { return indices.size(); }
  const QPolynomial& at(std::size_t r, std::size_t c) const { return entries.at(r * dim() + c); }
  QPolynomial& at(std::size_t r, std::size_t c) { return entries.at(r * dim() + c); }
  Eigen::MatrixXd evaluate(double q) const;
  bool is_symmetric() const;
};

std::vector<GramBlock> gram_blocks(const TruncatedFock& fock);

/// Smallest eigenvalue over all evaluated Gram blocks. Domain error if |q| >= 1.
double min_gram_eigenvalue(std::span<const GramBlock> blocks, double q);
double min_gram_eigenvalue(const TruncatedFock& fock, double q);

/// JSON array of {"block": {"level", "multiset"}, "matrix": [[poly-string]]}.
std::string gram_blocks_json(std::span<const GramBlock> blocks);

/// Dense P^{(n)} on all n-letter words over `window` (lexicographic order),
/// evaluated at q. Entry (u, v) is <u, v>_q.
Eigen::MatrixXd p_matrix(ModeWindow window, int n, double q);

/// Dense 1 ⊗ P^{(k)} on (k+1)-letter words: δ(u1, v1) <u', v'>_q.
Eigen::MatrixXd identity_tensor_p_matrix(ModeWindow window, int k, double q);

/// All words of length n over the window in lexicographic order.
std::vector<Word> words_of_length(ModeWindow window, int n);

}  // namespace qfock
