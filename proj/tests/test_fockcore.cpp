#include <algorithm>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "qfock/error.hpp"
#include "qfock/fockcore.hpp"

using namespace qfock;

namespace {

QPolynomial poly(std::vector<long long> c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return QPolynomial(b);
}

}  // namespace

TEST_CASE("basis sizes and blocks") {
  const auto f0 = TruncatedFock::build({0, 0}, 2);
  CHECK(f0.size() == 3);
  CHECK(f0.blocks().size() == 3);
  CHECK(f0.word(0).empty());
  CHECK(f0.word(2) == Word{0, 0});

  const auto f1 = TruncatedFock::build({0, 1}, 2);
  CHECK(f1.size() == 7);
  std::vector<std::vector<Word>> level2;
  for (const auto& b : f1.blocks()) {
    if (b.key.level != 2) continue;
    std::vector<Word> words;
    for (auto i : b.indices) words.push_back(f1.word(i));
    level2.push_back(words);
  }
  std::sort(level2.begin(), level2.end());
  CHECK(level2 == std::vector<std::vector<Word>>{{{0, 0}}, {{0, 1}, {1, 0}}, {{1, 1}}});

  const auto f2 = TruncatedFock::build({-1, 1}, 3);
  CHECK(f2.size() == 40);
  CHECK(f2.level_size(3) == 27);
  CHECK(f2.level_begin(4) == f2.size());
}

TEST_CASE("basis order and lookup") {
  const auto f = TruncatedFock::build({-1, 1}, 3);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(f.index_of(f.word(i)) == i);
    if (i > 0 && f.level_of(i) == f.level_of(i - 1)) CHECK(f.word(i - 1) < f.word(i));
    const auto& block = f.blocks().at(f.block_of(i));
    CHECK(block.indices.at(f.position_in_block(i)) == i);
    auto sorted = f.word(i);
    std::sort(sorted.begin(), sorted.end());
    CHECK(block.key.multiset == sorted);
  }
  CHECK_FALSE(f.index_of(Word{2}).has_value());
  CHECK_FALSE(f.index_of(Word{0, 0, 0, 0}).has_value());
}

TEST_CASE("basis cap") {
  try {
    TruncatedFock::build({0, 9}, 5);
    FAIL("expected a size error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Size);
  }
  CHECK_NOTHROW(TruncatedFock::build({0, 9}, 4));
  CHECK_THROWS_AS(TruncatedFock::build({1, 0}, 2), Error);
}

TEST_CASE("inner product examples") {
  for (auto* inner : {+[](const Word& u, const Word& v) { return inner_q_bruteforce(u, v); },
                      +[](const Word& u, const Word& v) { return inner_q_recursive(u, v); }}) {
    CHECK(inner({0, 1}, {0, 1}) == QPolynomial(1));
    CHECK(inner({0, 1}, {1, 0}) == QPolynomial::monomial(1, 1));
    CHECK(inner({0, 0}, {0, 0}) == poly({1, 1}));
    CHECK(inner({0, 1}, {0, 1, 0}).is_zero());
    CHECK(inner({}, {}) == QPolynomial(1));
    CHECK(inner({0, 0, 0}, {0, 0, 0}) == poly({1, 1}) * poly({1, 1, 1}));
  }
  CHECK(inner_q_recursive({0, 0, 0}, {0, 0, 0}) == q_factorial(3));
  CHECK_THROWS_AS(inner_q_bruteforce(Word(9, 0), Word(9, 0)), Error);
  CHECK(inner_q_recursive(Word(12, 0), Word(12, 0)) == oracle::q_factorial_product(12));
}

TEST_CASE("brute-force and recursive inner products agree exactly") {
  const auto f = TruncatedFock::build({0, 2}, 5);
  std::size_t pairs = 0;
  for (const auto& block : f.blocks()) {
    for (auto r : block.indices)
      for (auto c : block.indices) {
        REQUIRE(inner_q_bruteforce(f.word(r), f.word(c)) == inner_q_recursive(f.word(r), f.word(c)));
        ++pairs;
      }
  }
  // cross-block pairs vanish for both
  CHECK(inner_q_bruteforce({0, 1, 2}, {0, 1, 1}).is_zero());
  CHECK(inner_q_recursive({0, 1, 2}, {0, 1, 1}).is_zero());
  CHECK(pairs > 1000);
}

TEST_CASE("gram block examples") {
  const auto blocks = gram_blocks(TruncatedFock::build({0, 1}, 2));
  std::size_t seen = 0;
  for (const auto& g : blocks) {
    CHECK(g.is_symmetric());
    if (g.key.level == 0) {
      CHECK(g.dim() == 1);
      CHECK(g.at(0, 0) == QPolynomial(1));
      ++seen;
    }
    if (g.key.multiset == std::vector<int>{0, 1}) {
      CHECK(g.at(0, 0) == QPolynomial(1));
      CHECK(g.at(0, 1) == QPolynomial::monomial(1, 1));
      CHECK(g.at(1, 0) == QPolynomial::monomial(1, 1));
      CHECK(g.at(1, 1) == QPolynomial(1));
      CHECK(g.evaluate(0.5)(0, 1) == doctest::Approx(0.5));
      ++seen;
    }
    if (g.key.multiset == std::vector<int>{0, 0}) {
      CHECK(g.at(0, 0) == poly({1, 1}));
      ++seen;
    }
  }
  CHECK(seen == 3);
}

TEST_CASE("minimum gram eigenvalue") {
  CHECK(min_gram_eigenvalue(TruncatedFock::build({0, 0}, 1), 0.7) == doctest::Approx(1.0));
  CHECK(min_gram_eigenvalue(TruncatedFock::build({0, 0}, 1), -0.7) == doctest::Approx(1.0));
  // blocks [[1,q],[q,1]] and [1+q]
  const auto f = TruncatedFock::build({0, 1}, 2);
  CHECK(min_gram_eigenvalue(f, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(min_gram_eigenvalue(f, -0.9) == doctest::Approx(0.1).epsilon(1e-12));
  for (double q : {1.0, -1.0, 1.5}) {
    try {
      min_gram_eigenvalue(f, q);
      FAIL("expected a domain error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Domain);
    }
  }
}

TEST_CASE("gram blocks at q = 0 are identities") {
  for (const auto& g : gram_blocks(TruncatedFock::build({-1, 1}, 4))) {
    const Eigen::MatrixXd m = g.evaluate(0.0);
    CHECK((m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("block gram matches the dense permutation-sum gram") {
  const auto f = TruncatedFock::build({0, 1}, 3);
  const auto blocks = gram_blocks(f);
  for (double q : {-0.6, 0.3}) {
    const Eigen::MatrixXd dense = oracle::dense_gram(f, q);
    for (const auto& g : blocks) {
      const Eigen::MatrixXd m = g.evaluate(q);
      for (std::size_t r = 0; r < g.dim(); ++r)
        for (std::size_t c = 0; c < g.dim(); ++c)
          CHECK(m(r, c) == doctest::Approx(dense(g.indices[r], g.indices[c])));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    CHECK(min_gram_eigenvalue(blocks, q) == doctest::Approx(es.eigenvalues().minCoeff()));
  }
}

TEST_CASE("gram json") {
  const auto doc = nlohmann::json::parse(gram_blocks_json(gram_blocks(TruncatedFock::build({0, 1}, 2))));
  REQUIRE(doc.size() == 6);
  CHECK(doc[0]["block"]["level"] == 0);
  CHECK(doc[0]["matrix"] == nlohmann::json::parse(R"([["1"]])"));
  CHECK(doc[3]["block"]["multiset"] == nlohmann::json::parse("[0, 0]"));
  CHECK(doc[3]["matrix"][0][0] == "1 + q");
  CHECK(doc[4]["matrix"] == nlohmann::json::parse(R"([["1", "q"], ["q", "1"]])"));
}

TEST_CASE("dense P matrices") {
  const Eigen::MatrixXd p2 = p_matrix({0, 1}, 2, 0.5);
  CHECK(p2.rows() == 4);
  // words 00, 01, 10, 11
  CHECK(p2(0, 0) == doctest::Approx(1.5));
  CHECK(p2(1, 2) == doctest::Approx(0.5));
  CHECK(p2(1, 1) == doctest::Approx(1.0));
  const Eigen::MatrixXd ip = identity_tensor_p_matrix({0, 1}, 1, 0.5);
  CHECK((ip - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(words_of_length({0, 2}, 3).size() == 27);
}
