#include <doctest.h>

#include <random>

#include "nilnf/errors.hpp"
#include "nilnf/nilframe.hpp"
#include "oracles.hpp"

using namespace nilnf;

namespace {

RationalMatrix from_ints(const std::vector<std::vector<long>>& rows) {
  const int n = static_cast<int>(rows.size());
  RationalMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = rows[r][c];
  return out;
}

double conjugation_error(const NilpotentFrame& f, const RationalMatrix& l) {
  const Eigen::MatrixXcd lhs = f.q * l.to_double().cast<Complex>() * f.q_inverse;
  return (lhs - f.n.cast<Complex>()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}

TEST_CASE("rational matrix inverse and nullspace") {
  const RationalMatrix a = from_ints({{2, 1, 0}, {0, 1, 3}, {1, 0, 1}});
  const RationalMatrix inv = a.inverse();
  CHECK(a * inv == RationalMatrix::identity(3));
  CHECK(inv * a == RationalMatrix::identity(3));
  const RationalMatrix singular = from_ints({{1, 2}, {2, 4}});
  CHECK(singular.rank() == 1);
  CHECK_THROWS_AS(singular.inverse(), DomainError);
  const auto ker = singular.nullspace();
  REQUIRE(ker.size() == 1);
  const RationalVector image = singular * ker[0];
  CHECK(image[0] == 0);
  CHECK(image[1] == 0);
}

TEST_CASE("block structures") {
  const BlockStructure b({0, 2, 1});
  CHECK(b.params() == std::vector<int>{2, 1, 0});
  CHECK(b.total_dimension() == 6);
  CHECK(b.offset(1) == 3);
  CHECK_THROWS_AS(BlockStructure({}), StructuralError);
  CHECK_THROWS_AS(BlockStructure({-1}), StructuralError);
  // Partition counts p(1..7).
  const std::vector<std::size_t> partitions{1, 2, 3, 5, 7, 11, 15};
  for (int m = 1; m <= 7; ++m) CHECK(all_block_structures(m).size() == partitions[m - 1]);
}

TEST_CASE("build_normalized_nilpotent examples") {
  const auto f1 = build_normalized_nilpotent(BlockStructure({1}));
  CHECK(f1.alphas[0] == std::vector<double>{1.0});
  CHECK(f1.n(0, 1) == 1.0);
  CHECK(f1.n(1, 0) == 0.0);
  CHECK(f1.weights == std::vector<int>{1, -1});
  CHECK(f1.h(0, 0) == doctest::Approx(1.0));
  CHECK(f1.h(1, 1) == doctest::Approx(-1.0));

  const auto f2 = build_normalized_nilpotent(BlockStructure({2}));
  CHECK(f2.alpha_squared[0] == RationalVector{2, 2});
  CHECK(f2.alphas[0][0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(f2.alphas[0][1] == doctest::Approx(std::sqrt(2.0)));

  const auto f0 = build_normalized_nilpotent(BlockStructure({0}));
  CHECK(f0.is_zero());
  CHECK(f0.h.isZero(0.0));
  CHECK(f0.weights == std::vector<int>{0});
}

TEST_CASE("weights are symmetric and step by two within blocks") {
  for (int m = 1; m <= 7; ++m)
    for (const auto& b : all_block_structures(m)) {
      const auto f = build_normalized_nilpotent(b);
      for (int j = 0; j < b.block_count(); ++j) {
        const int k = b.params()[j];
        const int off = b.offset(j);
        for (int i = 0; i <= k; ++i) CHECK(f.weights[off + i] == k - 2 * i);
        for (int i = 1; i <= k; ++i) CHECK(f.alpha_squared[j][i - 1] == Rational(i * (k + 1 - i)));
      }
    }
}

TEST_CASE("verify_sl2 examples") {
  CHECK(verify_sl2(build_normalized_nilpotent(BlockStructure({1}))).max() <= 1e-15);
  CHECK(verify_sl2(build_normalized_nilpotent(BlockStructure({3}))).max() <= 1e-12);
  CHECK(verify_sl2(build_normalized_nilpotent(BlockStructure({0, 0}))).max() == 0.0);
}

TEST_CASE("sl2 relations from direct matrix products") {
  for (int m = 1; m <= 7; ++m)
    for (const auto& b : all_block_structures(m)) {
      const auto f = build_normalized_nilpotent(b);
      const Eigen::MatrixXd h = f.n * f.m - f.m * f.n;
      CHECK((h - f.h).norm() <= 1e-12);
      CHECK((h * f.n - f.n * h - 2.0 * f.n).norm() <= 1e-12);
      CHECK((h * f.m - f.m * h + 2.0 * f.m).norm() <= 1e-12);
    }
}

TEST_CASE("solve_alpha_system") {
  CHECK(solve_alpha_system(1) == RationalVector{1});
  CHECK(solve_alpha_system(2) == RationalVector{2, 2});
  CHECK(solve_alpha_system(4) == RationalVector{4, 6, 6, 4});
  for (int n = 1; n <= 12; ++n) {
    const auto a = solve_alpha_system(n);
    for (int i = 1; i <= n; ++i) CHECK(a[i - 1] == Rational(i * (n + 1 - i)));
  }
  CHECK_THROWS_AS(solve_alpha_system(0), DomainError);
}

TEST_CASE("jordan_normalize examples") {
  const auto f = jordan_normalize(from_ints({{0, 2}, {0, 0}}));
  CHECK(f.blocks.params() == std::vector<int>{1});
  CHECK(std::abs(f.q(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(f.q(1, 1) - 2.0) < 1e-14);
  CHECK(std::abs(f.q(0, 1)) < 1e-14);
  CHECK(std::abs(f.q(1, 0)) < 1e-14);

  const auto z = jordan_normalize(RationalMatrix(3, 3));
  CHECK(z.blocks.params() == std::vector<int>{0, 0, 0});
  CHECK((z.q - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);

  const auto c = jordan_normalize(from_ints({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
  CHECK(c.blocks.params() == std::vector<int>{1, 0});
  CHECK((c.q - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);

  RationalMatrix scaled(3, 3);
  scaled(0, 1) = Rational(3, 2);
  scaled(1, 2) = Rational(-2);
  CHECK(conjugation_error(jordan_normalize(scaled), scaled) < 1e-10);
}

TEST_CASE("jordan_normalize rejects non-nilpotent input") {
  try {
    jordan_normalize(from_ints({{1, 0}, {0, 0}}));
    FAIL("expected NotNilpotent");
  } catch (const NotNilpotent& e) {
    CHECK(e.power() == 1);
    CHECK(e.stable_rank() == 1);
  }
  try {
    // rank sequence 3, 2, 1, 1: stalls at p = 2.
    jordan_normalize(from_ints({{0, 1, 0}, {0, 0, 0}, {0, 0, 5}}));
    FAIL("expected NotNilpotent");
  } catch (const NotNilpotent& e) {
    CHECK(e.power() == 2);
    CHECK(e.stable_rank() == 1);
  }
  CHECK_THROWS_AS(jordan_normalize(RationalMatrix(2, 3)), StructuralError);
}

TEST_CASE("jordan_normalize on random strictly upper triangular matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> zero_bias(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 6;
    RationalMatrix l(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = r + 1; c < m; ++c) l(r, c) = zero_bias(rng) == 0 ? 0 : entry(rng);
    const auto f = jordan_normalize(l);
    CHECK(conjugation_error(f, l) < 1e-10);
    CHECK(f.blocks.params() == oracle::block_params_from_ranks(l.to_double()));
  }
}

TEST_CASE("jordan_normalize on conjugated canonical forms") {
  // L = P J P^{-1} with unimodular P hides the block structure completely.
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 5;
    const auto structures = all_block_structures(m);
    const BlockStructure b = structures[trial % structures.size()];
    RationalMatrix j(m, m);
    for (int blk = 0; blk < b.block_count(); ++blk)
      for (int i = 0; i < b.params()[blk]; ++i) j(b.offset(blk) + i, b.offset(blk) + i + 1) = 1;
    RationalMatrix upper = RationalMatrix::identity(m), lower = RationalMatrix::identity(m);
    for (int r = 0; r < m; ++r)
      for (int c = r + 1; c < m; ++c) {
        upper(r, c) = entry(rng);
        lower(c, r) = entry(rng);
      }
    const RationalMatrix p = upper * lower;
    const RationalMatrix l = p * j * p.inverse();
    const auto f = jordan_normalize(l);
    CHECK(f.blocks.params() == b.params());
    CHECK(conjugation_error(f, l) < 1e-9);
    CHECK(f.q_norm * f.q_inverse_norm >= 1.0 - 1e-12);
  }
}
