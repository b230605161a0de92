#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fq/lattice.hpp"

using namespace fq;

namespace {

IntMat mat2(long a, long b, long c, long d) {
  IntMat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

void check_snf(const IntMat& a) {
  auto r = smith_normal_form(a);
  CHECK(abs(r.u.det()) == 1);
  CHECK(abs(r.v.det()) == 1);
  IntMat prod = r.u * a * r.v;
  CHECK(prod == r.d);
  // divisibility chain, zeros last, nonneg diagonal
  int nmin = std::min(r.d.rows, r.d.cols);
  for (int i = 0; i < r.d.rows; ++i)
    for (int j = 0; j < r.d.cols; ++j)
      if (i != j) CHECK(r.d.at(i, j) == 0);
  for (int i = 0; i + 1 < nmin; ++i) {
    const Int& di = r.d.at(i, i);
    const Int& dj = r.d.at(i + 1, i + 1);
    CHECK(di >= 0);
    if (dj != 0) {
      REQUIRE(di != 0);
      CHECK(dj % di == 0);
    }
  }
}

Int gcd_of_entries(const IntMat& a) {
  Int g = 0;
  for (const Int& x : a.a) g = gcd(g, x);
  return g;
}

}  // namespace

TEST_CASE("snf diag(2,3) -> diag(1,6)") {
  IntMat a = mat2(2, 0, 0, 3);
  auto r = smith_normal_form(a);
  CHECK(r.d.at(0, 0) == 1);
  CHECK(r.d.at(1, 1) == 6);
  check_snf(a);
}

TEST_CASE("snf identity") {
  IntMat a = IntMat::identity(3);
  auto r = smith_normal_form(a);
  CHECK(r.d == IntMat::identity(3));
  check_snf(a);
}

TEST_CASE("snf [[2,4],[6,8]] -> diag(2,4)") {
  IntMat a = mat2(2, 4, 6, 8);
  auto r = smith_normal_form(a);
  CHECK(r.d.at(0, 0) == 2);
  CHECK(r.d.at(1, 1) == 4);
  check_snf(a);
}

TEST_CASE("snf rejects zero matrix") {
  IntMat z(2, 2);
  CHECK_THROWS_AS(smith_normal_form(z), Error);
}

TEST_CASE("snf random: reconstruction, gcd, determinant product") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-30, 30);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + int(rng() % 4), cols = 1 + int(rng() % 4);
    IntMat a(rows, cols);
    bool nonzero = false;
    for (auto& x : a.a) {
      x = d(rng);
      if (x != 0) nonzero = true;
    }
    if (!nonzero) continue;
    check_snf(a);
    auto r = smith_normal_form(a);
    CHECK(r.d.at(0, 0) == gcd_of_entries(a));
    if (rows == cols) {
      Int det = abs(a.det());
      Int prod = 1;
      for (int i = 0; i < rows; ++i) prod *= r.d.at(i, i);
      CHECK(prod == det);
    }
  }
}

TEST_CASE("unimodular completion: worked cases") {
  auto j = unimodular_completion({Int(2), Int(1)});
  CHECK(j.at(1, 0) * 2 + j.at(1, 1) * 1 == 1);
  CHECK(j.at(0, 0) * 2 + j.at(0, 1) * 1 == 0);
  CHECK(abs(j.det()) == 1);

  auto j1 = unimodular_completion({Int(1)});
  CHECK(j1.at(0, 0) == 1);

  auto j3 = unimodular_completion({Int(3), Int(5), Int(7)});
  for (int r = 0; r < 3; ++r) {
    Int s = j3.at(r, 0) * 3 + j3.at(r, 1) * 5 + j3.at(r, 2) * 7;
    CHECK(s == (r == 2 ? 1 : 0));
  }
  CHECK(abs(j3.det()) == 1);
}

TEST_CASE("unimodular completion: 200 random primitive gammas") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(1, 50);
  int done = 0;
  while (done < 200) {
    int m = 1 + int(rng() % 4);
    std::vector<Int> g(m);
    Int gc = 0;
    for (auto& x : g) {
      x = d(rng);
      gc = gcd(gc, x);
    }
    if (gc != 1) continue;
    ++done;
    auto j = unimodular_completion(g);
    for (int r = 0; r < m; ++r) {
      Int s = 0;
      for (int c = 0; c < m; ++c) s += j.at(r, c) * g[c];
      CHECK(s == (r == m - 1 ? 1 : 0));
    }
    CHECK(abs(j.det()) == 1);
  }
}

TEST_CASE("unimodular completion: non-primitive rejected") {
  CHECK_THROWS_WITH_AS(unimodular_completion({Int(2), Int(4)}), "gamma not primitive", Error);
  CHECK_THROWS_AS(unimodular_completion({Int(0), Int(1)}), Error);
}

TEST_CASE("annihilator: b=0.3, gamma=(2,1), delta=1.6") {
  Eigen::VectorXd b(1);
  b << 0.3;
  auto a = annihilator(b, {Int(2), Int(1)}, 1.6);
  CHECK(a.alpha[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(a.alpha[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("annihilator: symmetric case") {
  Eigen::VectorXd b(1);
  b << 1.0;
  auto a = annihilator(b, {Int(1), Int(1)}, 2.0);
  CHECK(a.alpha[0] == doctest::Approx(1.0));
  CHECK(a.alpha[1] == doctest::Approx(1.0));
}

TEST_CASE("annihilator: n=2 residual check") {
  Eigen::VectorXd b(2);
  b << 0.2, 0.5;
  std::vector<Int> gamma = {Int(1), Int(1), Int(1)};
  double delta = 1.7;  // arbitrary positive normalization
  auto a = annihilator(b, gamma, delta);
  // alpha^T M with M = [I_n; -b^T]
  Eigen::MatrixXd m(3, 2);
  m << 1, 0, 0, 1, -0.2, -0.5;
  Eigen::VectorXd res = m.transpose() * a.alpha;
  CHECK(res.lpNorm<Eigen::Infinity>() <= 1e-12 * a.alpha.norm() * m.norm());
  double ag = a.alpha[0] + a.alpha[1] + a.alpha[2];
  CHECK(std::abs(ag - delta) <= 1e-12 * delta);
}
