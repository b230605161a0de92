#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fq/lattice.hpp"
#include "fq/laurent.hpp"

using namespace fq;

namespace {

LaurentPoly from_terms(int m, std::vector<std::pair<ExpVec, cplx>> ts) {
  LaurentPoly q = LaurentPoly::zero(m);
  for (auto& [e, c] : ts) q.terms[e] = c;
  return q;
}

// q = z1 - z2^2
LaurentPoly q_basic() { return from_terms(2, {{{1, 0}, 1.0}, {{0, 2}, -1.0}}); }

// the Kurasov-Sarnak Laurent polynomial 1 - z1/3 + z2^2/3 - z1 z2^2
LaurentPoly q_ks() {
  return from_terms(2, {{{0, 0}, 1.0},
                        {{1, 0}, -1.0 / 3},
                        {{0, 2}, 1.0 / 3},
                        {{1, 2}, -1.0}});
}

Eigen::VectorXcd vc(std::initializer_list<cplx> xs) {
  Eigen::VectorXcd v(long(xs.size()));
  int i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

IntMat mat2(long a, long b, long c, long d) {
  IntMat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("eval_laurent worked values") {
  CHECK(std::abs(eval_laurent(q_basic(), vc({1.0, 1.0}))) == 0);
  CHECK(std::abs(eval_laurent(q_ks(), vc({1.0, 1.0}))) <= 1e-15);
  auto inv = from_terms(1, {{{-1}, 1.0}});
  CHECK(eval_laurent(inv, vc({2.0})).real() == doctest::Approx(0.5));
  CHECK_THROWS_AS(eval_laurent(inv, vc({0.0})), Error);
}

TEST_CASE("facial restriction reproduces the square case table") {
  cplx a00(1.0, 0.3), a10(-0.7, 0.1), a01(0.4, -1.1), a11(2.0, 0.0);
  auto q = from_terms(2, {{{0, 0}, a00}, {{1, 0}, a10}, {{0, 1}, a01}, {{1, 1}, a11}});

  auto t0 = facial_restriction(q, RatVec{Rat(1), Rat(0)});  // theta = 0
  CHECK(t0.terms.size() == 2);
  CHECK(t0.terms.at({1, 0}) == a10);
  CHECK(t0.terms.at({1, 1}) == a11);

  auto tq = facial_restriction(q, RatVec{Rat(1), Rat(1)});  // open first quadrant
  CHECK(tq.terms.size() == 1);
  CHECK(tq.terms.at({1, 1}) == a11);

  auto tpi = facial_restriction(q, RatVec{Rat(-1), Rat(0)});  // theta = pi
  CHECK(tpi.terms.size() == 2);
  CHECK(tpi.terms.at({0, 0}) == a00);
  CHECK(tpi.terms.at({0, 1}) == a01);

  auto mono = from_terms(2, {{{3, -2}, 5.0}});
  for (auto u : {RatVec{Rat(1), Rat(0)}, RatVec{Rat(-2), Rat(7)}})
    CHECK(facial_restriction(mono, u).terms == mono.terms);

  CHECK_THROWS_AS(facial_restriction(q, RatVec{Rat(0), Rat(0)}), Error);
}

TEST_CASE("facial restriction: selected terms share the extreme value") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int t = 0; t < 25; ++t) {
    LaurentPoly q = LaurentPoly::zero(2);
    for (int i = 0; i < 6; ++i) q.terms[{d(rng), d(rng)}] = cplx(1.0 + i, 0.5);
    RatVec u = {Rat(d(rng)), Rat(d(rng))};
    if (u[0] == 0 && u[1] == 0) continue;
    auto f = facial_restriction(q, u);
    Rat best;
    bool first = true;
    for (const auto& [e, c] : f.terms) {
      Rat s = u[0] * Rat(long(e[0])) + u[1] * Rat(long(e[1]));
      if (first) {
        best = s;
        first = false;
      } else {
        CHECK(s == best);
      }
    }
    for (const auto& [e, c] : q.terms) {
      Rat s = u[0] * Rat(long(e[0])) + u[1] * Rat(long(e[1]));
      if (!f.terms.count(e)) CHECK(s < best);
    }
  }
}

TEST_CASE("monomial substitute") {
  LaurentMap q{{q_basic()}};
  auto id = monomial_substitute(q, IntMat::identity(2));
  CHECK(id.comps[0].terms == q.comps[0].terms);

  // z1 -> w^2 on a univariate monomial
  IntMat n(1, 1);
  n.at(0, 0) = 2;
  auto w2 = monomial_substitute(from_terms(1, {{{1}, 1.0}}), n);
  CHECK(w2.terms.size() == 1);
  CHECK(w2.terms.count({2}) == 1);

  // z1 = w^2, z2 = w^-1 sends z1 - z2^2 to w^2 - w^-2
  IntMat nk(2, 1);
  nk.at(0, 0) = 2;
  nk.at(1, 0) = -1;
  auto sub = monomial_substitute(q, nk);
  CHECK(sub.comps[0].nvars == 1);
  CHECK(sub.comps[0].terms.size() == 2);
  CHECK(sub.comps[0].terms.at({2}) == cplx(1.0));
  CHECK(sub.comps[0].terms.at({-2}) == cplx(-1.0));
}

TEST_CASE("monomial substitute respects evaluation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  LaurentMap q{{q_ks()}};
  IntMat n(2, 1);
  n.at(0, 0) = 10;
  n.at(1, 0) = -3;
  auto sub = monomial_substitute(q, n);
  for (int t = 0; t < 100; ++t) {
    cplx w = std::polar(1.0, ph(rng));
    Eigen::VectorXcd z(2);
    z << std::pow(w, 10.0), std::pow(w, -3.0);
    cplx lhs = eval_laurent(sub.comps[0], vc({w}));
    cplx rhs = eval_laurent(q.comps[0], z);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("gl transform: identity, KS automorphism, round trip") {
  LaurentMap q{{q_ks()}};
  auto same = gl_transform(q, IntMat::identity(2));
  CHECK(same.comps[0].terms == q.comps[0].terms);

  // z2 -> z2^{-1}: exponents (l1, l2) -> (l1, -l2)
  auto flip = gl_transform(q, mat2(1, 0, 0, -1));
  CHECK(flip.comps[0].terms.count({0, -2}) == 1);
  CHECK(flip.comps[0].terms.count({1, -2}) == 1);

  auto back = gl_transform(flip, mat2(1, 0, 0, -1));
  CHECK(back.comps[0].terms == q.comps[0].terms);

  CHECK_THROWS_AS(gl_transform(q, mat2(2, 0, 0, 1)), Error);
}

TEST_CASE("is_minimal") {
  LaurentMap a{{from_terms(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}})}};
  CHECK(is_minimal(a));
  LaurentMap b{{from_terms(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}})}};
  CHECK_FALSE(is_minimal(b));
  // KS support {(0,0),(1,0),(0,2),(1,2)} spans Z x 2Z
  LaurentMap ks{{q_ks()}};
  CHECK_FALSE(is_minimal(ks));
  IntMat half(2, 2);
  half.at(0, 0) = 1;
  half.at(1, 1) = 2;  // divide second exponent by 2: substitute z2 = w2^(1/2)... i.e. exponents l -> (l1, l2/2)
  // realized by monomial_substitute with N^T = diag(1, ... ) on the halved support
  LaurentPoly halved = LaurentPoly::zero(2);
  for (const auto& [e, c] : q_ks().terms) halved.terms[{e[0], e[1] / 2}] = c;
  CHECK(is_minimal(LaurentMap{{halved}}));
}

TEST_CASE("gl transform preserves minimality") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int t = 0; t < 10; ++t) {
    // random unimodular by construction: product of elementary matrices
    IntMat a = IntMat::identity(2);
    for (int k = 0; k < 6; ++k) {
      IntMat e = IntMat::identity(2);
      if (rng() % 2)
        e.at(0, 1) = d(rng);
      else
        e.at(1, 0) = d(rng);
      a = a * e;
    }
    LaurentPoly q = LaurentPoly::zero(2);
    for (int i = 0; i < 5; ++i) q.terms[{d(rng), d(rng)}] = cplx(1.0, double(i));
    LaurentMap qm{{q}};
    CHECK(is_minimal(gl_transform(qm, a)) == is_minimal(qm));
  }
}

TEST_CASE("eval_trig basics") {
  // Q = z1 - z2^2 with M = [1; -b]: P(0) = Q(1,1) = 0
  TrigMapRep p;
  p.q = LaurentMap{{q_basic()}};
  Eigen::MatrixXd m(2, 1);
  m << 1.0, -0.3;
  p.m = RealMat::from_double(m);
  p.validate();
  CHECK(std::abs(eval_trig(p, vc({0.0}))[0]) <= 1e-15);

  // Q = z1 - 1, M = [1]: P(1/2) = exp(i pi) - 1 = -2
  TrigMapRep u;
  u.q = LaurentMap{{from_terms(1, {{{1}, 1.0}, {{0}, -1.0}})}};
  Eigen::MatrixXd m1(1, 1);
  m1 << 1.0;
  u.m = RealMat::from_double(m1);
  cplx v = eval_trig(u, vc({0.5}))[0];
  CHECK(std::abs(v - cplx(-2.0)) <= 1e-14);

  CHECK_THROWS_AS(eval_trig(u, vc({cplx(0, 1e6)})), Error);
}

TEST_CASE("eval_trig periodicity for rational M") {
  TrigMapRep p;
  p.q = LaurentMap{{q_basic()}};
  Eigen::MatrixXd m(2, 1);
  m << 1.0, -0.5;
  p.m = RealMat::from_double(m);
  // v = 2 gives Mv = (2, -1) integral
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> xr(-10, 10);
  for (int t = 0; t < 50; ++t) {
    double x = xr(rng);
    cplx a = eval_trig(p, vc({x}))[0];
    cplx b = eval_trig(p, vc({x + 2}))[0];
    CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)));
  }
}

TEST_CASE("spectrum_trig frequencies and collisions") {
  TrigMapRep p;
  p.q = LaurentMap{{q_basic()}};
  Eigen::MatrixXd m(2, 1);
  m << 1.0, -0.3;
  p.m = RealMat::from_double(m);
  auto sp = spectrum_trig(p);
  REQUIRE(sp.size() == 2);
  std::set<double> freqs;
  for (auto& s : sp) freqs.insert(s.frequency[0]);
  CHECK(freqs.count(1.0) == 1);
  CHECK(*freqs.begin() == doctest::Approx(-0.6));

  // single term -> single frequency
  TrigMapRep mono;
  mono.q = LaurentMap{{from_terms(2, {{{2, 1}, 3.0}})}};
  mono.m = RealMat::from_double(m);
  CHECK(spectrum_trig(mono).size() == 1);

  // M = [1; 1] collides (1,0) and (0,1)
  TrigMapRep coll;
  coll.q = LaurentMap{{from_terms(2, {{{1, 0}, 2.0}, {{0, 1}, 5.0}})}};
  Eigen::MatrixXd mc(2, 1);
  mc << 1.0, 1.0;
  coll.m = RealMat::from_double(mc);
  auto spc = spectrum_trig(coll);
  REQUIRE(spc.size() == 1);
  CHECK(spc[0].coeff == cplx(7.0));
}

TEST_CASE("exact coefficient mirror survives facial restriction and products") {
  LaurentPoly q = LaurentPoly::zero(2);
  q.exact.emplace();
  q.insert_term({0, 0}, cplx(1.0), nullptr);  // mixing drops the mirror
  CHECK_FALSE(q.has_exact());

  LaurentPoly r = LaurentPoly::zero(2);
  r.exact.emplace();
  GaussRat one(Rat(1), Rat(0)), third(Rat(1, 3), Rat(0));
  r.insert_term({0, 0}, one.d(), &one);
  r.insert_term({1, 0}, third.d(), &third);
  REQUIRE(r.has_exact());
  auto f = facial_restriction(r, RatVec{Rat(1), Rat(0)});
  REQUIRE(f.has_exact());
  CHECK(f.exact->at({1, 0}) == third);
  auto prod = lp_mul(r, r);
  REQUIRE(prod.has_exact());
  CHECK(prod.exact->at({2, 0}) == third * third);
}
