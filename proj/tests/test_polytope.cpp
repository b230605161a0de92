#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fq/polytope.hpp"

using namespace fq;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

Polytope unit_square() {
  return convex_hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
}

Polytope triangle01() { return convex_hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})}); }

Polytope random_poly2(std::mt19937_64& rng, int npts = 6, long lo = 0, long hi = 4) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<RatVec> pts;
  for (int i = 0; i < npts; ++i) pts.push_back(rv({d(rng), d(rng)}));
  return convex_hull(2, pts);
}

// facial-tuple signature at direction u, for the fan coverage oracle
std::vector<std::vector<int>> signature(const std::vector<Polytope>& tuple, const RatVec& u) {
  std::vector<std::vector<int>> sig;
  for (const auto& p : tuple) sig.push_back(face_in_direction(p, u).vertex_indices);
  return sig;
}

}  // namespace

TEST_CASE("hull drops interior point") {
  auto p = convex_hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}),
                           {Rat(1, 4), Rat(1, 4)}});
  CHECK(p.vertex_count() == 3);
}

TEST_CASE("hull of a single point") {
  auto p = convex_hull(2, {rv({0, 0})});
  CHECK(p.vertex_count() == 1);
}

TEST_CASE("hull collinear -> segment") {
  auto p = convex_hull(2, {rv({0, 0}), rv({2, 0}), rv({1, 0})});
  CHECK(p.vertex_count() == 2);
  CHECK(volume(p) == 0);
}

TEST_CASE("hull empty input throws") { CHECK_THROWS_AS(convex_hull(2, {}), Error); }

TEST_CASE("minkowski: square + square = side-2 square") {
  auto s = minkowski_sum(unit_square(), unit_square());
  CHECK(s.vertex_count() == 4);
  CHECK(volume(s) == 4);
}

TEST_CASE("minkowski: segment + segment = unit square") {
  auto e1 = convex_hull(2, {rv({0, 0}), rv({1, 0})});
  auto e2 = convex_hull(2, {rv({0, 0}), rv({0, 1})});
  auto s = minkowski_sum(e1, e2);
  CHECK(s.vertex_count() == 4);
  CHECK(volume(s) == 1);
}

TEST_CASE("minkowski: T + T = 2T") {
  auto t = triangle01();
  auto s = minkowski_sum(t, t);
  CHECK(volume(s) == 4 * volume(t));
  CHECK(s.vertex_count() == 3);
}

TEST_CASE("volume: triangle 1/2, square-2 4") {
  CHECK(volume(triangle01()) == Rat(1, 2));
  auto big = minkowski_sum(unit_square(), unit_square());
  CHECK(volume(big) == 4);
}

TEST_CASE("volume 3d: cube and tetrahedron") {
  std::vector<RatVec> cube;
  for (long x = 0; x <= 1; ++x)
    for (long y = 0; y <= 1; ++y)
      for (long z = 0; z <= 1; ++z) cube.push_back(rv({x, y, z}));
  auto c = convex_hull(3, cube);
  CHECK(c.vertex_count() == 8);
  CHECK(volume(c) == 1);
  auto t = convex_hull(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  CHECK(volume(t) == Rat(1, 6));
}

TEST_CASE("mixed volume: two unit squares -> 2") {
  CHECK(mixed_volume({unit_square(), unit_square()}) == 2);
}

TEST_CASE("mixed volume: coordinate segments -> 1") {
  auto e1 = convex_hull(2, {rv({0, 0}), rv({1, 0})});
  auto e2 = convex_hull(2, {rv({0, 0}), rv({0, 1})});
  CHECK(mixed_volume({e1, e2}) == 1);
}

TEST_CASE("mixed volume: two standard triangles -> 1") {
  CHECK(mixed_volume({triangle01(), triangle01()}) == 1);
}

TEST_CASE("mixed volume: symmetry and multilinearity on random pairs") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    auto k1 = random_poly2(rng), k1p = random_poly2(rng), k2 = random_poly2(rng);
    CHECK(mixed_volume({k1, k2}) == mixed_volume({k2, k1}));
    CHECK(mixed_volume({minkowski_sum(k1, k1p), k2}) ==
          mixed_volume({k1, k2}) + mixed_volume({k1p, k2}));
    Rat mv = mixed_volume({k1, k2});
    CHECK(mv >= 0);
    CHECK(mv.get_den() == 1);  // integer for integer vertices
    // V(K,K) = 2 area(K) under this normalization
    CHECK(mixed_volume({k1, k1}) == 2 * volume(k1));
  }
}

TEST_CASE("mixed volume 3d: cube diagonal = 6 vol") {
  std::vector<RatVec> cube;
  for (long x = 0; x <= 1; ++x)
    for (long y = 0; y <= 1; ++y)
      for (long z = 0; z <= 1; ++z) cube.push_back(rv({x, y, z}));
  auto c = convex_hull(3, cube);
  CHECK(mixed_volume({c, c, c}) == 6);  // n! V_n(K)
}

TEST_CASE("face_in_direction: square cases") {
  auto sq = unit_square();
  auto top = face_in_direction(sq, rv({0, -1}));
  CHECK(top.vertex_indices.size() == 2);
  for (int i : top.vertex_indices) CHECK(sq.verts[i][1] == 1);

  auto corner = face_in_direction(sq, rv({-1, -1}));
  REQUIRE(corner.vertex_indices.size() == 1);
  CHECK(sq.verts[corner.vertex_indices[0]] == rv({1, 1}));

  auto seg = convex_hull(2, {rv({0, 0}), rv({2, 0})});
  auto whole = face_in_direction(seg, rv({0, 1}));
  CHECK(whole.vertex_indices.size() == 2);

  CHECK_THROWS_AS(face_in_direction(sq, rv({0, 0})), Error);
}

TEST_CASE("face_in_direction: minimizers strictly below omitted vertices") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 30; ++t) {
    auto p = random_poly2(rng, 8);
    RatVec u = rv({d(rng), d(rng)});
    if (u[0] == 0 && u[1] == 0) continue;
    auto f = face_in_direction(p, u);
    Rat m = dot(u, p.verts[f.vertex_indices[0]]);
    std::set<int> on(f.vertex_indices.begin(), f.vertex_indices.end());
    for (int i = 0; i < p.vertex_count(); ++i) {
      Rat s = dot(u, p.verts[i]);
      if (on.count(i))
        CHECK(s == m);
      else
        CHECK(s > m);
    }
  }
}

TEST_CASE("fan representatives: two unit squares -> 8 cells") {
  auto reps = normal_fan_representatives({unit_square(), unit_square()});
  CHECK(reps.size() == 8);
  int vertex_cells = 0, edge_cells = 0;
  for (const auto& r : reps) {
    bool all_vertex = true, all_edge = true;
    for (const auto& f : r.faces) {
      all_vertex = all_vertex && f.vertex_indices.size() == 1;
      all_edge = all_edge && f.vertex_indices.size() == 2;
    }
    vertex_cells += all_vertex;
    edge_cells += all_edge;
  }
  CHECK(vertex_cells == 4);  // open quadrants
  CHECK(edge_cells == 4);    // axis rays
}

TEST_CASE("fan representatives: segment in R^1") {
  auto seg = convex_hull(1, {rv({0}), rv({2})});
  auto reps = normal_fan_representatives({seg});
  CHECK(reps.size() == 2);
}

TEST_CASE("fan representatives cover all facial tuples (sweep oracle)") {
  std::vector<Polytope> tuple = {unit_square(), triangle01()};
  auto reps = normal_fan_representatives(tuple);
  std::set<std::vector<std::vector<int>>> from_reps;
  for (const auto& r : reps) from_reps.insert(signature(tuple, r.u));
  // dense angular sweep; rational approximations of cos/sin are fine since
  // only the facial tuple matters
  std::set<std::vector<std::vector<int>>> from_sweep;
  for (int k = 0; k < 5000; ++k) {
    double th = 2 * M_PI * (k + 0.13) / 5000;
    RatVec u = {Rat(std::cos(th)), Rat(std::sin(th))};
    from_sweep.insert(signature(tuple, u));
  }
  for (const auto& sig : from_sweep) CHECK(from_reps.count(sig) == 1);
}

TEST_CASE("unfolded: identical squares are folded") {
  auto rep = is_unfolded({unit_square(), unit_square()});
  CHECK_FALSE(rep.unfolded);
  REQUIRE(rep.violating_u.has_value());
  // the witness direction really violates: no entry has a unique minimizer
  for (const auto& p : {unit_square(), unit_square()})
    CHECK(face_in_direction(p, *rep.violating_u).vertex_indices.size() > 1);
}

TEST_CASE("unfolded: single segment in R^1") {
  auto seg = convex_hull(1, {rv({0}), rv({2})});
  CHECK(is_unfolded({seg}).unfolded);
}

TEST_CASE("unfolded: perturbed squares") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> eps(-1e-3, 1e-3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Eigen::VectorXd> a, b;
    for (double x : {0.0, 1.0})
      for (double y : {0.0, 1.0}) {
        Eigen::Vector2d pa(x + eps(rng), y + eps(rng));
        Eigen::Vector2d pb(x + eps(rng), y + eps(rng));
        a.push_back(pa);
        b.push_back(pb);
      }
    auto rep = is_unfolded({convex_hull_snapped(a), convex_hull_snapped(b)});
    CHECK(rep.unfolded);
  }
}

TEST_CASE("point_in_hull basics") {
  std::vector<RatVec> tri = {rv({0, 0}), rv({4, 0}), rv({0, 4})};
  CHECK(point_in_hull(rv({1, 1}), tri));
  CHECK(point_in_hull(rv({0, 0}), tri));
  CHECK(point_in_hull(rv({2, 2}), tri));  // boundary
  CHECK_FALSE(point_in_hull(rv({3, 3}), tri));
  CHECK_FALSE(point_in_hull(rv({-1, 0}), tri));
}
