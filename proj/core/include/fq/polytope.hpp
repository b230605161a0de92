#pragma once

// Lattice/real polytopes in ambient dimension <= 3, over exact rational
// coordinates. Float-sourced vertices are snapped to a 2^-30 grid and then
// handled exactly, which realizes the intended 1e-9 classification tolerance.

#include <Eigen/Dense>
#include <optional>

#include "fq/exact.hpp"

namespace fq {

struct Polytope {
  int dim = 0;                     // ambient dimension, 1..3
  std::vector<RatVec> verts;       // extreme points only

  int vertex_count() const { return int(verts.size()); }
};

// Exact hull of rational points; drops interior/redundant points.
Polytope convex_hull(int dim, std::vector<RatVec> points);

// Hull of double-precision points, snapped to a 2^-30 grid first.
Polytope convex_hull_snapped(const std::vector<Eigen::VectorXd>& points);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);

// n-dimensional volume; exact; 0 for lower-dimensional polytopes.
Rat volume(const Polytope& p);

// Bernshtein mixed volume of n polytopes in R^n (alternating sum of volumes
// of Minkowski sums over nonempty subsets; n! times the classical one).
Rat mixed_volume(const std::vector<Polytope>& tuple);

struct Face {
  RatVec direction;
  std::vector<int> vertex_indices;  // indices into the parent's verts

  bool is_vertex() const { return vertex_indices.size() == 1; }
};

// Vertices minimizing <u, .>; ties kept.
Face face_in_direction(const Polytope& p, const RatVec& u);

struct FanRep {
  RatVec u;                  // interior vector of a cell of the common refinement
  std::vector<Face> faces;   // min-face of each tuple entry at u
};

// One representative per cell of the normal fan of the Minkowski sum of the
// tuple (= common refinement of the entries' fans): covers every facial
// tuple that occurs for u != 0.
std::vector<FanRep> normal_fan_representatives(const std::vector<Polytope>& tuple);

struct UnfoldedReport {
  bool unfolded = false;
  std::optional<RatVec> violating_u;
};

// Unfolded: every face of the Minkowski sum has a vertex among its summands,
// i.e. for every fan representative u some entry attains its minimum over u
// at a unique vertex.
UnfoldedReport is_unfolded(const std::vector<Polytope>& tuple);

// Utility: exact membership p in conv(points) via rational phase-1 simplex.
bool point_in_hull(const RatVec& p, const std::vector<RatVec>& points);

}  // namespace fq
