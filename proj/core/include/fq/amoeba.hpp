#pragma once

// Amoeba membership by torus-fiber root-radius crossings, the Lee-Yang
// family/condition, and M-stability probing. Three-valued verdicts
// throughout; sampling refutes or supports, it never proves.

#include "fq/laurent.hpp"

namespace fq {

enum class Tri { Yes, No, BoundaryUndecided };

struct AmoebaQuery {
  LaurentPoly q;
  Eigen::VectorXd x;       // log-radius point in R^m
  double tolerance = 1e-7;
  int grid = 256;
};

struct AmoebaResult {
  Tri verdict = Tri::BoundaryUndecided;
  double min_gap = 0;  // min over the grid of |log|root| - x_fiber|
};

AmoebaResult amoeba_contains(const AmoebaQuery& query);

// q(z) = sum over subsets J of prod_{j in J} (z_j prod_{k not in J} a_{j,k});
// A symmetric with 0 < |a_{j,k}| < 1
LaurentPoly lee_yang_family(const Eigen::MatrixXcd& a);

enum class LeeYangVerdict { ProbablyYes, No, Undecided };

struct LeeYangReport {
  LeeYangVerdict verdict = LeeYangVerdict::Undecided;
  std::optional<Eigen::VectorXd> witness_x;  // amoeba point in an open orthant
};

// samples log-radius points in the open +-orthants at geometric radii
LeeYangReport is_lee_yang(const LaurentPoly& q, int grid = 256);

struct StabilityReport {
  enum class Kind { ProbablyStable, Unstable, Undecided } verdict = Kind::Undecided;
  int tested_directions = 0;
  double min_clearance = 0;
  std::optional<Eigen::MatrixXd> violating_m;
  std::optional<Eigen::VectorXd> witness_point;
};

// samples matrices M' with ||M' - M|| <= delta and probes whether the amoeba
// of Lambda(Q) meets M' R^n away from the origin
StabilityReport m_stability_probe(const LaurentMap& q, const Eigen::MatrixXd& m, double delta,
                                  int grid = 128, double vmin = 0.05, double vmax = 40.0,
                                  std::uint64_t seed = 0);

}  // namespace fq
