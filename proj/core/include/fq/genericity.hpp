#pragma once

// Genericity of Laurent maps (facial systems have no torus roots) and the
// sampled uniform-genericity probe for trigonometric maps.

#include "fq/laurent.hpp"

namespace fq {

enum class Verdict { Generic, NonGeneric, Undecided };

struct FacialWitness {
  RatVec u;                      // fan-cell representative (min convention)
  std::string note;              // what was solved / found
  std::vector<cplx> root;        // approximate common root, when one exists
  double value = 0;              // resultant modulus or residual
  Eigen::VectorXd twist_phase;   // g witness for uniform genericity (may be empty)
};

struct GenericityVerdict {
  Verdict verdict = Verdict::Undecided;
  std::vector<FacialWitness> witnesses;
  double margin = 0;  // min over tested faces of the distance-to-solvability proxy
};

// n = m <= 2 decided by facial resultants (exact when the coefficients carry
// an exact mirror); n = 3 falls back to torus sampling and never certifies.
GenericityVerdict is_generic(const LaurentMap& q);

// Samples coefficient twists g on a grid of T^m, decides each sample's facial
// systems, and reports generic only when every sample is generic with margin
// exceeding ten times a twist-Lipschitz estimate. m == n reduces to is_generic.
GenericityVerdict is_uniformly_generic(const TrigMapRep& p, int grid_resolution);

}  // namespace fq
