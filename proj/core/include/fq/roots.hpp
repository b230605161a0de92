#pragma once

// Argument-principle root location for univariate trig/holomorphic functions,
// torus roots of Laurent polynomials, 2x2 Laurent system solving, homotopy
// tracking, and density estimates.

#include <functional>

#include "fq/laurent.hpp"
#include "fq/measures.hpp"

namespace fq {

using Holo1 = std::function<cplx(cplx)>;

// Exact root count (with multiplicity) inside the rectangle [re(lo),re(hi)] x
// [im(lo),im(hi)] by the total argument increment over the boundary. When the
// boundary passes too near a root the rectangle is dilated by a small random
// factor and retried (5 attempts, then "root on contour").
int winding_number(const Holo1& p, cplx lo, cplx hi);

struct Root1d {
  cplx z;
  int mult = 1;
  double im_abs = 0;
};

// multiplicity-tagged roots in [a,b] x [-band, band] by winding subdivision
std::vector<Root1d> real_roots_1d(const Holo1& p, double a, double b, double band,
                                  double tol = 1e-10);

// imaginary band within which all roots of sum c_j e^{2 pi i w_j z} lie,
// from extreme-frequency domination; fallback 5 when degenerate
double trig_imag_band(const std::vector<std::pair<double, cplx>>& freq_coeffs);

// evaluator and band for a one-dimensional trig map
Holo1 trig_evaluator_1d(const TrigMapRep& p);
double trig_imag_band(const TrigMapRep& p);

struct TorusRoots {
  std::vector<std::pair<cplx, int>> on_torus;  // |root| within 1e-8 of 1, clustered
  std::vector<cplx> off_torus;
};

TorusRoots torus_roots_univariate(const LaurentPoly& q);

// all roots in C*^2 of a 2x2 Laurent system, with cluster multiplicities
// (hidden-variable resultant + Newton polish)
std::vector<std::pair<Eigen::Vector2cd, int>> laurent_roots_2d(const LaurentMap& q);

// --- homotopy continuation ---------------------------------------------------

using SystemValue = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&, double)>;
using SystemJacobian = std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&, double)>;

struct ContinuationResult {
  Eigen::VectorXd x1;
  std::vector<std::pair<double, Eigen::VectorXd>> path;
};

// dx/dt = -J^{-1} dP/dt predictor with Newton correction to 1e-12 per node;
// steps bisect on ill-conditioned Jacobians; the path must stay real
ContinuationResult continuation_track(const SystemValue& value, const SystemJacobian& jac_x,
                                      const SystemValue& dpdt, const Eigen::VectorXd& x0,
                                      const std::vector<double>& t_grid);

// --- densities ----------------------------------------------------------------

struct DensityEstimate {
  double window_radius = 0;
  double count = 0;      // multiplicity-weighted
  double density = 0;    // count / (c_n r^n)
  double expected = 0;   // mixed-volume prediction
};

DensityEstimate density_estimate(const Multiset& roots, double r, double expected);

// mixed volume of the component Newton polytopes of P (frequency space)
double expected_density(const TrigMapRep& p);

struct RealRootedReport {
  bool pass = false;
  double real_density = 0;
  double expected = 0;
  double max_im = 0;
  long long count = 0;
};

// n = 1 check: contour-located root density vs the mixed-volume prediction,
// all roots within 1e-8 of the real axis
RealRootedReport verify_real_rooted(const TrigMapRep& p, double window_radius, double tol);

}  // namespace fq
