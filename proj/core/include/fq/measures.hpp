#pragma once

// Discrete measures, multisets and spectra with windowed semantics, the
// Fourier-Bohr machinery, Poisson-summation verification, and the
// rational-approximant spectral pipeline.

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fq/laurent.hpp"

namespace fq {

// Lebesgue measure of the unit ball in R^n
double unit_ball_volume(int n);

struct Window {
  Eigen::VectorXd lo, hi;  // box within which atoms are complete

  static Window ball(int dim, double radius, const Eigen::VectorXd* center = nullptr);
  bool contains(const Eigen::VectorXd& x) const;
  int dim() const { return int(lo.size()); }
};

struct Atom {
  Eigen::VectorXd x;
  cplx w;
};

struct DiscreteMeasure {
  int dim = 1;
  std::vector<Atom> atoms;
  Window window;

  // merge coincident atoms (tolerance in position), drop zero weights
  void normalize(double pos_tol = 1e-12);
  double total_variation() const;
};

struct MultisetPoint {
  Eigen::VectorXd x;
  int mult = 1;
};

struct Multiset {
  int dim = 1;
  std::vector<MultisetPoint> points;
  Window window;

  DiscreteMeasure to_measure() const;
  long long total_multiplicity() const;
};

struct SpectrumAtom {
  std::optional<ExpVec> label;  // l in Z^m when the frequency is M^T l
  Eigen::VectorXd frequency;
  cplx coeff;
};

struct SpectrumTable {
  int dim = 1;
  std::vector<SpectrumAtom> atoms;

  void merge(double freq_tol = 1e-10);
};

struct TestFunction {
  enum class Kind { Gaussian, ModulatedGaussian } kind = Kind::Gaussian;
  Eigen::VectorXd center;      // a
  double sigma = 1.0;          // h(x) = exp(-pi |x-a|^2 / sigma^2) e^{2 pi i nu.x}
  Eigen::VectorXd modulation;  // nu (zero for plain Gaussian)

  static TestFunction gaussian(int dim, double sigma, const Eigen::VectorXd* center = nullptr);
  static TestFunction modulated(int dim, double sigma, const Eigen::VectorXd& nu,
                                const Eigen::VectorXd* center = nullptr);
  cplx eval(const Eigen::VectorXd& x) const;
  cplx fourier(const Eigen::VectorXd& y) const;      // closed form
  double envelope(double radius) const;              // sup |h| outside B(0, radius)
  double fourier_envelope(double radius) const;
};

// --- multiset operations ---------------------------------------------------

// bottleneck matching distance within the window; +infinity when total
// multiplicities differ
double multiset_distance(const Multiset& a, const Multiset& b);

Multiset multiset_sum(const Multiset& a, const Multiset& b);

// stabilized sup of ball multiplicity over a decreasing epsilon schedule
int multiset_index(const Multiset& a, const std::vector<double>& epsilon_schedule);

// --- measure probes ---------------------------------------------------------

// sup over x of |mu|(B(x,1)), exact sweep for dim 1, candidate centers above
double translation_bound(const DiscreteMeasure& mu);

struct GrowthReport {
  double exponent = 0;
  double residual = 0;
  bool super_polynomial = false;
  std::vector<double> window_slopes;  // dyadic log-log slopes, for diagnostics
};

GrowthReport growth_exponent(const DiscreteMeasure& mu);

// --- transforms --------------------------------------------------------------

DiscreteMeasure affine_transform(const DiscreteMeasure& mu, const Eigen::MatrixXd& m,
                                 const Eigen::VectorXd& y);
SpectrumTable dual_spectrum(const SpectrumTable& zeta, const Eigen::MatrixXd& m,
                            const Eigen::VectorXd& y);

// windowed Fourier-Bohr sum (1 / (c_n r^n)) sum_{|x - y| < r} w e^{-2 pi i omega.x}
cplx empirical_fourier_bohr(const DiscreteMeasure& mu, const Eigen::VectorXd& omega, double r,
                            const Eigen::VectorXd* window_center = nullptr);

// mean of f = F o rho_m o M: the exponent-0 coefficient of F (assumes the
// rows of M are rationally independent; recorded as metadata by callers)
cplx bohr_mean_structured(const LaurentPoly& f);

// --- Poisson summation check -------------------------------------------------

struct PoissonCheck {
  cplx atom_side;        // sum over mu of c_lambda h^(lambda)
  cplx spectrum_side;    // sum over zeta of a_s h(s)
  double discrepancy = 0;
  double truncation_bound = 0;
  bool pass = false;
};

struct PoissonReport {
  std::vector<PoissonCheck> checks;
  bool pass = false;
};

PoissonReport poisson_check(const DiscreteMeasure& mu, const SpectrumTable& zeta,
                            const std::vector<TestFunction>& tests, double tolerance = 1e-10);

// --- rational-approximant spectrum (periodization pipeline) ------------------

// For exact rational M_k = beta N: substitute, collect torus roots lambda with
// multiplicities and emit spectrum atoms beta^n sum_lambda m_lambda lambda^{-l}
// at frequencies beta l within the window. Throws if an approximant root is
// off the torus beyond 1e-6 ("approximant not real-rooted").
SpectrumTable spectrum_rational_approx(const LaurentMap& q, const RealMat& mk,
                                       double freq_window);

struct DominanceRadius {
  Eigen::VectorXd log_radius;  // x with r = exp(x)
  double max_ratio = 0;        // max over the torus grid of |other terms / vertex term|
};

// radius on which the chosen vertex monomial dominates (ratio <= 1/2)
DominanceRadius dominance_radius(const LaurentPoly& q, const ExpVec& vertex, int grid = 64);

// mean of a smooth fiber function over |z_j| = r_j, tensor trapezoid with
// doubling until 1e-10
cplx constant_term_on_torus(const std::function<cplx(const Eigen::VectorXcd&)>& h, int dim,
                            const Eigen::VectorXd& radius);

}  // namespace fq
