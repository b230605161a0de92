#pragma once

// Laurent polynomials/maps on the algebraic torus and trigonometric maps in
// the (Q, M) representation P = Q o rho_m o M.

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "fq/exact.hpp"
#include "fq/polytope.hpp"

namespace fq {

using ExpVec = std::vector<long long>;

// Finite sum of monomials c_l z^l, l in Z^m. Coefficients are complex doubles;
// an exact Gaussian-rational mirror is carried when the source data is exact
// (model files with rational entries) and survives the exact-friendly ops.
struct LaurentPoly {
  int nvars = 0;
  std::map<ExpVec, cplx> terms;
  std::optional<std::map<ExpVec, GaussRat>> exact;

  static LaurentPoly zero(int m) { return LaurentPoly{m, {}, std::nullopt}; }
  static LaurentPoly monomial(int m, const ExpVec& e, cplx c);

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }
  bool has_exact() const { return exact.has_value(); }
  double max_coeff_abs() const;

  void insert_term(const ExpVec& e, cplx c, const GaussRat* ec = nullptr);
  void prune(double rel_tol = 1e-14);  // drop merged near-zeros
};

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_scale(const LaurentPoly& a, cplx c);
// coefficients conjugated, exponents negated (matches conj(q(z)) on the torus)
LaurentPoly lp_conj_reflect(const LaurentPoly& a);

cplx eval_laurent(const LaurentPoly& q, const Eigen::VectorXcd& z);

Polytope newton_polytope(const LaurentPoly& q);

// terms on the face of N(q) MAXIMIZING <u, l>; with u = (cos t, sin t) this
// reproduces the standard 2x2 square case table at t = 0, pi/2, ...
// (the minimizing face is obtained by passing -u)
LaurentPoly facial_restriction(const LaurentPoly& q, const RatVec& u);
LaurentPoly facial_restriction(const LaurentPoly& q, const Eigen::VectorXd& u);

struct IntMat;  // fq/lattice.hpp

struct LaurentMap {
  std::vector<LaurentPoly> comps;

  int nvars() const { return comps.empty() ? 0 : comps[0].nvars; }
  int ncomps() const { return int(comps.size()); }
  void validate() const;
};

Eigen::VectorXcd eval_laurent_map(const LaurentMap& q, const Eigen::VectorXcd& z);

// exponent substitution l -> N^T l (composition with the monomial map z^N)
LaurentMap monomial_substitute(const LaurentMap& q, const IntMat& n);
LaurentPoly monomial_substitute(const LaurentPoly& q, const IntMat& n);

// GL(m,Z) change of variables; exponents l -> A l; requires |det A| = 1
LaurentMap gl_transform(const LaurentMap& q, const IntMat& a);

// Z-span of all exponent vectors equals Z^m
bool is_minimal(const LaurentMap& q);

// coefficient twist c_l -> g^l c_l for g = exp(2 pi i phase) on the torus
LaurentMap torus_twist(const LaurentMap& q, const Eigen::VectorXd& phase);

// real m x n frequency matrix, optionally exact rational
struct RealMat {
  Eigen::MatrixXd d;
  std::optional<std::vector<std::vector<Rat>>> exact;

  static RealMat from_double(const Eigen::MatrixXd& m) { return RealMat{m, std::nullopt}; }
  static RealMat from_exact(const std::vector<std::vector<Rat>>& m);
  int rows() const { return int(d.rows()); }
  int cols() const { return int(d.cols()); }
};

struct TrigMapRep {
  LaurentMap q;
  RealMat m;  // m x n, rank n

  int dim() const { return m.cols(); }       // n
  int torus_dim() const { return m.rows(); } // m
  void validate() const;                     // throws unless rank(M) = n
};

// Q(rho_m(M z)) componentwise; throws on exponential overflow
Eigen::VectorXcd eval_trig(const TrigMapRep& p, const Eigen::VectorXcd& z);

struct SpectrumEntry {
  Eigen::VectorXd frequency;  // M^T l
  int component = 0;
  cplx coeff;
};

// frequencies M^T l over the support, per component, collisions merged
std::vector<SpectrumEntry> spectrum_trig(const TrigMapRep& p);

// Newton polytopes of the components of P (real vertices M^T l)
std::vector<Polytope> trig_newton_tuple(const TrigMapRep& p);

}  // namespace fq
