#pragma once

// Exact integer linear algebra: Smith normal form, unimodular completions,
// and the annihilating covector used by the contour-integral spectrum.

#include <Eigen/Dense>

#include "fq/exact.hpp"

namespace fq {

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IntMat identity(int n);
  IntMat transpose() const;
  IntMat operator*(const IntMat& o) const;
  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Int det() const;  // Bareiss fraction-free elimination; square only
  bool is_zero() const;
};

// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ... (zeros last,
// nonzero entries positive).
struct SnfResult {
  IntMat u, d, v;
};

SnfResult smith_normal_form(const IntMat& a);

// For primitive gamma > 0 returns J in GL(m,Z) with J*gamma = (0,...,0,1)^T.
// The J produced by the SNF-based construction is one of many valid answers.
IntMat unimodular_completion(const std::vector<Int>& gamma);

// Covector alpha with alpha^T M = 0 for M = [I_n; -b^T] and alpha^T gamma = delta.
struct AnnihilatorCovector {
  Eigen::VectorXd alpha;  // length m = n+1
  double delta = 0;
};

AnnihilatorCovector annihilator(const Eigen::VectorXd& b, const std::vector<Int>& gamma,
                                double delta);

}  // namespace fq
