#include "fq/poly1.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace fq {

cplx poly_eval(const Poly1& p, cplx z) {
  cplx acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

Poly1 poly_derivative(const Poly1& p) {
  Poly1 d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(double(i) * p[i]);
  return d;
}

Poly1 poly_trim(const Poly1& p, double rel_tol) {
  double mx = 0;
  for (const cplx& c : p) mx = std::max(mx, std::abs(c));
  Poly1 q = p;
  while (q.size() > 1 && std::abs(q.back()) <= rel_tol * mx) q.pop_back();
  return q;
}

std::vector<cplx> poly_roots(const Poly1& input) {
  Poly1 p = poly_trim(input);
  int d = int(p.size()) - 1;
  if (d <= 0) return {};
  if (d == 1) return {-p[0] / p[1]};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -p[i] / p[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  std::vector<cplx> roots;
  for (int i = 0; i < d; ++i) {
    cplx r = es.eigenvalues()[i];
    // one Newton polish step stabilizes clustered eigenvalues
    for (int it = 0; it < 3; ++it) {
      cplx pv = poly_eval(p, r);
      cplx dv = poly_eval(poly_derivative(p), r);
      if (std::abs(dv) < 1e-300) break;
      cplx step = pv / dv;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 1.0 + std::abs(r)) break;
      r -= step;
    }
    roots.push_back(r);
  }
  return roots;
}

namespace {

template <class T>
std::vector<std::vector<T>> sylvester_matrix(const std::vector<T>& a, const std::vector<T>& b,
                                             const T& zero) {
  int da = int(a.size()) - 1, db = int(b.size()) - 1;
  int n = da + db;
  std::vector<std::vector<T>> s(n, std::vector<T>(n, zero));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) s[i][i + j] = a[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) s[db + i][i + j] = b[db - j];
  return s;
}

}  // namespace

cplx sylvester_resultant(const Poly1& a0, const Poly1& b0) {
  Poly1 a = poly_trim(a0), b = poly_trim(b0);
  if (a.size() <= 1 || b.size() <= 1) {
    // constant cases: res(c, g) = c^deg(g)
    if (a.size() == 1 && b.size() == 1) return 1.0;
    if (a.size() == 1) return std::pow(a[0], double(b.size() - 1));
    return std::pow(b[0], double(a.size() - 1));
  }
  auto s = sylvester_matrix<cplx>(a, b, cplx(0));
  int n = int(s.size());
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s[i][j];
  return m.determinant();
}

GaussRat sylvester_resultant_exact(const std::vector<GaussRat>& a0,
                                   const std::vector<GaussRat>& b0) {
  auto trim = [](std::vector<GaussRat> p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    return p;
  };
  auto pow_gr = [](GaussRat base, int e) {
    GaussRat acc(1);
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
  };
  std::vector<GaussRat> a = trim(a0), b = trim(b0);
  if (a.size() <= 1 || b.size() <= 1) {
    if (a.size() == 1 && b.size() == 1) return GaussRat(1);
    if (a.size() == 1) return pow_gr(a[0], int(b.size()) - 1);
    return pow_gr(b[0], int(a.size()) - 1);
  }
  auto s = sylvester_matrix<GaussRat>(a, b, GaussRat());
  int n = int(s.size());
  // exact Gaussian elimination with division, tracking row swaps
  GaussRat det(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!s[i][k].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return GaussRat();
    if (piv != k) {
      std::swap(s[piv], s[k]);
      det = -det;
    }
    det = det * s[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (s[i][k].is_zero()) continue;
      GaussRat f = s[i][k] / s[k][k];
      for (int j = k; j < n; ++j) s[i][j] = s[i][j] - f * s[k][j];
    }
  }
  return det;
}

}  // namespace fq
