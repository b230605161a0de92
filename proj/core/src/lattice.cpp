#include "fq/lattice.hpp"

#include <algorithm>

namespace fq {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::transpose() const {
  IntMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols != o.rows) throw Error("IntMat multiply: dimension mismatch");
  IntMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

bool IntMat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

Int IntMat::det() const {
  if (rows != cols) throw Error("det: matrix not square");
  int n = rows;
  if (n == 0) return 1;
  IntMat m = *this;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace {

struct SnfWork {
  IntMat a, u, v;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  // row_i -= q * row_k
  void row_sub(int i, int k, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < a.cols; ++c) a.at(i, c) -= q * a.at(k, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(k, c);
  }
  void col_sub(int j, int k, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < a.rows; ++r) a.at(r, j) -= q * a.at(r, k);
    for (int r = 0; r < v.rows; ++r) v.at(r, j) -= q * v.at(r, k);
  }
  void row_negate(int i) {
    for (int c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  }
};

// nearest-integer quotient, minimizing |a - q*b|
Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int babs = abs(b);
  if (r * 2 > babs) q += 1;
  return q;
}

}  // namespace

SnfResult smith_normal_form(const IntMat& input) {
  if (input.rows == 0 || input.cols == 0) throw Error("smith_normal_form: empty matrix");
  if (input.is_zero()) throw Error("smith_normal_form: zero matrix");
  SnfWork w{input, IntMat::identity(input.rows), IntMat::identity(input.cols)};
  const int m = input.rows, n = input.cols;
  const int nmin = std::min(m, n);

  for (int s = 0; s < nmin; ++s) {
    // pivot: smallest nonzero absolute value in the trailing submatrix
    int pi = -1, pj = -1;
    Int best;
    for (int i = s; i < m; ++i)
      for (int j = s; j < n; ++j) {
        if (w.a.at(i, j) == 0) continue;
        Int v = abs(w.a.at(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    w.row_swap(s, pi);
    w.col_swap(s, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = s + 1; i < m; ++i) {
        if (w.a.at(i, s) == 0) continue;
        Int q = round_div(w.a.at(i, s), w.a.at(s, s));
        w.row_sub(i, s, q);
        if (w.a.at(i, s) != 0) {
          // remainder strictly smaller; promote it to the pivot
          w.row_swap(s, i);
          clean = false;
        }
      }
      for (int j = s + 1; j < n; ++j) {
        if (w.a.at(s, j) == 0) continue;
        Int q = round_div(w.a.at(s, j), w.a.at(s, s));
        w.col_sub(j, s, q);
        if (w.a.at(s, j) != 0) {
          w.col_swap(s, j);
          clean = false;
        }
      }
    }

    // divisibility fix-up: pivot must divide the rest of the submatrix
    bool redo = false;
    for (int i = s + 1; i < m && !redo; ++i)
      for (int j = s + 1; j < n && !redo; ++j) {
        if (w.a.at(i, j) % w.a.at(s, s) != 0) {
          // fold row i into the pivot row and restart this pivot
          for (int c = 0; c < n; ++c) w.a.at(s, c) += w.a.at(i, c);
          for (int c = 0; c < m; ++c) w.u.at(s, c) += w.u.at(i, c);
          redo = true;
        }
      }
    if (redo) {
      --s;
      continue;
    }
    if (w.a.at(s, s) < 0) w.row_negate(s);
  }

  SnfResult res{w.u, w.a, w.v};
  return res;
}

IntMat unimodular_completion(const std::vector<Int>& gamma) {
  const int m = int(gamma.size());
  if (m == 0) throw Error("unimodular_completion: empty gamma");
  Int g = 0;
  for (const Int& x : gamma) {
    if (x <= 0) throw Error("unimodular_completion: gamma entries must be positive");
    g = gcd(g, x);
  }
  if (g != 1) throw Error("gamma not primitive");

  IntMat col(m, 1);
  for (int i = 0; i < m; ++i) col.at(i, 0) = gamma[i];
  SnfResult snf = smith_normal_form(col);
  // snf.d = (1,0,...,0)^T and U*gamma*V = D with V = [+-1], so U*gamma = +-e1.
  IntMat u = snf.u;
  Int first = 0;
  for (int j = 0; j < m; ++j) first += u.at(0, j) * gamma[j];
  if (first == -1)
    for (int j = 0; j < m; ++j) u.at(0, j) = -u.at(0, j);

  // rotate e1 into position e_m
  IntMat j(m, m);
  for (int r = 0; r < m; ++r) {
    int src = (r == m - 1) ? 0 : r + 1;
    for (int c = 0; c < m; ++c) j.at(r, c) = u.at(src, c);
  }
  // postcondition check, cheap at these sizes
  for (int r = 0; r < m; ++r) {
    Int have = 0;
    for (int c = 0; c < m; ++c) have += j.at(r, c) * gamma[c];
    Int want = (r == m - 1) ? Int(1) : Int(0);
    if (have != want) throw Error("unimodular_completion: internal postcondition failed");
  }
  Int dj = j.det();
  if (dj != 1 && dj != -1) throw Error("unimodular_completion: result not unimodular");
  return j;
}

AnnihilatorCovector annihilator(const Eigen::VectorXd& b, const std::vector<Int>& gamma,
                                double delta) {
  const int n = int(b.size());
  const int m = n + 1;
  if (int(gamma.size()) != m) throw Error("annihilator: gamma must have length n+1");
  if (delta <= 0) throw Error("annihilator: delta must be positive");
  double denom = 0;
  for (int j = 0; j < n; ++j) denom += b[j] * gamma[j].get_d();
  denom += gamma[m - 1].get_d();
  if (denom == 0) throw Error("annihilator: degenerate gamma/b combination");
  double c = delta / denom;
  Eigen::VectorXd alpha(m);
  for (int j = 0; j < n; ++j) alpha[j] = c * b[j];
  alpha[m - 1] = c;
  return AnnihilatorCovector{alpha, delta};
}

}  // namespace fq
