#include "fq/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "fq/lattice.hpp"

namespace fq {

namespace {

// pairwise reduction keeps long windowed sums stable
cplx pairwise_sum(std::vector<cplx>& v, size_t lo, size_t hi) {
  if (hi - lo <= 8) {
    cplx s = 0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

LaurentPoly LaurentPoly::monomial(int m, const ExpVec& e, cplx c) {
  LaurentPoly q;
  q.nvars = m;
  if (c != cplx(0)) q.terms[e] = c;
  return q;
}

double LaurentPoly::max_coeff_abs() const {
  double mx = 0;
  for (const auto& [e, c] : terms) mx = std::max(mx, std::abs(c));
  return mx;
}

void LaurentPoly::insert_term(const ExpVec& e, cplx c, const GaussRat* ec) {
  if (int(e.size()) != nvars) throw Error("LaurentPoly: exponent arity mismatch");
  terms[e] += c;
  if (exact) {
    if (ec)
      (*exact)[e] = (*exact)[e] + *ec;
    else
      exact.reset();  // mixing exact and inexact data drops the mirror
  }
}

void LaurentPoly::prune(double rel_tol) {
  if (exact) {
    for (auto it = exact->begin(); it != exact->end();) {
      if (it->second.is_zero()) {
        terms.erase(it->first);
        it = exact->erase(it);
      } else {
        terms[it->first] = it->second.d();
        ++it;
      }
    }
    return;
  }
  double mx = max_coeff_abs();
  for (auto it = terms.begin(); it != terms.end();)
    it = (std::abs(it->second) < rel_tol * mx) ? terms.erase(it) : std::next(it);
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars != b.nvars) throw Error("lp_add: arity mismatch");
  LaurentPoly r = a;
  if (!(a.exact && b.exact)) r.exact.reset();
  for (const auto& [e, c] : b.terms) {
    r.terms[e] += c;
    if (r.exact) (*r.exact)[e] = (*r.exact)[e] + b.exact->at(e);
  }
  r.prune();
  return r;
}

LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b) {
  return lp_add(a, lp_scale(b, cplx(-1)));
}

LaurentPoly lp_scale(const LaurentPoly& a, cplx c) {
  LaurentPoly r = a;
  for (auto& [e, v] : r.terms) v *= c;
  if (r.exact) {
    GaussRat g(Rat(c.real()), Rat(c.imag()));  // exact binary value of the scalar
    for (auto& [e, v] : *r.exact) v = v * g;
  }
  r.prune();
  return r;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars != b.nvars) throw Error("lp_mul: arity mismatch");
  LaurentPoly r = LaurentPoly::zero(a.nvars);
  if (a.exact && b.exact) r.exact.emplace();
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      ExpVec e(a.nvars);
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      r.terms[e] += ca * cb;
      if (r.exact) (*r.exact)[e] = (*r.exact)[e] + a.exact->at(ea) * b.exact->at(eb);
    }
  r.prune();
  return r;
}

LaurentPoly lp_conj_reflect(const LaurentPoly& a) {
  LaurentPoly r = LaurentPoly::zero(a.nvars);
  if (a.exact) r.exact.emplace();
  for (const auto& [e, c] : a.terms) {
    ExpVec ne(e.size());
    for (size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
    r.terms[ne] = std::conj(c);
    if (r.exact) (*r.exact)[ne] = a.exact->at(e).conj();
  }
  return r;
}

cplx eval_laurent(const LaurentPoly& q, const Eigen::VectorXcd& z) {
  if (int(z.size()) != q.nvars) throw Error("eval_laurent: point arity mismatch");
  std::vector<cplx> vals;
  vals.reserve(q.terms.size());
  for (const auto& [e, c] : q.terms) {
    cplx t = c;
    for (int j = 0; j < q.nvars; ++j) {
      if (e[j] == 0) continue;
      if (z[j] == cplx(0)) {
        if (e[j] < 0) throw Error("eval_laurent: zero coordinate with negative exponent");
        t = 0;
        break;
      }
      t *= std::pow(z[j], double(e[j]));
    }
    vals.push_back(t);
  }
  if (vals.empty()) return 0;
  return pairwise_sum(vals, 0, vals.size());
}

Polytope newton_polytope(const LaurentPoly& q) {
  if (q.terms.empty()) throw Error("newton_polytope: zero polynomial");
  if (q.nvars > 3) throw Error("newton_polytope: ambient dimension capped at 3");
  std::vector<RatVec> pts;
  for (const auto& [e, c] : q.terms) {
    RatVec p;
    for (long long x : e) p.push_back(Rat(long(x)));
    pts.push_back(p);
  }
  return convex_hull(q.nvars, pts);
}

LaurentPoly facial_restriction(const LaurentPoly& q, const RatVec& u) {
  if (int(u.size()) != q.nvars) throw Error("facial_restriction: direction arity mismatch");
  bool zero = std::all_of(u.begin(), u.end(), [](const Rat& x) { return x == 0; });
  if (zero) throw Error("facial_restriction: u must be nonzero");
  if (q.terms.empty()) return q;
  std::optional<Rat> best;
  for (const auto& [e, c] : q.terms) {
    Rat s = 0;
    for (int i = 0; i < q.nvars; ++i) s += u[i] * Rat(long(e[i]));
    if (!best || s > *best) best = s;
  }
  LaurentPoly r = LaurentPoly::zero(q.nvars);
  if (q.exact) r.exact.emplace();
  for (const auto& [e, c] : q.terms) {
    Rat s = 0;
    for (int i = 0; i < q.nvars; ++i) s += u[i] * Rat(long(e[i]));
    if (s == *best) {
      r.terms[e] = c;
      if (r.exact) (*r.exact)[e] = q.exact->at(e);
    }
  }
  return r;
}

LaurentPoly facial_restriction(const LaurentPoly& q, const Eigen::VectorXd& u) {
  RatVec ru;
  for (int i = 0; i < u.size(); ++i) ru.push_back(Rat(u[i]));
  return facial_restriction(q, ru);
}

void LaurentMap::validate() const {
  if (comps.empty()) throw Error("LaurentMap: needs at least one component");
  for (const auto& c : comps)
    if (c.nvars != comps[0].nvars) throw Error("LaurentMap: mixed arities");
}

Eigen::VectorXcd eval_laurent_map(const LaurentMap& q, const Eigen::VectorXcd& z) {
  Eigen::VectorXcd out(q.ncomps());
  for (int i = 0; i < q.ncomps(); ++i) out[i] = eval_laurent(q.comps[i], z);
  return out;
}

LaurentPoly monomial_substitute(const LaurentPoly& q, const IntMat& n) {
  if (n.rows != q.nvars) throw Error("monomial_substitute: matrix rows must match arity");
  LaurentPoly r = LaurentPoly::zero(n.cols);
  if (q.exact) r.exact.emplace();
  for (const auto& [e, c] : q.terms) {
    ExpVec ne(n.cols, 0);
    for (int j = 0; j < n.cols; ++j) {
      Int acc = 0;
      for (int i = 0; i < n.rows; ++i) acc += n.at(i, j) * Int(long(e[i]));
      if (!acc.fits_slong_p()) throw Error("monomial_substitute: exponent overflow");
      ne[j] = acc.get_si();
    }
    r.terms[ne] += c;
    if (r.exact) (*r.exact)[ne] = (*r.exact)[ne] + q.exact->at(e);
  }
  r.prune();
  return r;
}

LaurentMap monomial_substitute(const LaurentMap& q, const IntMat& n) {
  LaurentMap r;
  for (const auto& c : q.comps) r.comps.push_back(monomial_substitute(c, n));
  return r;
}

LaurentMap gl_transform(const LaurentMap& q, const IntMat& a) {
  const int m = q.nvars();
  if (a.rows != a.cols || a.rows != m) throw Error("gl_transform: bad matrix shape");
  Int d = a.det();
  if (d != 1 && d != -1) throw Error("gl_transform: matrix is not unimodular");
  LaurentMap r;
  for (const auto& comp : q.comps) {
    LaurentPoly t = LaurentPoly::zero(m);
    if (comp.exact) t.exact.emplace();
    for (const auto& [e, c] : comp.terms) {
      ExpVec ne(m, 0);
      for (int i = 0; i < m; ++i) {
        Int acc = 0;
        for (int j = 0; j < m; ++j) acc += a.at(i, j) * Int(long(e[j]));
        ne[i] = acc.get_si();
      }
      t.terms[ne] = c;
      if (t.exact) (*t.exact)[ne] = comp.exact->at(e);
    }
    r.comps.push_back(std::move(t));
  }
  return r;
}

bool is_minimal(const LaurentMap& q) {
  q.validate();
  const int m = q.nvars();
  std::vector<ExpVec> exps;
  for (const auto& c : q.comps)
    for (const auto& [e, v] : c.terms) exps.push_back(e);
  if (exps.empty()) return false;
  IntMat mat(m, int(exps.size()));
  for (int j = 0; j < int(exps.size()); ++j)
    for (int i = 0; i < m; ++i) mat.at(i, j) = Int(long(exps[j][i]));
  if (mat.is_zero()) return false;
  auto snf = smith_normal_form(mat);
  int units = 0;
  for (int i = 0; i < std::min(snf.d.rows, snf.d.cols); ++i)
    if (snf.d.at(i, i) == 1) ++units;
  return units == m;
}

LaurentMap torus_twist(const LaurentMap& q, const Eigen::VectorXd& phase) {
  if (int(phase.size()) != q.nvars()) throw Error("torus_twist: phase arity mismatch");
  LaurentMap r;
  for (const auto& comp : q.comps) {
    LaurentPoly t = LaurentPoly::zero(comp.nvars);
    for (const auto& [e, c] : comp.terms) {
      double ang = 0;
      for (int i = 0; i < comp.nvars; ++i) ang += phase[i] * double(e[i]);
      t.terms[e] = c * std::polar(1.0, 2 * M_PI * ang);
    }
    r.comps.push_back(std::move(t));
  }
  return r;
}

RealMat RealMat::from_exact(const std::vector<std::vector<Rat>>& m) {
  RealMat out;
  out.d.resize(int(m.size()), m.empty() ? 0 : int(m[0].size()));
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m[0].size()) throw Error("RealMat: ragged rows");
    for (size_t j = 0; j < m[i].size(); ++j) out.d(int(i), int(j)) = m[i][j].get_d();
  }
  out.exact = m;
  return out;
}

void TrigMapRep::validate() const {
  q.validate();
  if (m.rows() != q.nvars()) throw Error("TrigMapRep: M rows must equal torus dimension");
  if (m.cols() < 1 || m.cols() > m.rows()) throw Error("TrigMapRep: M must be m x n, n <= m");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.d);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  double smax = svd.singularValues()(0);
  if (!(smin > 1e-9 * smax)) throw Error("TrigMapRep: M is rank deficient");
}

Eigen::VectorXcd eval_trig(const TrigMapRep& p, const Eigen::VectorXcd& z) {
  if (int(z.size()) != p.dim()) throw Error("eval_trig: point arity mismatch");
  Eigen::VectorXcd w = p.m.d.cast<cplx>() * z;
  for (int j = 0; j < w.size(); ++j) {
    double im = w[j].imag();
    if (std::abs(2 * M_PI * im) > 700)
      throw Error("eval_trig: exponential overflow, |2 pi Im(Mz)| = " +
                  std::to_string(std::abs(2 * M_PI * im)));
  }
  Eigen::VectorXcd torus(w.size());
  for (int j = 0; j < w.size(); ++j) torus[j] = std::exp(cplx(0, 2 * M_PI) * w[j]);
  return eval_laurent_map(p.q, torus);
}

std::vector<SpectrumEntry> spectrum_trig(const TrigMapRep& p) {
  std::vector<SpectrumEntry> out;
  for (int ci = 0; ci < p.q.ncomps(); ++ci) {
    std::vector<SpectrumEntry> comp;
    for (const auto& [e, c] : p.q.comps[ci].terms) {
      Eigen::VectorXd l(p.torus_dim());
      for (int i = 0; i < p.torus_dim(); ++i) l[i] = double(e[i]);
      SpectrumEntry s{p.m.d.transpose() * l, ci, c};
      bool merged = false;
      for (auto& prev : comp)
        if ((prev.frequency - s.frequency).lpNorm<Eigen::Infinity>() <= 1e-10) {
          prev.coeff += s.coeff;
          merged = true;
          break;
        }
      if (!merged) comp.push_back(s);
    }
    for (auto& s : comp)
      if (std::abs(s.coeff) > 0) out.push_back(s);
  }
  return out;
}

std::vector<Polytope> trig_newton_tuple(const TrigMapRep& p) {
  std::vector<Polytope> tuple;
  for (const auto& comp : p.q.comps) {
    std::vector<Eigen::VectorXd> pts;
    for (const auto& [e, c] : comp.terms) {
      Eigen::VectorXd l(p.torus_dim());
      for (int i = 0; i < p.torus_dim(); ++i) l[i] = double(e[i]);
      pts.push_back(p.m.d.transpose() * l);
    }
    tuple.push_back(convex_hull_snapped(pts));
  }
  return tuple;
}

}  // namespace fq
