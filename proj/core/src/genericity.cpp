#include "fq/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fq/poly1.hpp"

namespace fq {

namespace {

RatVec negate(const RatVec& v) {
  RatVec r;
  for (const Rat& x : v) r.push_back(-x);
  return r;
}

LaurentPoly facial_min(const LaurentPoly& q, const RatVec& u) {
  return facial_restriction(q, negate(u));
}

// exponents of a facial poly lie on a line; returns (base, primitive step w,
// coefficient list along the line). Empty coeffs if the support is not a line.
struct LineFace {
  ExpVec base;
  ExpVec step;
  std::vector<cplx> coeffs;
  std::vector<GaussRat> exact;  // parallel to coeffs when available
  bool has_exact = false;
};

long long igcd(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

LineFace collapse_to_line(const LaurentPoly& f) {
  LineFace out;
  std::vector<ExpVec> es;
  for (const auto& [e, c] : f.terms) es.push_back(e);
  if (es.size() < 2) return out;
  const int m = f.nvars;
  ExpVec d(m, 0);
  for (int i = 0; i < m; ++i) d[i] = es[1][i] - es[0][i];
  long long g = 0;
  for (long long x : d) g = igcd(g, x);
  if (g == 0) return out;
  for (auto& x : d) x /= g;
  for (long long x : d) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : d) y = -y;
    break;
  }
  long long kmin = 0, kmax = 0;
  std::vector<long long> ks;
  for (const auto& e : es) {
    long long k = 0;
    bool set = false;
    for (int i = 0; i < m; ++i) {
      long long diff = e[i] - es[0][i];
      if (d[i] == 0) {
        if (diff != 0) return out;
      } else {
        long long kk = diff / d[i];
        if (kk * d[i] != diff) return out;
        if (set && kk != k) return out;
        k = kk;
        set = true;
      }
    }
    ks.push_back(k);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  out.base.resize(m);
  for (int i = 0; i < m; ++i) out.base[i] = es[0][i] + kmin * d[i];
  out.step = d;
  out.coeffs.assign(size_t(kmax - kmin + 1), cplx(0));
  out.has_exact = f.has_exact();
  if (out.has_exact) out.exact.assign(out.coeffs.size(), GaussRat());
  size_t idx = 0;
  for (const auto& [e, c] : f.terms) {
    long long k = ks[idx++] - kmin;
    out.coeffs[size_t(k)] = c;
    if (out.has_exact) out.exact[size_t(k)] = f.exact->at(e);
  }
  return out;
}

double scale_of(const std::vector<cplx>& c) {
  double s = 0;
  for (const cplx& x : c) s = std::max(s, std::abs(x));
  return s > 0 ? s : 1.0;
}

double normalized_resultant(const Poly1& a, const Poly1& b) {
  double sa = scale_of(a), sb = scale_of(b);
  int da = int(a.size()) - 1, db = int(b.size()) - 1;
  cplx r = sylvester_resultant(a, b);
  double denom = std::pow(sa, db) * std::pow(sb, da);
  return denom > 0 ? std::abs(r) / denom : std::abs(r);
}

// z in C*^2 with z^w = s0, via extended gcd on the primitive step
std::vector<cplx> lift_root(const ExpVec& w, cplx s0) {
  long long a = w[0], b = w.size() > 1 ? w[1] : 0;
  long long r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (r0 < 0) {
    x0 = -x0;
    y0 = -y0;
  }
  std::vector<cplx> z;
  z.push_back(std::pow(s0, double(x0)));
  if (w.size() > 1) z.push_back(std::pow(s0, double(y0)));
  return z;
}

struct FaceDecision {
  bool empty = false;
  bool decided = false;
  double margin = std::numeric_limits<double>::infinity();
  std::vector<cplx> root;
  double value = 0;
  std::string note;
};

// facial system where both components have >= 2 terms, n = 2: the supports
// are parallel lines; solvable iff the collapsed univariates share a root
// (sigma_j(0) != 0, so any shared root is automatically on C*).
FaceDecision decide_edge_pair(const LineFace& f1, const LineFace& f2) {
  FaceDecision d;
  if (f1.coeffs.empty() || f2.coeffs.empty() || f1.step != f2.step) return d;
  Poly1 s1(f1.coeffs.begin(), f1.coeffs.end());
  Poly1 s2(f2.coeffs.begin(), f2.coeffs.end());
  d.decided = true;
  d.value = normalized_resultant(s1, s2);
  auto witness_root = [&]() {
    auto roots = poly_roots(s1);
    double best = std::numeric_limits<double>::infinity();
    cplx bs = 0;
    for (cplx r0 : roots) {
      double denom = 0, p = 1;
      for (const cplx& c : s2) {
        denom += std::abs(c) * p;
        p *= std::abs(r0);
      }
      double v = std::abs(poly_eval(s2, r0)) / (denom > 0 ? denom : 1.0);
      if (v < best) {
        best = v;
        bs = r0;
      }
    }
    d.root = lift_root(f1.step, bs);
    return best;
  };
  if (f1.has_exact && f2.has_exact) {
    GaussRat r = sylvester_resultant_exact(f1.exact, f2.exact);
    d.empty = !r.is_zero();
    d.margin = d.empty ? d.value : 0.0;
    d.note = "exact resultant";
    if (!d.empty) d.value = witness_root();
    return d;
  }
  double best = witness_root();
  d.empty = best > 1e-8;
  d.note = "numeric resultant/roots";
  if (d.empty) {
    d.margin = std::max(d.value, best);
    d.root.clear();
  } else {
    d.margin = 0;
    d.value = best;
  }
  return d;
}

double min_modulus_on_torus_grid(const std::vector<LaurentPoly>& faces, int grid) {
  const int m = faces[0].nvars;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m, 0);
  Eigen::VectorXcd z(m);
  while (true) {
    for (int i = 0; i < m; ++i) z[i] = std::polar(1.0, 2 * M_PI * idx[i] / double(grid));
    double worst = 0;
    for (const auto& comp : faces) {
      double scale = comp.max_coeff_abs();
      worst = std::max(worst, std::abs(eval_laurent(comp, z)) / (scale > 0 ? scale : 1.0));
    }
    best = std::min(best, worst);
    int k = 0;
    while (k < m && ++idx[k] == grid) idx[k++] = 0;
    if (k == m) break;
  }
  return best;
}

}  // namespace

GenericityVerdict is_generic(const LaurentMap& q) {
  q.validate();
  const int n = q.ncomps();
  const int m = q.nvars();
  if (n != m) throw Error("is_generic: needs a square Laurent map (n = m)");
  if (n > 3) throw Error("is_generic: unsupported dimension (n > 3)");
  for (const auto& c : q.comps)
    if (c.is_zero()) {
      GenericityVerdict v;
      v.verdict = Verdict::NonGeneric;
      FacialWitness w;
      w.note = "zero component";
      v.witnesses.push_back(w);
      return v;
    }

  std::vector<Polytope> tuple;
  for (const auto& c : q.comps) tuple.push_back(newton_polytope(c));
  auto reps = normal_fan_representatives(tuple);

  GenericityVerdict verdict;
  verdict.verdict = Verdict::Generic;
  verdict.margin = std::numeric_limits<double>::infinity();
  bool any_undecided = false;

  for (const auto& rep : reps) {
    std::vector<LaurentPoly> faces;
    bool has_monomial = false;
    double mono_margin = std::numeric_limits<double>::infinity();
    for (const auto& c : q.comps) {
      faces.push_back(facial_min(c, rep.u));
      if (faces.back().is_monomial()) {
        has_monomial = true;
        double scale = c.max_coeff_abs();
        mono_margin =
            std::min(mono_margin, std::abs(faces.back().terms.begin()->second) / scale);
      }
    }
    if (has_monomial) {
      // a nowhere-zero component makes the facial system empty
      verdict.margin = std::min(verdict.margin, mono_margin);
      continue;
    }
    if (n == 1) {
      // univariate face with >= 2 terms always has a root in C*
      FacialWitness w;
      w.u = rep.u;
      w.note = "univariate face with multiple terms";
      auto lf = collapse_to_line(faces[0]);
      auto roots = poly_roots(Poly1(lf.coeffs.begin(), lf.coeffs.end()));
      if (!roots.empty()) w.root = lift_root(lf.step, roots[0]);
      verdict.witnesses.push_back(w);
      verdict.verdict = Verdict::NonGeneric;
      verdict.margin = 0;
      continue;
    }
    if (n == 2) {
      auto d = decide_edge_pair(collapse_to_line(faces[0]), collapse_to_line(faces[1]));
      if (d.decided) {
        if (d.empty) {
          verdict.margin = std::min(verdict.margin, d.margin);
        } else {
          FacialWitness w;
          w.u = rep.u;
          w.note = d.note;
          w.root = d.root;
          w.value = d.value;
          verdict.witnesses.push_back(w);
          verdict.verdict = Verdict::NonGeneric;
          verdict.margin = 0;
        }
        continue;
      }
    }
    // n = 3 (or irregular support): sampling probe, never certifies
    double mm = min_modulus_on_torus_grid(faces, 24);
    if (mm < 1e-8) {
      FacialWitness w;
      w.u = rep.u;
      w.note = "torus sample hit";
      w.value = mm;
      verdict.witnesses.push_back(w);
      verdict.verdict = Verdict::NonGeneric;
      verdict.margin = 0;
    } else {
      any_undecided = true;
      verdict.margin = std::min(verdict.margin, mm);
    }
  }
  if (verdict.verdict == Verdict::Generic && any_undecided) verdict.verdict = Verdict::Undecided;
  return verdict;
}

namespace {

// pull a fan direction u (in R^n) back to exponent space: v = M u
RatVec pullback_direction(const TrigMapRep& p, const RatVec& u) {
  const int m = p.torus_dim(), n = p.dim();
  RatVec v(m, Rat(0));
  if (p.m.exact) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) v[i] += (*p.m.exact)[i][j] * u[j];
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) v[i] += Rat(p.m.d(i, j)) * u[j];
  }
  return v;
}

}  // namespace

GenericityVerdict is_uniformly_generic(const TrigMapRep& p, int grid_resolution) {
  p.validate();
  if (grid_resolution < 8) throw Error("is_uniformly_generic: grid_resolution must be >= 8");
  const int m = p.torus_dim(), n = p.dim();
  if (m == n) {
    // torus twists of a square representation are uniform limits of
    // translates; facial solvability is translation invariant
    return is_generic(p.q);
  }

  auto tuple = trig_newton_tuple(p);
  auto reps = normal_fan_representatives(tuple);

  struct FaceCase {
    RatVec u;
    std::vector<LaurentPoly> faces;  // min convention, exponent space
  };
  std::vector<FaceCase> cases;
  for (const auto& rep : reps) {
    FaceCase fc;
    fc.u = rep.u;
    RatVec v = pullback_direction(p, rep.u);
    for (const auto& c : p.q.comps) fc.faces.push_back(facial_min(c, v));
    cases.push_back(std::move(fc));
  }

  GenericityVerdict verdict;
  verdict.verdict = Verdict::Generic;
  verdict.margin = std::numeric_limits<double>::infinity();
  bool any_undecided = false;

  // Lipschitz estimate: twisted coefficients rotate at rate 2 pi |l|_1
  double lip = 0;
  for (const auto& c : p.q.comps)
    for (const auto& [e, co] : c.terms) {
      double l1 = 0;
      for (long long x : e) l1 += std::abs(double(x));
      lip = std::max(lip, 2 * M_PI * l1);
    }
  double grid_step = std::sqrt(double(m)) / (2.0 * grid_resolution);
  double margin_floor = 10.0 * lip * grid_step;

  std::vector<int> idx(m, 0);
  while (true) {
    Eigen::VectorXd phase(m);
    for (int i = 0; i < m; ++i) phase[i] = idx[i] / double(grid_resolution);

    for (const auto& fc : cases) {
      double best_single = -1;
      std::vector<LineFace> lines;
      for (const auto& face : fc.faces) {
        cplx s = 0;
        double scale = 0;
        bool single = true;
        Eigen::VectorXd freq0;
        for (const auto& [e, c] : face.terms) {
          Eigen::VectorXd l(m);
          for (int i = 0; i < m; ++i) l[i] = double(e[i]);
          Eigen::VectorXd f = p.m.d.transpose() * l;
          if (freq0.size() == 0)
            freq0 = f;
          else if ((f - freq0).lpNorm<Eigen::Infinity>() > 1e-10)
            single = false;
          double ang = 0;
          for (int i = 0; i < m; ++i) ang += phase[i] * double(e[i]);
          s += c * std::polar(1.0, 2 * M_PI * ang);
          scale += std::abs(c);
        }
        if (single)
          best_single = std::max(best_single, std::abs(s) / (scale > 0 ? scale : 1.0));
        else
          lines.push_back(collapse_to_line(face));
      }
      if (best_single > 1e-8) {
        verdict.margin = std::min(verdict.margin, best_single);
        continue;  // one nowhere-zero facial component suffices
      }
      if (best_single >= 0 && lines.empty()) {
        // every facial component is a single frequency whose twisted
        // coefficient sum vanishes: the whole facial system is identically 0
        FacialWitness w;
        w.u = fc.u;
        w.note = "facial coefficient sum vanishes under twist";
        w.value = std::max(best_single, 0.0);
        w.twist_phase = phase;
        verdict.witnesses.push_back(w);
        verdict.verdict = Verdict::NonGeneric;
        verdict.margin = 0;
        continue;
      }
      // every facial component is multi-frequency: for n = 2 with both
      // supports on a common exponent line, the twisted resultant decides
      if (n == 2 && lines.size() == 2 && !lines[0].coeffs.empty() &&
          !lines[1].coeffs.empty() && lines[0].step == lines[1].step) {
        auto twist_line = [&](const LineFace& lf) {
          Poly1 out;
          for (size_t k = 0; k < lf.coeffs.size(); ++k) {
            double ang = 0;
            for (int i = 0; i < m; ++i)
              ang += phase[i] * double(lf.base[i] + (long long)(k)*lf.step[i]);
            out.push_back(lf.coeffs[k] * std::polar(1.0, 2 * M_PI * ang));
          }
          return out;
        };
        double r = normalized_resultant(twist_line(lines[0]), twist_line(lines[1]));
        if (r < 1e-10) {
          FacialWitness w;
          w.u = fc.u;
          w.note = "twisted facial resultant vanishes";
          w.value = r;
          w.twist_phase = phase;
          verdict.witnesses.push_back(w);
          verdict.verdict = Verdict::NonGeneric;
          verdict.margin = 0;
        } else {
          verdict.margin = std::min(verdict.margin, r);
        }
        continue;
      }
      any_undecided = true;  // unresolved face class: never claim genericity
    }

    if (verdict.verdict == Verdict::NonGeneric) break;
    int k = 0;
    while (k < m && ++idx[k] == grid_resolution) idx[k++] = 0;
    if (k == m) break;
  }

  if (verdict.verdict == Verdict::Generic) {
    if (any_undecided || !(verdict.margin > margin_floor)) verdict.verdict = Verdict::Undecided;
  }
  return verdict;
}

}  // namespace fq
