#include "fq/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fq/poly1.hpp"

namespace fq {

namespace {

// pick the fiber variable: prefer the last coordinate, but it must have
// positive exponent spread or every fiber polynomial degenerates
int pick_fiber_var(const LaurentPoly& q) {
  const int m = q.nvars;
  for (int v = m - 1; v >= 0; --v) {
    long long lo = 0, hi = 0;
    bool first = true;
    for (const auto& [e, c] : q.terms) {
      if (first) {
        lo = hi = e[v];
        first = false;
      } else {
        lo = std::min(lo, e[v]);
        hi = std::max(hi, e[v]);
      }
    }
    if (hi > lo) return v;
  }
  return -1;
}

// root radii minus x_f on the fiber over (x, theta); theta has m-1 entries
std::vector<double> fiber_gaps(const LaurentPoly& q, int fv, const Eigen::VectorXd& x,
                               const std::vector<double>& theta) {
  const int m = q.nvars;
  std::map<long long, cplx> coef;
  for (const auto& [e, c] : q.terms) {
    cplx t = c;
    int ti = 0;
    for (int j = 0; j < m; ++j) {
      if (j == fv) continue;
      t *= std::polar(std::exp(x[j] * double(e[j])), 2 * M_PI * theta[ti] * double(e[j]));
      ++ti;
    }
    coef[e[fv]] += t;
  }
  Poly1 p;
  for (long long k = coef.begin()->first; k <= coef.rbegin()->first; ++k) {
    auto it = coef.find(k);
    p.push_back(it == coef.end() ? cplx(0) : it->second);
  }
  std::vector<double> gaps;
  for (cplx r : poly_roots(p)) {
    double ar = std::abs(r);
    if (ar <= 0) continue;
    gaps.push_back(std::log(ar) - x[fv]);
  }
  return gaps;
}

struct FiberScan {
  double min_abs = std::numeric_limits<double>::infinity();
  bool crossing = false;   // sign change of the gap product along the theta grid
  int roots_below = 0;     // grid-total count of roots with log radius < x_f
};

FiberScan scan_fiber(const LaurentPoly& q, int fv, const Eigen::VectorXd& x, int grid) {
  FiberScan out;
  const int gdim = q.nvars - 1;
  auto absorb = [&](const std::vector<double>& gaps, double& prod) {
    prod = 1.0;
    for (double gp : gaps) {
      out.min_abs = std::min(out.min_abs, std::abs(gp));
      if (gp < 0) ++out.roots_below;
      prod *= gp;
    }
    if (gaps.empty()) prod = 1.0;
  };
  if (gdim == 0) {
    double prod;
    absorb(fiber_gaps(q, fv, x, {}), prod);
    return out;
  }
  if (gdim == 1) {
    const int g = std::max(grid, 8);
    std::vector<double> prod(g);
    for (int i = 0; i < g; ++i) absorb(fiber_gaps(q, fv, x, {i / double(g)}), prod[i]);
    for (int i = 0; i < g; ++i)
      if (prod[i] * prod[(i + 1) % g] < 0) out.crossing = true;
    return out;
  }
  const int side = std::max(8, int(std::lround(std::sqrt(double(std::max(grid, 64))))));
  std::vector<std::vector<double>> prod(side, std::vector<double>(side, 1.0));
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      absorb(fiber_gaps(q, fv, x, {i / double(side), j / double(side)}), prod[i][j]);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      if (prod[i][j] * prod[(i + 1) % side][j] < 0) out.crossing = true;
      if (prod[i][j] * prod[i][(j + 1) % side] < 0) out.crossing = true;
    }
  return out;
}

}  // namespace

AmoebaResult amoeba_contains(const AmoebaQuery& query) {
  const LaurentPoly& q = query.q;
  if (q.nvars > 3) throw Error("amoeba_contains: m <= 3 only");
  if (int(query.x.size()) != q.nvars) throw Error("amoeba_contains: point arity mismatch");
  if (q.is_zero()) throw Error("amoeba_contains: zero polynomial rejected upstream");
  AmoebaResult res;
  int fv = pick_fiber_var(q);
  if (fv < 0) {  // single monomial: never zero on the torus
    res.verdict = Tri::No;
    res.min_gap = std::numeric_limits<double>::infinity();
    return res;
  }
  auto scan = scan_fiber(q, fv, query.x, query.grid);
  res.min_gap = scan.min_abs;
  if (scan.crossing || scan.min_abs < query.tolerance)
    res.verdict = Tri::Yes;
  else if (scan.min_abs > 10 * query.tolerance)
    res.verdict = Tri::No;
  else
    res.verdict = Tri::BoundaryUndecided;
  return res;
}

LaurentPoly lee_yang_family(const Eigen::MatrixXcd& a) {
  const int n = int(a.rows());
  if (a.cols() != n) throw Error("lee_yang_family: matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 0) throw Error("lee_yang_family: matrix must be symmetric");
      double mod = std::abs(a(i, j));
      if (!(mod > 0 && mod < 1)) throw Error("lee_yang_family: moduli must lie in (0,1)");
    }
  LaurentPoly q = LaurentPoly::zero(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    cplx c = 1;
    ExpVec e(n, 0);
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      e[j] = 1;
      for (int k = 0; k < n; ++k)
        if (!(mask & (1u << k))) c *= a(j, k);
    }
    q.terms[e] += c;
  }
  q.prune();
  return q;
}

LeeYangReport is_lee_yang(const LaurentPoly& q, int grid) {
  if (q.nvars > 3) throw Error("is_lee_yang: m <= 3 only");
  LeeYangReport rep;
  const int m = q.nvars;
  std::vector<Eigen::VectorXd> dirs;
  {
    std::vector<std::vector<double>> raw;
    if (m == 1) raw = {{1}};
    if (m == 2) raw = {{1, 1}, {2, 1}, {1, 2}, {4, 1}, {1, 4}};
    if (m == 3) raw = {{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {3, 1, 2}, {1, 3, 2}};
    for (auto& v : raw) {
      Eigen::VectorXd d(m);
      double norm = 0;
      for (int i = 0; i < m; ++i) norm += v[i] * v[i];
      norm = std::sqrt(norm);
      for (int i = 0; i < m; ++i) d[i] = v[i] / norm;
      dirs.push_back(d);
    }
  }
  bool undecided = false;
  for (int sign : {-1, +1}) {
    for (const auto& d : dirs) {
      for (int k = 1; k <= 64; ++k) {
        for (double rho : {std::exp(k / 8.0), std::exp(-k / 8.0)}) {
          AmoebaQuery query;
          query.q = q;
          query.x = double(sign) * rho * d;
          query.grid = grid;
          auto res = amoeba_contains(query);
          if (res.verdict == Tri::Yes) {
            rep.verdict = LeeYangVerdict::No;
            rep.witness_x = query.x;
            return rep;
          }
          if (res.verdict == Tri::BoundaryUndecided) undecided = true;
        }
      }
    }
  }
  rep.verdict = undecided ? LeeYangVerdict::Undecided : LeeYangVerdict::ProbablyYes;
  return rep;
}

namespace {

// grid-total count of fiber roots below the fiber radius, per component;
// a change along a continuous path in x means a root radius crossed
std::vector<int> below_signature(const LaurentMap& q, const Eigen::VectorXd& x, int grid) {
  std::vector<int> sig;
  for (const auto& comp : q.comps) {
    int fv = pick_fiber_var(comp);
    if (fv < 0) {
      sig.push_back(0);
      continue;
    }
    sig.push_back(scan_fiber(comp, fv, x, grid).roots_below);
  }
  return sig;
}

// common root of all components on the fiber torus over x (coarse grid scan)
double fiber_common_residual(const LaurentMap& q, const Eigen::VectorXd& x, int side) {
  const int mm = q.nvars();
  Eigen::VectorXcd z(mm);
  std::vector<int> idx(mm, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (int i = 0; i < mm; ++i)
      z[i] = std::polar(std::exp(x[i]), 2 * M_PI * idx[i] / double(side));
    double worst = 0;
    for (const auto& comp : q.comps)
      worst = std::max(worst, std::abs(eval_laurent(comp, z)) /
                                  std::max(comp.max_coeff_abs(), 1e-300));
    best = std::min(best, worst);
    int k = 0;
    while (k < mm && ++idx[k] == side) idx[k++] = 0;
    if (k == mm) break;
  }
  return best;
}

}  // namespace

StabilityReport m_stability_probe(const LaurentMap& q, const Eigen::MatrixXd& m, double delta,
                                  int grid, double vmin, double vmax, std::uint64_t seed) {
  q.validate();
  const int mm = q.nvars(), n = int(m.cols());
  if (int(m.rows()) != mm) throw Error("m_stability_probe: M rows must match arity");
  if (delta < 0) throw Error("m_stability_probe: delta must be >= 0");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  if (!(svd.singularValues()(n - 1) > 1e-12 * svd.singularValues()(0)))
    throw Error("m_stability_probe: M is rank deficient");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0, 1);
  std::vector<Eigen::MatrixXd> mats = {m};
  int ndirs = delta > 0 ? 8 : 0;
  for (int t = 0; t < ndirs; ++t) {
    Eigen::MatrixXd pert(mm, n);
    for (int i = 0; i < mm; ++i)
      for (int j = 0; j < n; ++j) pert(i, j) = gauss(rng);
    pert *= delta / std::max(pert.norm(), 1e-300);
    mats.push_back(m + pert);
  }

  StabilityReport rep;
  rep.tested_directions = int(mats.size());
  rep.min_clearance = std::numeric_limits<double>::infinity();
  bool undecided = false;

  std::vector<Eigen::VectorXd> vdirs;
  if (n == 1) {
    Eigen::VectorXd plus(1), minus(1);
    plus << 1;
    minus << -1;
    vdirs = {plus, minus};
  } else {
    int nd = 12;
    for (int k = 0; k < nd; ++k) {
      Eigen::VectorXd d(n);
      if (n == 2) {
        d << std::cos(2 * M_PI * k / nd), std::sin(2 * M_PI * k / nd);
      } else {
        for (int i = 0; i < n; ++i) d[i] = gauss(rng);
        d.normalize();
      }
      vdirs.push_back(d);
    }
  }

  auto membership = [&](const Eigen::VectorXd& x, double& clearance) {
    // Tri::Yes if every component amoeba contains x (necessary condition,
    // exact for one component)
    clearance = std::numeric_limits<double>::infinity();
    Tri overall = Tri::Yes;
    for (const auto& comp : q.comps) {
      AmoebaQuery query;
      query.q = comp;
      query.x = x;
      query.grid = grid;
      auto res = amoeba_contains(query);
      if (res.verdict == Tri::No) {
        clearance = std::min(clearance, res.min_gap);
        return Tri::No;
      }
      if (res.verdict == Tri::BoundaryUndecided) overall = Tri::BoundaryUndecided;
    }
    return overall;
  };

  const int radial = 32;
  for (const auto& mp : mats) {
    for (const auto& d : vdirs) {
      std::vector<int> prev_sig;
      double prev_r = 0;
      for (int k = 0; k < radial; ++k) {
        double r = vmin * std::pow(vmax / vmin, k / double(radial - 1));
        Eigen::VectorXd x = mp * (r * d);
        double clearance;
        Tri verdict = membership(x, clearance);
        if (verdict == Tri::Yes) {
          bool confirmed = q.ncomps() == 1 || fiber_common_residual(q, x, 32) < 1e-6;
          if (confirmed) {
            rep.verdict = StabilityReport::Kind::Unstable;
            rep.violating_m = mp;
            rep.witness_point = x;
            return rep;
          }
          undecided = true;
        } else if (verdict == Tri::No) {
          rep.min_clearance = std::min(rep.min_clearance, clearance);
        } else {
          undecided = true;
        }
        // crossing detection between consecutive radii: a change in the
        // below-radius root count means the path met the amoeba in between
        auto sig = below_signature(q, x, grid);
        if (!prev_sig.empty() && sig != prev_sig) {
          double lo = prev_r, hi = r;
          for (int it = 0; it < 60 && hi - lo > 1e-12 * (1 + hi); ++it) {
            double mid = 0.5 * (lo + hi);
            auto ms = below_signature(q, mp * (mid * d), grid);
            if (ms != prev_sig)
              hi = mid;
            else
              lo = mid;
          }
          Eigen::VectorXd xc = mp * (0.5 * (lo + hi) * d);
          double cl2;
          bool on_amoeba = membership(xc, cl2) == Tri::Yes;  // excludes count jumps at 0/inf
          bool confirmed =
              on_amoeba && (q.ncomps() == 1 || fiber_common_residual(q, xc, 32) < 1e-4);
          if (confirmed) {
            rep.verdict = StabilityReport::Kind::Unstable;
            rep.violating_m = mp;
            rep.witness_point = xc;
            return rep;
          }
          undecided = true;
        }
        prev_sig = sig;
        prev_r = r;
      }
    }
  }
  rep.verdict =
      undecided ? StabilityReport::Kind::Undecided : StabilityReport::Kind::ProbablyStable;
  return rep;
}

}  // namespace fq
