#include "fq/roots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fq/poly1.hpp"
#include "fq/polytope.hpp"

namespace fq {

namespace {

constexpr int kMaxEdgeDepth = 46;

// argument increment along one straight edge, adaptively refined so that each
// step turns by less than pi/2; nullopt when refinement cannot resolve the
// argument (a root on or essentially on the edge)
std::optional<double> edge_arg_increment(const Holo1& p, cplx z0, cplx z1) {
  struct Seg {
    cplx a, b;
    cplx fa, fb;
    int depth;
  };
  auto safe = [](cplx f) {
    return std::isfinite(f.real()) && std::isfinite(f.imag()) && std::abs(f) > 1e-300;
  };
  cplx f0 = p(z0), f1 = p(z1);
  if (!safe(f0) || !safe(f1)) return std::nullopt;
  std::vector<Seg> stack{{z0, z1, f0, f1, 0}};
  double total = 0;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    double da = std::arg(s.fb / s.fa);
    if (std::abs(da) <= M_PI / 2) {
      // one refinement guards against an even number of half-turns hiding
      if (s.depth < 8) {
        cplx mid = 0.5 * (s.a + s.b);
        cplx fm = p(mid);
        if (!safe(fm)) return std::nullopt;
        double d1 = std::arg(fm / s.fa), d2 = std::arg(s.fb / fm);
        if (std::abs(d1) > M_PI / 2 || std::abs(d2) > M_PI / 2) {
          stack.push_back({s.a, mid, s.fa, fm, s.depth + 1});
          stack.push_back({mid, s.b, fm, s.fb, s.depth + 1});
          continue;
        }
        total += d1 + d2;
        continue;
      }
      total += da;
      continue;
    }
    if (s.depth >= kMaxEdgeDepth) return std::nullopt;
    cplx mid = 0.5 * (s.a + s.b);
    cplx fm = p(mid);
    if (!safe(fm)) return std::nullopt;
    stack.push_back({s.a, mid, s.fa, fm, s.depth + 1});
    stack.push_back({mid, s.b, fm, s.fb, s.depth + 1});
  }
  return total;
}

std::optional<int> winding_attempt(const Holo1& p, cplx lo, cplx hi) {
  cplx a = lo, b = cplx(hi.real(), lo.imag()), c = hi, d = cplx(lo.real(), hi.imag());
  double total = 0;
  for (auto [z0, z1] : {std::pair{a, b}, {b, c}, {c, d}, {d, a}}) {
    auto inc = edge_arg_increment(p, z0, z1);
    if (!inc) return std::nullopt;
    total += *inc;
  }
  double w = total / (2 * M_PI);
  long n = std::lround(w);
  if (std::abs(w - double(n)) > 0.25) return std::nullopt;
  return int(n);
}

}  // namespace

int winding_number(const Holo1& p, cplx lo, cplx hi) {
  if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
    throw Error("winding_number: degenerate rectangle");
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> u(0.011, 0.043);
  cplx l = lo, h = hi;
  for (int attempt = 0; attempt < 5; ++attempt) {
    auto w = winding_attempt(p, l, h);
    if (w) return *w;
    cplx center = 0.5 * (l + h);
    cplx half = 0.5 * (h - l);
    double f = 1.0 + u(rng);
    l = center - f * half;
    h = center + f * half;
  }
  throw Error("winding_number: root on contour");
}

namespace {

cplx numeric_derivative(const Holo1& p, cplx z) {
  double h = 1e-7 * (1.0 + std::abs(z));
  return (p(z + cplx(0, h)) - p(z - cplx(0, h))) / cplx(0, 2 * h);
}

cplx newton_polish(const Holo1& p, cplx z0, double trust_radius) {
  cplx z = z0;
  for (int it = 0; it < 60; ++it) {
    cplx f = p(z);
    if (std::abs(f) < 1e-300) break;
    cplx df = numeric_derivative(p, z);
    if (std::abs(df) < 1e-300) break;
    cplx step = f / df;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    if (std::abs(z - step - z0) > trust_radius) break;
    z -= step;
    if (std::abs(step) < 1e-15 * (1 + std::abs(z))) break;
  }
  return z;
}

void subdivide_roots(const Holo1& p, double x0, double x1, double band, int count, double tol,
                     std::vector<Root1d>& out, std::mt19937_64& rng) {
  if (count <= 0) return;
  if (x1 - x0 < tol) {
    cplx center(0.5 * (x0 + x1), 0);
    cplx z = newton_polish(p, center, 4 * (x1 - x0) + 4 * tol);
    Root1d r;
    r.z = z;
    r.mult = count;
    r.im_abs = std::abs(z.imag());
    out.push_back(r);
    return;
  }
  std::uniform_real_distribution<double> jit(-0.05, 0.05);
  double xm = 0.5 * (x0 + x1);
  std::optional<int> left;
  for (int attempt = 0; attempt < 12 && !left; ++attempt) {
    left = winding_attempt(p, cplx(x0, -band), cplx(xm, band));
    if (!left) xm = 0.5 * (x0 + x1) + jit(rng) * (x1 - x0);
  }
  if (!left) throw Error("real_roots_1d: root on contour");
  subdivide_roots(p, x0, xm, band, *left, tol, out, rng);
  subdivide_roots(p, xm, x1, band, count - *left, tol, out, rng);
}

}  // namespace

std::vector<Root1d> real_roots_1d(const Holo1& p, double a, double b, double band, double tol) {
  if (!(b > a) || !(band > 0) || !(tol > 0)) throw Error("real_roots_1d: bad window");
  std::mt19937_64 rng(0xD1CEULL);
  std::vector<Root1d> out;
  // chunked top-level sweep keeps each contour's total winding small
  double chunk = std::min(1.0, b - a);
  std::vector<double> cuts;
  for (double x = a; x < b; x += chunk) cuts.push_back(x);
  cuts.push_back(b);
  // nudge outer and interior cuts off roots when needed
  std::uniform_real_distribution<double> jit(0.1, 0.9);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double x0 = cuts[i], x1 = cuts[i + 1];
    std::optional<int> count;
    for (int attempt = 0; attempt < 12 && !count; ++attempt) {
      count = winding_attempt(p, cplx(x0, -band), cplx(x1, band));
      if (!count) {
        double bump = jit(rng) * tol * 100;
        if (i == 0) x0 = cuts[i] - bump;
        x1 = cuts[i + 1] + bump;
        if (i + 2 < cuts.size()) cuts[i + 1] = x1;  // keep the partition exact
      }
    }
    if (!count) throw Error("real_roots_1d: root on contour");
    subdivide_roots(p, x0, x1, band, *count, tol, out, rng);
  }
  std::sort(out.begin(), out.end(),
            [](const Root1d& l, const Root1d& r) { return l.z.real() < r.z.real(); });
  return out;
}

double trig_imag_band(const std::vector<std::pair<double, cplx>>& freq_coeffs) {
  if (freq_coeffs.size() < 2) return 5.0;
  auto fc = freq_coeffs;
  std::sort(fc.begin(), fc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0;
  for (const auto& [w, c] : fc) total += std::abs(c);
  auto side_band = [&](bool top) {
    const auto& extreme = top ? fc.back() : fc.front();
    double gap = top ? (fc.back().first - fc[fc.size() - 2].first)
                     : (fc[1].first - fc.front().first);
    if (gap <= 0) return 5.0;
    double rest = total - std::abs(extreme.second);
    if (rest <= 0) return 0.1;
    return std::log(rest / std::abs(extreme.second)) / (2 * M_PI * gap);
  };
  double band = std::max({side_band(true), side_band(false), 0.05});
  return 1.5 * band + 0.1;
}

Holo1 trig_evaluator_1d(const TrigMapRep& p) {
  if (p.dim() != 1 || p.q.ncomps() != 1)
    throw Error("trig_evaluator_1d: needs a one-dimensional map");
  std::vector<std::pair<double, cplx>> fc;
  for (const auto& s : spectrum_trig(p)) fc.emplace_back(s.frequency[0], s.coeff);
  return [fc](cplx z) {
    cplx acc = 0;
    for (const auto& [w, c] : fc) acc += c * std::exp(cplx(0, 2 * M_PI * w) * z);
    return acc;
  };
}

double trig_imag_band(const TrigMapRep& p) {
  std::vector<std::pair<double, cplx>> fc;
  for (const auto& s : spectrum_trig(p)) fc.emplace_back(s.frequency[0], s.coeff);
  return trig_imag_band(fc);
}

TorusRoots torus_roots_univariate(const LaurentPoly& q) {
  if (q.nvars != 1) throw Error("torus_roots_univariate: univariate only");
  if (q.terms.size() < 2) throw Error("torus_roots_univariate: monomial has no torus roots");
  long long lo = q.terms.begin()->first[0];
  long long hi = q.terms.rbegin()->first[0];
  Poly1 p(size_t(hi - lo + 1), cplx(0));
  for (const auto& [e, c] : q.terms) p[size_t(e[0] - lo)] = c;
  auto roots = poly_roots(p);
  // cluster
  std::vector<std::pair<cplx, int>> clusters;
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(roots.size(), false);
  TorusRoots out;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int cnt = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - sum / double(cnt)) < 1e-7) {
        sum += roots[j];
        ++cnt;
        used[j] = true;
      }
    }
    cplx center = sum / double(cnt);
    if (std::abs(std::abs(center) - 1.0) <= 1e-8)
      out.on_torus.emplace_back(center / std::abs(center), cnt);
    else
      for (int k = 0; k < cnt; ++k) out.off_torus.push_back(center);
  }
  return out;
}

namespace {

struct ShiftedPoly2 {
  // ordinary polynomial grid: coeff[k2][k1]
  std::vector<std::vector<cplx>> coeff;
  int d1 = 0, d2 = 0;

  Poly1 at_z1(cplx z1) const {
    Poly1 out(size_t(d2 + 1), cplx(0));
    for (int k2 = 0; k2 <= d2; ++k2) {
      cplx acc = 0, pw = 1;
      for (int k1 = 0; k1 <= d1; ++k1) {
        acc += coeff[k2][k1] * pw;
        pw *= z1;
      }
      out[size_t(k2)] = acc;
    }
    return out;
  }
};

ShiftedPoly2 shift_to_poly(const LaurentPoly& q) {
  long long m1 = 0, m2 = 0, h1 = 0, h2 = 0;
  bool first = true;
  for (const auto& [e, c] : q.terms) {
    if (first) {
      m1 = h1 = e[0];
      m2 = h2 = e[1];
      first = false;
    }
    m1 = std::min(m1, e[0]);
    h1 = std::max(h1, e[0]);
    m2 = std::min(m2, e[1]);
    h2 = std::max(h2, e[1]);
  }
  ShiftedPoly2 out;
  out.d1 = int(h1 - m1);
  out.d2 = int(h2 - m2);
  out.coeff.assign(size_t(out.d2 + 1), std::vector<cplx>(size_t(out.d1 + 1), cplx(0)));
  for (const auto& [e, c] : q.terms) out.coeff[size_t(e[1] - m2)][size_t(e[0] - m1)] = c;
  return out;
}

// evaluation together with the absolute-value scale of the term sum
std::pair<cplx, double> eval_scaled(const LaurentPoly& q, const Eigen::VectorXcd& z) {
  cplx acc = 0;
  double scale = 0;
  for (const auto& [e, c] : q.terms) {
    cplx t = c;
    for (int j = 0; j < q.nvars; ++j) t *= std::pow(z[j], double(e[j]));
    acc += t;
    scale += std::abs(t);
  }
  return {acc, scale};
}

cplx eval_partial(const LaurentPoly& q, const Eigen::VectorXcd& z, int var) {
  cplx acc = 0;
  for (const auto& [e, c] : q.terms) {
    if (e[var] == 0) continue;
    cplx t = c * double(e[var]);
    for (int j = 0; j < q.nvars; ++j) {
      double ex = double(e[j]) - (j == var ? 1.0 : 0.0);
      t *= std::pow(z[j], ex);
    }
    acc += t;
  }
  return acc;
}

bool newton_polish_2d(const LaurentMap& q, Eigen::Vector2cd& z) {
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXcd zz(2);
    zz << z[0], z[1];
    Eigen::Vector2cd f;
    double s0, s1;
    std::tie(f[0], s0) = eval_scaled(q.comps[0], zz);
    std::tie(f[1], s1) = eval_scaled(q.comps[1], zz);
    double res = std::max(std::abs(f[0]) / std::max(s0, 1e-300),
                          std::abs(f[1]) / std::max(s1, 1e-300));
    if (res < 1e-12) return true;
    Eigen::Matrix2cd j;
    j(0, 0) = eval_partial(q.comps[0], zz, 0);
    j(0, 1) = eval_partial(q.comps[0], zz, 1);
    j(1, 0) = eval_partial(q.comps[1], zz, 0);
    j(1, 1) = eval_partial(q.comps[1], zz, 1);
    cplx det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
    if (std::abs(det) < 1e-280) return false;
    Eigen::Vector2cd step;
    step[0] = (j(1, 1) * f[0] - j(0, 1) * f[1]) / det;
    step[1] = (-j(1, 0) * f[0] + j(0, 0) * f[1]) / det;
    z -= step;
    if (!std::isfinite(z[0].real()) || !std::isfinite(z[1].real())) return false;
    if (std::abs(step[0]) + std::abs(step[1]) < 1e-15 * (1 + std::abs(z[0]) + std::abs(z[1]))) {
      Eigen::VectorXcd zf(2);
      zf << z[0], z[1];
      auto [v0, sc0] = eval_scaled(q.comps[0], zf);
      auto [v1, sc1] = eval_scaled(q.comps[1], zf);
      return std::max(std::abs(v0) / std::max(sc0, 1e-300),
                      std::abs(v1) / std::max(sc1, 1e-300)) < 1e-9;
    }
  }
  return false;
}

}  // namespace

std::vector<std::pair<Eigen::Vector2cd, int>> laurent_roots_2d(const LaurentMap& q) {
  q.validate();
  if (q.ncomps() != 2 || q.nvars() != 2) throw Error("laurent_roots_2d: needs a 2x2 system");
  for (const auto& c : q.comps)
    if (c.is_zero()) throw Error("laurent_roots_2d: zero component");
  auto p1 = shift_to_poly(q.comps[0]);
  auto p2 = shift_to_poly(q.comps[1]);

  std::vector<Eigen::Vector2cd> candidates;
  auto add_candidates_at_z1 = [&](cplx z1) {
    if (std::abs(z1) < 1e-10) return;
    for (cplx z2 : poly_roots(p1.at_z1(z1))) {
      if (std::abs(z2) < 1e-10) continue;
      candidates.push_back(Eigen::Vector2cd(z1, z2));
    }
  };

  if (p1.d2 == 0 || p2.d2 == 0) {
    // one component is z2-free: its z1-roots fix the first coordinate
    const auto& free2 = p1.d2 == 0 ? p1 : p2;
    const auto& other = p1.d2 == 0 ? p2 : p1;
    Poly1 uni(size_t(free2.d1 + 1), cplx(0));
    for (int k1 = 0; k1 <= free2.d1; ++k1) uni[size_t(k1)] = free2.coeff[0][size_t(k1)];
    for (cplx z1 : poly_roots(uni)) {
      if (std::abs(z1) < 1e-10) continue;
      for (cplx z2 : poly_roots(other.at_z1(z1)))
        if (std::abs(z2) >= 1e-10) candidates.push_back(Eigen::Vector2cd(z1, z2));
    }
  } else {
    // hidden-variable resultant in z1, evaluated on a circle and interpolated
    int bound = p1.d2 * p2.d1 + p2.d2 * p1.d1 + 1;
    int k = std::max(bound + 1, 8);
    double rho = 1.37;
    std::vector<cplx> samples(k);
    for (int j = 0; j < k; ++j) {
      cplx z1 = std::polar(rho, 2 * M_PI * j / double(k));
      samples[j] = sylvester_resultant(p1.at_z1(z1), p2.at_z1(z1));
    }
    Poly1 res(k);
    for (int kk = 0; kk < k; ++kk) {
      cplx acc = 0;
      for (int j = 0; j < k; ++j)
        acc += samples[j] * std::polar(1.0, -2 * M_PI * j * kk / double(k));
      res[size_t(kk)] = acc / (double(k) * std::pow(rho, double(kk)));
    }
    for (cplx z1 : poly_roots(poly_trim(res, 1e-11))) add_candidates_at_z1(z1);
  }

  std::vector<std::pair<Eigen::Vector2cd, int>> out;
  // repeated discoveries of the same simple root merge without bumping the
  // count; intended for generic systems where every root is simple
  for (auto z : candidates) {
    if (!newton_polish_2d(q, z)) continue;
    if (std::abs(z[0]) < 1e-10 || std::abs(z[1]) < 1e-10) continue;
    bool merged = false;
    for (auto& [root, mult] : out)
      if ((root - z).norm() < 1e-7 * (1 + root.norm())) {
        merged = true;
        break;
      }
    if (!merged) out.emplace_back(z, 1);
  }
  return out;
}

ContinuationResult continuation_track(const SystemValue& value, const SystemJacobian& jac_x,
                                      const SystemValue& dpdt, const Eigen::VectorXd& x0,
                                      const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw Error("continuation_track: empty grid");
  const int n = int(x0.size());
  Eigen::VectorXcd x = x0.cast<cplx>();
  double t = t_grid.front();
  if (value(x, t).norm() > 1e-10)
    throw Error("continuation_track: x0 is not a root at the initial parameter");

  ContinuationResult res;
  res.path.emplace_back(t, x0);
  if (t_grid.size() == 1) {
    res.x1 = x0;
    return res;
  }

  auto newton_correct = [&](Eigen::VectorXcd& z, double tt) {
    for (int it = 0; it < 50; ++it) {
      Eigen::VectorXcd f = value(z, tt);
      if (f.norm() < 1e-12) return true;
      Eigen::MatrixXcd j = jac_x(z, tt);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
      double smin = svd.singularValues()(n - 1), smax = svd.singularValues()(0);
      if (!(smin > smax / 1e12)) return false;
      z -= svd.solve(f);
    }
    return value(z, tt).norm() < 1e-12;
  };

  for (size_t seg = 0; seg + 1 < t_grid.size(); ++seg) {
    double t_target = t_grid[seg + 1];
    double t_cur = t_grid[seg];
    // adaptive sub-stepping between grid nodes
    int depth = 0;
    std::vector<double> agenda{t_target};
    while (!agenda.empty()) {
      double t_next = agenda.back();
      Eigen::MatrixXcd j = jac_x(x, t_cur);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
      double smin = svd.singularValues()(n - 1), smax = svd.singularValues()(0);
      bool ok = smin > smax / 1e12;
      Eigen::VectorXcd xpred = x;
      if (ok) {
        Eigen::VectorXcd dx = svd.solve(dpdt(x, t_cur));
        xpred = x - dx * (t_next - t_cur);
        ok = newton_correct(xpred, t_next);
      }
      if (!ok) {
        if (++depth > 48) throw Error("continuation_track: persistent step failure");
        agenda.push_back(0.5 * (t_cur + t_next));
        continue;
      }
      for (int i = 0; i < n; ++i)
        if (std::abs(xpred[i].imag()) > 1e-9)
          throw Error("continuation_track: path left the real axis");
      x = xpred;
      t_cur = t_next;
      agenda.pop_back();
      Eigen::VectorXd xr(n);
      for (int i = 0; i < n; ++i) xr[i] = x[i].real();
      res.path.emplace_back(t_cur, xr);
    }
  }
  Eigen::VectorXd x1(n);
  for (int i = 0; i < n; ++i) x1[i] = x[i].real();
  res.x1 = x1;
  return res;
}

DensityEstimate density_estimate(const Multiset& roots, double r, double expected) {
  if (!(r > 0)) throw Error("density_estimate: radius must be positive");
  DensityEstimate d;
  d.window_radius = r;
  d.expected = expected;
  double count = 0;
  for (const auto& p : roots.points)
    if (p.x.norm() < r) count += p.mult;
  d.count = count;
  d.density = count / (unit_ball_volume(roots.dim) * std::pow(r, roots.dim));
  return d;
}

double expected_density(const TrigMapRep& p) {
  auto tuple = trig_newton_tuple(p);
  return to_double(mixed_volume(tuple));
}

RealRootedReport verify_real_rooted(const TrigMapRep& p, double window_radius, double tol) {
  if (p.dim() != 1) throw Error("verify_real_rooted: contour route needs n = 1");
  RealRootedReport rep;
  rep.expected = expected_density(p);
  auto f = trig_evaluator_1d(p);
  double band = trig_imag_band(p);
  auto roots = real_roots_1d(f, -window_radius, window_radius, band, 1e-10);
  long long count = 0;
  double max_im = 0;
  for (const auto& r : roots) {
    count += r.mult;
    max_im = std::max(max_im, r.im_abs);
  }
  rep.count = count;
  rep.max_im = max_im;
  rep.real_density = double(count) / (2 * window_radius);
  double rel = std::abs(rep.real_density - rep.expected) / std::max(rep.expected, 1e-300);
  rep.pass = rel < tol && max_im < 1e-8;
  return rep;
}

}  // namespace fq
