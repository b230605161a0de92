#include "fq/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fq {

namespace {

bool lex_less(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// rank + pivot columns of the row space of vecs, exact Gaussian elimination
int rat_rank(std::vector<RatVec> rows, std::vector<int>* pivot_cols = nullptr) {
  if (rows.empty()) return 0;
  size_t ncols = rows[0].size();
  int rank = 0;
  for (size_t col = 0; col < ncols && rank < int(rows.size()); ++col) {
    int piv = -1;
    for (size_t i = rank; i < rows.size(); ++i)
      if (rows[i][col] != 0) {
        piv = int(i);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (int(i) == rank || rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[rank][col];
      for (size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    if (pivot_cols) pivot_cols->push_back(int(col));
    ++rank;
  }
  return rank;
}

Rat cross2(const RatVec& o, const RatVec& a, const RatVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// monotone chain; returns extreme points in CCW order, collinear points dropped
std::vector<RatVec> hull2d(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<RatVec> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

RatVec cross3(const RatVec& a, const RatVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vec(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

// scale to a primitive integer vector (canonical orientation preserved)
RatVec primitive(const RatVec& v) {
  Int l = 1;
  for (const Rat& x : v) l = lcm(l, Int(x.get_den()));
  std::vector<Int> w;
  Int g = 0;
  for (const Rat& x : v) {
    Rat s = x * Rat(l);
    w.push_back(Int(s.get_num()));
    g = gcd(g, w.back());
  }
  RatVec out;
  for (const Int& x : w) out.push_back(g == 0 ? Rat(x) : Rat(Int(x / g)));
  return out;
}

struct Facet {
  RatVec normal;            // outward, primitive
  Rat offset;               // <normal, x> = offset on the facet
  std::vector<int> verts;   // indices into the polytope's vertex list
};

// all supporting planes spanned by vertex triples; polytope must be full-dim
std::vector<Facet> facets3d(const Polytope& p) {
  const auto& v = p.verts;
  int k = int(v.size());
  std::map<std::pair<std::vector<std::pair<Int, Int>>, std::pair<Int, Int>>, Facet> seen;
  std::vector<Facet> out;
  auto key_of = [](const RatVec& n, const Rat& off) {
    std::vector<std::pair<Int, Int>> nk;
    for (const Rat& x : n) nk.emplace_back(x.get_num(), x.get_den());
    return std::make_pair(nk, std::make_pair(Int(off.get_num()), Int(off.get_den())));
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int l = j + 1; l < k; ++l) {
        RatVec n = cross3(sub(v[j], v[i]), sub(v[l], v[i]));
        if (is_zero_vec(n)) continue;
        Rat off = dot(n, v[i]);
        bool above = false, below = false;
        for (int t = 0; t < k && !(above && below); ++t) {
          Rat s = dot(n, v[t]) - off;
          if (s > 0) above = true;
          if (s < 0) below = true;
        }
        if (above && below) continue;
        RatVec outward = below ? n : RatVec{-n[0], -n[1], -n[2]};
        outward = primitive(outward);
        Rat ooff = dot(outward, v[i]);
        auto key = key_of(outward, ooff);
        if (seen.count(key)) continue;
        Facet f;
        f.normal = outward;
        f.offset = ooff;
        for (int t = 0; t < k; ++t)
          if (dot(outward, v[t]) == ooff) f.verts.push_back(t);
        seen.emplace(key, f);
        out.push_back(f);
      }
  return out;
}

// order coplanar points cyclically by projecting out the normal's dominant axis
std::vector<RatVec> order_facet(const std::vector<RatVec>& pts, const RatVec& normal) {
  int drop = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(normal[i]) > abs(normal[drop])) drop = i;
  std::vector<RatVec> proj;
  std::map<std::pair<std::pair<Int, Int>, std::pair<Int, Int>>, RatVec> back;
  for (const auto& p : pts) {
    RatVec q;
    for (int i = 0; i < 3; ++i)
      if (i != drop) q.push_back(p[i]);
    back[{{Int(q[0].get_num()), Int(q[0].get_den())}, {Int(q[1].get_num()), Int(q[1].get_den())}}] = p;
    proj.push_back(q);
  }
  auto h = hull2d(proj);
  std::vector<RatVec> out;
  for (const auto& q : h)
    out.push_back(back[{{Int(q[0].get_num()), Int(q[0].get_den())}, {Int(q[1].get_num()), Int(q[1].get_den())}}]);
  return out;
}

Rat det3(const RatVec& a, const RatVec& b, const RatVec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

int affine_dim(const std::vector<RatVec>& pts, std::vector<int>* pivot_cols = nullptr) {
  if (pts.size() <= 1) return 0;
  std::vector<RatVec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rat_rank(std::move(diffs), pivot_cols);
}

}  // namespace

bool point_in_hull(const RatVec& p, const std::vector<RatVec>& points) {
  if (points.empty()) return false;
  const int d = int(p.size());
  const int rows = d + 1;
  const int n = int(points.size());
  // phase-1 simplex: find lambda >= 0 with [points;1] lambda = [p;1]
  std::vector<std::vector<Rat>> t(rows, std::vector<Rat>(n + rows + 1, Rat(0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = points[j][i];
    t[i][n + rows] = p[i];
  }
  for (int j = 0; j < n; ++j) t[d][j] = 1;
  t[d][n + rows] = 1;
  for (int i = 0; i < rows; ++i) {
    if (t[i][n + rows] < 0)
      for (auto& x : t[i]) x = -x;
    t[i][n + i] = 1;
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = n + i;
  std::vector<Rat> cost(n + rows + 1, Rat(0));  // phase-1 reduced costs
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j <= n + rows; ++j) cost[j] += t[i][j];

  while (true) {
    int enter = -1;
    for (int j = 0; j < n; ++j)  // artificial columns never re-enter
      if (cost[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][n + rows] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen in phase 1
    Rat piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (int j = 0; j <= n + rows; ++j) t[i][j] -= f * t[leave][j];
    }
    Rat f = cost[enter];
    for (int j = 0; j <= n + rows; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  return cost[n + rows] == 0;
}

Polytope convex_hull(int dim, std::vector<RatVec> points) {
  if (points.empty()) throw Error("convex_hull: empty input");
  if (dim < 1 || dim > 3) throw Error("convex_hull: ambient dimension must be 1..3");
  for (const auto& p : points)
    if (int(p.size()) != dim) throw Error("convex_hull: point dimension mismatch");
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope out;
  out.dim = dim;
  int adim = affine_dim(points);
  if (adim == 0) {
    out.verts = {points[0]};
    return out;
  }
  if (adim == 1) {
    // extremes along the line
    RatVec d = sub(points.back(), points.front());
    RatVec *lo = &points.front(), *hi = &points.front();
    Rat tlo = 0, thi = 0;
    for (auto& p : points) {
      Rat t = dot(d, sub(p, points.front()));
      if (t < tlo) {
        tlo = t;
        lo = &p;
      }
      if (t > thi) {
        thi = t;
        hi = &p;
      }
    }
    out.verts = {*lo, *hi};
    std::sort(out.verts.begin(), out.verts.end(), lex_less);
    return out;
  }
  if (adim == 2) {
    if (dim == 2) {
      out.verts = hull2d(points);
      return out;
    }
    // planar set in R^3: project to two independent coordinates
    std::vector<int> piv;
    affine_dim(points, &piv);
    std::vector<RatVec> proj;
    std::map<std::vector<std::pair<Int, Int>>, RatVec> back;
    for (const auto& p : points) {
      RatVec q = {p[piv[0]], p[piv[1]]};
      std::vector<std::pair<Int, Int>> key;
      for (const Rat& x : q) key.emplace_back(x.get_num(), x.get_den());
      back[key] = p;
      proj.push_back(q);
    }
    for (const auto& q : hull2d(proj)) {
      std::vector<std::pair<Int, Int>> key;
      for (const Rat& x : q) key.emplace_back(x.get_num(), x.get_den());
      out.verts.push_back(back[key]);
    }
    std::sort(out.verts.begin(), out.verts.end(), lex_less);
    return out;
  }
  // full-dimensional in R^3: exact LP filter
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<RatVec> others;
    for (size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(points[j]);
    if (!point_in_hull(points[i], others)) out.verts.push_back(points[i]);
  }
  std::sort(out.verts.begin(), out.verts.end(), lex_less);
  return out;
}

Polytope convex_hull_snapped(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw Error("convex_hull: empty input");
  const double snap = double(1LL << 30);
  std::vector<RatVec> rpts;
  for (const auto& p : points) {
    RatVec r;
    for (int i = 0; i < p.size(); ++i) {
      double q = std::round(p[i] * snap);
      r.push_back(Rat(q) / Rat(snap));
    }
    rpts.push_back(r);
  }
  return convex_hull(int(points[0].size()), rpts);
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
  if (a.dim != b.dim) throw Error("minkowski_sum: dimension mismatch");
  std::vector<RatVec> sums;
  for (const auto& x : a.verts)
    for (const auto& y : b.verts) sums.push_back(add(x, y));
  return convex_hull(a.dim, sums);
}

Rat volume(const Polytope& p) {
  int adim = affine_dim(p.verts);
  if (adim < p.dim) return 0;
  if (p.dim == 1) {
    return p.verts.back()[0] - p.verts.front()[0];
  }
  if (p.dim == 2) {
    auto h = hull2d(p.verts);
    Rat s = 0;
    for (size_t i = 0; i < h.size(); ++i) {
      const auto& u = h[i];
      const auto& w = h[(i + 1) % h.size()];
      s += u[0] * w[1] - u[1] * w[0];
    }
    return abs(s) / 2;
  }
  // dim 3: cone decomposition from verts[0] over ordered facets
  auto fs = facets3d(p);
  const RatVec& apex = p.verts[0];
  Rat vol = 0;
  for (const auto& f : fs) {
    std::vector<RatVec> cyc;
    for (int idx : f.verts) cyc.push_back(p.verts[idx]);
    cyc = order_facet(cyc, f.normal);
    for (size_t i = 1; i + 1 < cyc.size(); ++i)
      vol += abs(det3(sub(cyc[0], apex), sub(cyc[i], apex), sub(cyc[i + 1], apex)));
  }
  return vol / 6;
}

Rat mixed_volume(const std::vector<Polytope>& tuple) {
  const int n = int(tuple.size());
  if (n < 1 || n > 3) throw Error("mixed_volume: need 1..3 polytopes");
  for (const auto& p : tuple)
    if (p.dim != n) throw Error("mixed_volume: need n polytopes in R^n");
  Rat total = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::optional<Polytope> s;
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        ++count;
        s = s ? minkowski_sum(*s, tuple[i]) : tuple[i];
      }
    Rat v = volume(*s);
    if ((n - count) % 2 == 1) v = -v;
    total += v;
  }
  return total;
}

Face face_in_direction(const Polytope& p, const RatVec& u) {
  if (int(u.size()) != p.dim) throw Error("face_in_direction: dimension mismatch");
  if (is_zero_vec(u)) throw Error("face_in_direction: u must be nonzero");
  Face f;
  f.direction = u;
  Rat best;
  for (size_t i = 0; i < p.verts.size(); ++i) {
    Rat s = dot(u, p.verts[i]);
    if (i == 0 || s < best) {
      best = s;
      f.vertex_indices = {int(i)};
    } else if (s == best) {
      f.vertex_indices.push_back(int(i));
    }
  }
  return f;
}

namespace {

RatVec negate(const RatVec& v) {
  RatVec r;
  for (const Rat& x : v) r.push_back(-x);
  return r;
}

std::vector<RatVec> fan_cell_reps(const Polytope& s) {
  const int dim = s.dim;
  std::vector<RatVec> reps;
  auto axes = [&]() {
    for (int i = 0; i < dim; ++i) {
      RatVec e(dim, Rat(0));
      e[i] = 1;
      reps.push_back(e);
      reps.push_back(negate(e));
    }
  };
  int adim = affine_dim(s.verts);
  if (adim == 0) {
    axes();
    return reps;
  }
  if (dim == 1) {
    reps.push_back({Rat(1)});
    reps.push_back({Rat(-1)});
    return reps;
  }
  if (adim == 1) {
    RatVec d = primitive(sub(s.verts.back(), s.verts.front()));
    reps.push_back(d);
    reps.push_back(negate(d));
    if (dim == 2) {
      RatVec r = {-d[1], d[0]};
      reps.push_back(r);
      reps.push_back(negate(r));
    } else {
      // any two independent directions orthogonal to d and their negatives
      RatVec w1 = is_zero_vec(RatVec{d[1], -d[0], Rat(0)}) ? RatVec{Rat(0), d[2], -d[1]}
                                                           : RatVec{d[1], -d[0], Rat(0)};
      RatVec w2 = cross3(d, w1);
      for (const auto& w : {w1, w2, negate(w1), negate(w2), add(w1, w2), negate(add(w1, w2))})
        reps.push_back(primitive(w));
    }
    return reps;
  }
  if (adim == 2 && dim == 2) {
    auto h = hull2d(s.verts);
    size_t k = h.size();
    std::vector<RatVec> outer;
    for (size_t i = 0; i < k; ++i) {
      RatVec e = sub(h[(i + 1) % k], h[i]);
      outer.push_back(primitive(RatVec{e[1], -e[0]}));  // CCW -> outward
    }
    for (size_t i = 0; i < k; ++i) {
      reps.push_back(negate(outer[i]));                                    // edge cell
      reps.push_back(primitive(negate(add(outer[(i + k - 1) % k], outer[i]))));  // vertex cell
    }
    return reps;
  }
  if (adim == 2 && dim == 3) {
    // planar polygon in R^3: embed the 2D fan in the plane, then add +-N
    std::vector<int> piv;
    affine_dim(s.verts, &piv);
    RatVec n3 = cross3(sub(s.verts[1], s.verts[0]),
                       sub(s.verts[s.verts.size() - 1], s.verts[0]));
    for (size_t i = 2; i < s.verts.size() && is_zero_vec(n3); ++i)
      n3 = cross3(sub(s.verts[1], s.verts[0]), sub(s.verts[i], s.verts[0]));
    n3 = primitive(n3);
    // project polygon to pivot coordinates, compute 2D reps, lift by zero-padding
    std::vector<RatVec> proj;
    for (const auto& p : s.verts) proj.push_back({p[piv[0]], p[piv[1]]});
    Polytope flat;
    flat.dim = 2;
    flat.verts = hull2d(proj);
    for (const auto& r2 : fan_cell_reps(flat)) {
      // lift u2 on the pivot coords; project out the normal component so the
      // lifted direction lies in the plane's cotangent: simplest exact lift is
      // u = u2 on pivot coords, 0 elsewhere, then subtract its n3 component
      RatVec u(3, Rat(0));
      u[piv[0]] = r2[0];
      u[piv[1]] = r2[1];
      Rat c = dot(u, n3) / dot(n3, n3);
      for (int i = 0; i < 3; ++i) u[i] -= c * n3[i];
      if (!is_zero_vec(u)) reps.push_back(primitive(u));
    }
    reps.push_back(n3);
    reps.push_back(negate(n3));
    return reps;
  }
  // full-dimensional 3D
  auto fs = facets3d(s);
  for (const auto& f : fs) reps.push_back(negate(f.normal));
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j) {
      std::vector<int> shared;
      std::set_intersection(fs[i].verts.begin(), fs[i].verts.end(), fs[j].verts.begin(),
                            fs[j].verts.end(), std::back_inserter(shared));
      if (shared.size() >= 2)
        reps.push_back(primitive(negate(add(fs[i].normal, fs[j].normal))));
    }
  for (size_t v = 0; v < s.verts.size(); ++v) {
    RatVec acc(3, Rat(0));
    int cnt = 0;
    for (const auto& f : fs)
      if (std::binary_search(f.verts.begin(), f.verts.end(), int(v))) {
        acc = add(acc, f.normal);
        ++cnt;
      }
    if (cnt >= 3) reps.push_back(primitive(negate(acc)));
  }
  return reps;
}

}  // namespace

std::vector<FanRep> normal_fan_representatives(const std::vector<Polytope>& tuple) {
  if (tuple.empty()) throw Error("normal_fan_representatives: empty tuple");
  const int dim = tuple[0].dim;
  for (const auto& p : tuple)
    if (p.dim != dim) throw Error("normal_fan_representatives: dimension mismatch");
  Polytope s = tuple[0];
  for (size_t i = 1; i < tuple.size(); ++i) s = minkowski_sum(s, tuple[i]);
  auto raw = fan_cell_reps(s);
  // dedupe directions
  std::sort(raw.begin(), raw.end(), lex_less);
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  std::vector<FanRep> out;
  for (const auto& u : raw) {
    FanRep rep;
    rep.u = u;
    for (const auto& p : tuple) rep.faces.push_back(face_in_direction(p, u));
    out.push_back(std::move(rep));
  }
  return out;
}

UnfoldedReport is_unfolded(const std::vector<Polytope>& tuple) {
  auto reps = normal_fan_representatives(tuple);
  for (const auto& rep : reps) {
    bool ok = false;
    for (const auto& f : rep.faces)
      if (f.is_vertex()) {
        ok = true;
        break;
      }
    if (!ok) return UnfoldedReport{false, rep.u};
  }
  return UnfoldedReport{true, std::nullopt};
}

}  // namespace fq
