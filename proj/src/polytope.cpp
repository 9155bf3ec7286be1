#include "latticewave/polytope.hpp"

#include <algorithm>
#include <mutex>

#include "latticewave/errors.hpp"

namespace lw {

namespace {
std::mutex g_cache_mutex;  // caches are tiny; one lock is plenty at desk scale
}

Polytope::Polytope(int n, std::vector<Halfspace> halfspaces)
    : n_(n), hs_(std::move(halfspaces)), cache_(std::make_shared<Cache>()) {
  for (const auto& h : hs_)
    if (static_cast<int>(h.a.size()) != n_)
      throw DimensionMismatch("halfspace dimension");
}

Polytope Polytope::box(const Vec& lo, const Vec& hi) {
  int n = static_cast<int>(lo.size());
  std::vector<Halfspace> hs;
  for (int i = 0; i < n; ++i) {
    Vec a(n, Rat(0));
    a[i] = 1;
    hs.push_back({a, hi[i]});
    Vec an(n, Rat(0));
    an[i] = -1;
    hs.push_back({an, -lo[i]});
  }
  return Polytope(n, std::move(hs));
}

Region Polytope::member(const Vec& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionMismatch("point dimension");
  bool boundary = false;
  for (const auto& h : hs_) {
    Rat s = h.b - dot(h.a, x);
    if (s < 0) return Region::Outside;
    if (s == 0) boundary = true;
  }
  return boundary ? Region::Boundary : Region::Inside;
}

bool Polytope::has_interior() const {
  {
    std::lock_guard lk(g_cache_mutex);
    if (cache_->interior) return *cache_->interior;
  }
  bool val = chebyshev().second > 0;
  std::lock_guard lk(g_cache_mutex);
  cache_->interior = val;
  return val;
}

const std::vector<Vec>& Polytope::vertices() const {
  {
    std::lock_guard lk(g_cache_mutex);
    if (cache_->verts) return *cache_->verts;
  }
  if (n_ > 3) throw DimensionCap("vertex enumeration limited to n <= 3");
  const int m = static_cast<int>(hs_.size());
  std::vector<Vec> verts;
  std::vector<int> idx(n_);
  auto try_combo = [&](const std::vector<int>& c) {
    Mat sys(n_, n_);
    Vec rhs(n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) sys.at(i, j) = hs_[c[i]].a[j];
      rhs[i] = hs_[c[i]].b;
    }
    if (sys.det() == 0) return;
    Vec v = sys.inverse() * rhs;
    for (const auto& h : hs_)
      if (dot(h.a, v) > h.b) return;
    if (std::find(verts.begin(), verts.end(), v) == verts.end())
      verts.push_back(v);
  };
  std::vector<int> c(n_);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == n_) {
      try_combo(c);
      return;
    }
    for (int i = start; i < m; ++i) {
      c[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  std::lock_guard lk(g_cache_mutex);
  if (!cache_->verts) cache_->verts = std::move(verts);
  return *cache_->verts;
}

namespace {

// Counterclockwise angular order around the origin, decided exactly.
bool angular_less(const Vec& p, const Vec& q) {
  auto half = [](const Vec& d) {
    return (d[1] > 0 || (d[1] == 0 && d[0] > 0)) ? 0 : 1;
  };
  int hp = half(p), hq = half(q);
  if (hp != hq) return hp < hq;
  Rat cross = p[0] * q[1] - p[1] * q[0];
  return cross > 0;
}

Rat polygon_area(std::vector<Vec> pts) {
  if (pts.size() < 3) return Rat(0);
  Vec c(2, Rat(0));
  for (const auto& p : pts) {
    c[0] += p[0];
    c[1] += p[1];
  }
  Rat inv = Rat(1, static_cast<long>(pts.size()));
  c[0] *= inv;
  c[1] *= inv;
  std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
    return angular_less(vec_sub(a, c), vec_sub(b, c));
  });
  Rat area = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec& a = pts[i];
    const Vec& b = pts[(i + 1) % pts.size()];
    area += a[0] * b[1] - b[0] * a[1];
  }
  return abs(area) / 2;
}

int affine_rank(const std::vector<Vec>& verts, int n) {
  if (verts.empty()) return -1;
  std::vector<Vec> rows;
  for (std::size_t i = 1; i < verts.size(); ++i)
    rows.push_back(vec_sub(verts[i], verts[0]));
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[rank][col];
      for (int j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Rat Polytope::volume() const {
  {
    std::lock_guard lk(g_cache_mutex);
    if (cache_->vol) return *cache_->vol;
  }
  if (n_ > 3) throw DimensionCap("exact volume limited to n <= 3");
  const auto& verts = vertices();
  Rat vol = 0;
  if (static_cast<int>(verts.size()) >= n_ + 1 &&
      affine_rank(verts, n_) == n_) {
    if (n_ == 1) {
      Rat lo = verts[0][0], hi = verts[0][0];
      for (const auto& v : verts) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
      }
      vol = hi - lo;
    } else if (n_ == 2) {
      vol = polygon_area(verts);
    } else {
      // Cone decomposition from the vertex centroid over facet fans.
      Vec c(3, Rat(0));
      for (const auto& v : verts) c = vec_add(c, v);
      c = vec_scale(Rat(1, static_cast<long>(verts.size())), c);
      for (const auto& h : hs_) {
        std::vector<Vec> facet;
        for (const auto& v : verts)
          if (dot(h.a, v) == h.b) facet.push_back(v);
        if (facet.size() < 3) continue;
        // Project out the largest normal coordinate, order angularly.
        int drop = 0;
        for (int i = 1; i < 3; ++i)
          if (abs(h.a[i]) > abs(h.a[drop])) drop = i;
        auto flat = [&](const Vec& v) {
          Vec w;
          for (int i = 0; i < 3; ++i)
            if (i != drop) w.push_back(v[i]);
          return w;
        };
        Vec fc(2, Rat(0));
        for (const auto& v : facet) fc = vec_add(fc, flat(v));
        fc = vec_scale(Rat(1, static_cast<long>(facet.size())), fc);
        std::sort(facet.begin(), facet.end(), [&](const Vec& a, const Vec& b) {
          return angular_less(vec_sub(flat(a), fc), vec_sub(flat(b), fc));
        });
        for (std::size_t i = 1; i + 1 < facet.size(); ++i) {
          Mat d(3, 3);
          Vec e1 = vec_sub(facet[0], c), e2 = vec_sub(facet[i], c),
              e3 = vec_sub(facet[i + 1], c);
          for (int j = 0; j < 3; ++j) {
            d.at(0, j) = e1[j];
            d.at(1, j) = e2[j];
            d.at(2, j) = e3[j];
          }
          vol += abs(d.det()) / 6;
        }
      }
    }
  }
  std::lock_guard lk(g_cache_mutex);
  if (!cache_->vol) cache_->vol = vol;
  return *cache_->vol;
}

Polytope Polytope::linear_image_by_inverse(const Mat& p_inv) const {
  Mat t = p_inv.transpose();
  std::vector<Halfspace> hs;
  hs.reserve(hs_.size());
  for (const auto& h : hs_) hs.push_back({t * h.a, h.b});
  return Polytope(n_, std::move(hs));
}

Polytope Polytope::translated(const Vec& t) const {
  std::vector<Halfspace> hs;
  hs.reserve(hs_.size());
  for (const auto& h : hs_) hs.push_back({h.a, h.b + dot(h.a, t)});
  return Polytope(n_, std::move(hs));
}

std::pair<Vec, Vec> Polytope::bbox() const {
  {
    std::lock_guard lk(g_cache_mutex);
    if (cache_->box) return *cache_->box;
  }
  std::vector<Vec> A;
  Vec b;
  for (const auto& h : hs_) {
    A.push_back(h.a);
    b.push_back(h.b);
  }
  Vec lo(n_), hi(n_);
  for (int i = 0; i < n_; ++i) {
    Vec c(n_, Rat(0));
    c[i] = 1;
    LpResult up = lp_maximize(A, b, c);
    c[i] = -1;
    LpResult down = lp_maximize(A, b, c);
    if (up.status != LpStatus::Optimal || down.status != LpStatus::Optimal)
      throw Error("bbox of empty or unbounded polytope");
    hi[i] = up.value;
    lo[i] = -down.value;
  }
  std::lock_guard lk(g_cache_mutex);
  if (!cache_->box) cache_->box = std::make_pair(lo, hi);
  return *cache_->box;
}

std::pair<Vec, Rat> Polytope::chebyshev() const {
  // Variables (x, t): max t subject to <a, x> + t * ||a||_1 <= b.
  std::vector<Vec> A;
  Vec b, c(n_ + 1, Rat(0));
  c[n_] = 1;
  for (const auto& h : hs_) {
    Vec row = h.a;
    Rat l1 = 0;
    for (const auto& ai : h.a) l1 += abs(ai);
    row.push_back(l1);
    A.push_back(row);
    b.push_back(h.b);
  }
  LpResult r = lp_maximize(A, b, c);
  if (r.status != LpStatus::Optimal) return {Vec(n_, Rat(0)), Rat(-1)};
  Vec center(r.x.begin(), r.x.begin() + n_);
  return {center, r.x[n_]};
}

Rat Polytope::min_linf() const {
  // Variables (x, t): min t subject to +-x_i <= t and x in P.
  std::vector<Vec> A;
  Vec b, c(n_ + 1, Rat(0));
  c[n_] = -1;
  for (const auto& h : hs_) {
    Vec row = h.a;
    row.push_back(Rat(0));
    A.push_back(row);
    b.push_back(h.b);
  }
  for (int i = 0; i < n_; ++i) {
    for (Rat sign : {Rat(1), Rat(-1)}) {
      Vec row(n_ + 1, Rat(0));
      row[i] = sign;
      row[n_] = -1;
      A.push_back(row);
      b.push_back(Rat(0));
    }
  }
  LpResult r = lp_maximize(A, b, c);
  if (r.status != LpStatus::Optimal)
    throw Error("min_linf of empty polytope");
  return -r.value;
}

Rat Polytope::max_linf() const {
  auto [lo, hi] = bbox();
  Rat m = 0;
  for (int i = 0; i < n_; ++i)
    m = std::max({m, Rat(abs(lo[i])), Rat(abs(hi[i]))});
  return m;
}

}  // namespace lw
