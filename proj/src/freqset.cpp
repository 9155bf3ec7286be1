#include "latticewave/freqset.hpp"

#include <algorithm>

#include "latticewave/errors.hpp"

namespace lw {

FrequencySet FrequencySet::torus_box(int n) {
  Vec lo(n, Rat(-1, 2)), hi(n, Rat(1, 2));
  return {n, {Polytope::box(lo, hi)}};
}

Region member(const FrequencySet& s, const Vec& x) {
  bool boundary = false;
  for (const auto& p : s.pieces) {
    Region r = p.member(x);
    if (r == Region::Inside) return Region::Inside;
    if (r == Region::Boundary) boundary = true;
  }
  return boundary ? Region::Boundary : Region::Outside;
}

Rat volume(const FrequencySet& s) {
  Rat v = 0;
  for (const auto& p : s.pieces) v += p.volume();
  return v;
}

FrequencySet dilate(const FrequencySet& s, const DilationMatrix& m, int j) {
  if (m.n != s.n) throw DimensionMismatch("dilate: dimension");
  if (j == 0) return s;
  Mat p_inv = m.B_rat.pow(-j);
  FrequencySet out{s.n, {}};
  for (const auto& p : s.pieces)
    out.pieces.push_back(p.linear_image_by_inverse(p_inv));
  return out;
}

FrequencySet translate(const FrequencySet& s, const Vec& t) {
  FrequencySet out{s.n, {}};
  for (const auto& p : s.pieces) out.pieces.push_back(p.translated(t));
  return out;
}

FrequencySet translate(const FrequencySet& s, const IntVec& k) {
  return translate(s, to_rat_vec(k));
}

namespace {

// Interior of the intersection of two halfspace systems, by max-slack LP.
// A cached bounding-box test rejects almost all pairs before the LP runs.
bool interiors_meet(const Polytope& p, const Polytope& q) {
  int n = p.dim();
  try {
    const auto& [plo, phi] = p.bbox();
    const auto& [qlo, qhi] = q.bbox();
    for (int i = 0; i < n; ++i) {
      const Rat& lo = plo[i] < qlo[i] ? qlo[i] : plo[i];
      const Rat& hi = phi[i] < qhi[i] ? phi[i] : qhi[i];
      if (!(lo < hi)) return false;
    }
  } catch (const Error&) {
    return false;  // an empty polytope has no bounding box and no interior
  }
  std::vector<Vec> A;
  Vec b, c(n + 1, Rat(0));
  c[n] = 1;
  auto push = [&](const Polytope& poly) {
    for (const auto& h : poly.halfspaces()) {
      Vec row = h.a;
      row.push_back(Rat(1));
      A.push_back(row);
      b.push_back(h.b);
    }
  };
  push(p);
  push(q);
  LpResult r = lp_maximize(A, b, c);
  return r.status == LpStatus::Optimal && r.value > 0;
}

Polytope intersect_pair(const Polytope& p, const Polytope& q) {
  std::vector<Halfspace> hs = p.halfspaces();
  for (const auto& h : q.halfspaces()) hs.push_back(h);
  return Polytope(p.dim(), std::move(hs));
}

// Removes halfspaces implied by the others. Keeps piece descriptions small
// through repeated differences.
Polytope drop_redundant(const Polytope& p) {
  std::vector<Halfspace> kept = p.halfspaces();
  for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
    std::vector<Vec> A;
    Vec b;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j == i) continue;
      A.push_back(kept[j].a);
      b.push_back(kept[j].b);
    }
    LpResult r = lp_maximize(A, b, kept[i].a);
    bool redundant =
        r.status == LpStatus::Optimal && r.value <= kept[i].b;
    if (redundant)
      kept.erase(kept.begin() + i);
    else
      ++i;
  }
  return Polytope(p.dim(), std::move(kept));
}

// Convex difference p \ q as a list of convex parts (hyperplane subdivision).
std::vector<Polytope> subtract_convex(const Polytope& p, const Polytope& q) {
  std::vector<Polytope> out;
  if (!interiors_meet(p, q)) {
    out.push_back(p);
    return out;
  }
  std::vector<Halfspace> current = p.halfspaces();
  for (const auto& h : q.halfspaces()) {
    std::vector<Halfspace> outside = current;
    outside.push_back({vec_scale(Rat(-1), h.a), -h.b});
    Polytope part(p.dim(), std::move(outside));
    if (part.has_interior()) out.push_back(drop_redundant(part));
    current.push_back(h);
  }
  return out;
}

}  // namespace

Overlap intersects(const FrequencySet& s1, const FrequencySet& s2) {
  for (const auto& p : s1.pieces)
    for (const auto& q : s2.pieces)
      if (interiors_meet(p, q)) return Overlap::PositiveMeasureOverlap;
  return Overlap::Disjoint;
}

FrequencySet intersection(const FrequencySet& s1, const FrequencySet& s2) {
  FrequencySet out{s1.n, {}};
  for (const auto& p : s1.pieces)
    for (const auto& q : s2.pieces) {
      if (!interiors_meet(p, q)) continue;
      out.pieces.push_back(drop_redundant(intersect_pair(p, q)));
    }
  return out;
}

FrequencySet difference(const FrequencySet& s1, const FrequencySet& s2) {
  FrequencySet out{s1.n, {}};
  for (const auto& p : s1.pieces) {
    std::vector<Polytope> parts{p};
    for (const auto& q : s2.pieces) {
      std::vector<Polytope> next;
      for (const auto& part : parts) {
        auto pieces = subtract_convex(part, q);
        next.insert(next.end(), pieces.begin(), pieces.end());
      }
      parts = std::move(next);
      if (parts.empty()) break;
    }
    out.pieces.insert(out.pieces.end(), parts.begin(), parts.end());
  }
  return out;
}

FrequencySet disjoint_union(const FrequencySet& s1, const FrequencySet& s2) {
  FrequencySet extra = difference(s2, s1);
  FrequencySet out = s1;
  out.pieces.insert(out.pieces.end(), extra.pieces.begin(),
                    extra.pieces.end());
  return out;
}

FrequencySet pruned(const FrequencySet& s) {
  FrequencySet out{s.n, {}};
  for (const auto& p : s.pieces)
    if (p.has_interior()) out.pieces.push_back(drop_redundant(p));
  return out;
}

std::vector<IntVec> integer_shifts_meeting(const Polytope& piece,
                                           const Vec& target_lo,
                                           const Vec& target_hi) {
  auto [lo, hi] = piece.bbox();
  int n = piece.dim();
  std::vector<std::pair<std::int64_t, std::int64_t>> rng(n);
  for (int i = 0; i < n; ++i) {
    rng[i] = {rat_ceil(target_lo[i] - hi[i]).convert_to<std::int64_t>(),
              rat_floor(target_hi[i] - lo[i]).convert_to<std::int64_t>()};
    if (rng[i].first > rng[i].second) return {};
  }
  std::vector<IntVec> out;
  IntVec k(n);
  auto rec = [&](auto&& self, int d) -> void {
    if (d == n) {
      out.push_back(k);
      return;
    }
    for (std::int64_t v = rng[d].first; v <= rng[d].second; ++v) {
      k[d] = v;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  return out;
}

FrequencySet tau_projection(const FrequencySet& s) {
  int n = s.n;
  Vec lo(n, Rat(-1, 2)), hi(n, Rat(1, 2));
  Polytope torus = Polytope::box(lo, hi);
  FrequencySet acc = FrequencySet::empty(n);
  for (const auto& p : s.pieces) {
    for (const auto& k : integer_shifts_meeting(p, lo, hi)) {
      Polytope shifted = p.translated(to_rat_vec(k));
      Polytope clipped = intersect_pair(shifted, torus);
      if (!clipped.has_interior()) continue;
      acc = disjoint_union(acc, {n, {drop_redundant(clipped)}});
    }
  }
  return acc;
}

BoundingAnnulus bounding_annulus(const FrequencySet& s) {
  if (s.is_empty()) return {Rat(0), Rat(0)};
  BoundingAnnulus out{s.pieces[0].min_linf(), s.pieces[0].max_linf()};
  for (std::size_t i = 1; i < s.pieces.size(); ++i) {
    out.rho_min = std::min(out.rho_min, s.pieces[i].min_linf());
    out.rho_max = std::max(out.rho_max, s.pieces[i].max_linf());
  }
  return out;
}

JWindow dilation_overlap_window(const DilationMatrix& m,
                                const BoundingAnnulus& src,
                                const BoundingAnnulus& dst) {
  if (src.rho_min <= 0 || dst.rho_min <= 0)
    throw OriginInClosure("window derivation needs rho_min > 0");
  // ||B^(-j)|| <= N c^floor(j/m): once N c^q < src.rho_min / dst.rho_max,
  // every j >= q*m sends the source shell beyond the target; symmetrically
  // for negative j.
  const Rat N = m.residue_norm_bound;
  const Rat c = m.contraction_norm;
  const int me = m.contraction_exponent;

  Rat bound = N;
  int q_hi = 0;
  while (bound * dst.rho_max >= src.rho_min) {
    bound *= c;
    ++q_hi;
  }
  Rat bound2 = N;
  int q_lo = 0;
  while (bound2 * src.rho_max >= dst.rho_min) {
    bound2 *= c;
    ++q_lo;
  }
  return {-(q_lo * me), q_hi * me};
}

FrequencySet d_projection(const FrequencySet& s, const FrequencySet& d,
                          const DilationMatrix& m) {
  if (s.is_empty()) return FrequencySet::empty(s.n);
  BoundingAnnulus as = bounding_annulus(s);
  BoundingAnnulus ad = bounding_annulus(d);
  if (as.rho_min <= 0 || ad.rho_min <= 0)
    throw OriginInClosure("d_projection needs sets bounded away from 0");
  JWindow win = dilation_overlap_window(m, as, ad);
  FrequencySet acc = FrequencySet::empty(s.n);
  for (int j = win.lo; j <= win.hi; ++j) {
    FrequencySet img = intersection(dilate(s, m, j), d);
    if (!img.pieces.empty()) acc = disjoint_union(acc, img);
  }
  return acc;
}

}  // namespace lw
