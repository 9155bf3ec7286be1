#include "latticewave/construct.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>

#include "latticewave/classify.hpp"
#include "latticewave/errors.hpp"
#include "latticewave/sampling.hpp"
#include "latticewave/tiling.hpp"

namespace lw {

namespace {

long piece_budget() {
  if (const char* env = std::getenv("LATTICEWAVE_MAX_PIECES"))
    return std::atol(env);
  return 4096;
}

Polytope poly_intersect(const Polytope& a, const Polytope& b) {
  std::vector<Halfspace> hs = a.halfspaces();
  for (const auto& h : b.halfspaces()) hs.push_back(h);
  return Polytope(a.dim(), hs);
}

FrequencySet singleton(int n, const Polytope& p) { return {n, {p}}; }

// B^j image of one polytope.
Polytope dilate_poly(const Polytope& p, const DilationMatrix& m, int j) {
  if (j == 0) return p;
  return p.linear_image_by_inverse(m.B_rat.pow(-j));
}

}  // namespace

FixedPoints fixed_point_set(const DilationMatrix& m, const IntVec& k, int p,
                            int j_lo, int j_hi) {
  if (p == 0) throw Error("fixed_point_set: p must be nonzero");
  FixedPoints out;
  Mat id = Mat::identity(m.n);
  out.lattice_basis = (m.B_rat.pow(-p) - id).inverse();
  Vec kv = to_rat_vec(k);
  for (int j = j_lo; j <= j_hi; ++j) {
    if (j == 0) continue;
    try {
      out.g_points.push_back((m.B_rat.pow(-j) - id).inverse() * kv);
    } catch (const SingularMatrix&) {
      out.note += "B^(-" + std::to_string(j) + ") - I singular; skipped. ";
    }
  }
  out.limit_points.push_back(Vec(m.n, Rat(0)));
  out.limit_points.push_back(vec_scale(Rat(-1), kv));
  return out;
}

namespace {

// Smallest q (in certificate steps) with N c^q <= 1/2 and the fixed-point
// tail bound N c^q ||k|| / (1 - N c^q) <= 1/16; beyond j = q*m every fixed
// point of xi -> B^(-j) xi - k is within 1/16 of a limit point.
int fixed_point_window(const DilationMatrix& m, const Rat& k_norm) {
  Rat bound = m.residue_norm_bound;
  int q = 0;
  while (bound > Rat(1, 2) || bound * k_norm > Rat(1, 16) * (1 - bound)) {
    bound *= m.contraction_norm;
    ++q;
  }
  return q * m.contraction_exponent;
}

// All excluded points within l-inf distance 2 of the origin, plus lower
// bounds standing in for the infinite tails.
std::vector<Vec> excluded_points(const DilationMatrix& m, const IntVec& k,
                                 int p) {
  const int n = m.n;
  Vec kv = to_rat_vec(k);
  int jw = fixed_point_window(m, linf_norm(kv));
  FixedPoints fp = fixed_point_set(m, k, p, -jw, jw);

  std::vector<Vec> pts = fp.g_points;
  for (const auto& lp : fp.limit_points) pts.push_back(lp);

  // Lattice points basis * c with ||basis * c|| <= 2: coefficient window
  // from the exact inverse basis norm.
  auto enumerate = [&](const Mat& basis, const Mat& basis_inv) {
    Int cap = rat_ceil(basis_inv.max_row_l1() * 2);
    auto c = cap.convert_to<std::int64_t>();
    IntVec coef(n, -c);
    while (true) {
      bool zero = std::all_of(coef.begin(), coef.end(),
                              [](std::int64_t t) { return t == 0; });
      Vec x = basis * to_rat_vec(coef);
      if (!zero && linf_norm(x) <= 2) pts.push_back(x);
      int i = 0;
      while (i < n && ++coef[i] > c) coef[i++] = -c;
      if (i == n) break;
    }
  };
  enumerate(fp.lattice_basis, m.B_rat.pow(-p) - Mat::identity(n));
  enumerate(Mat::identity(n), Mat::identity(n));        // Z^n
  enumerate(m.B_rat.pow(p), m.B_rat.pow(-p));           // B^p Z^n
  pts.push_back(Vec(n, Rat(0)));
  return pts;
}

}  // namespace

SeedSpec build_seed(const DilationMatrix& m, int r, int p,
                    std::uint64_t rng_seed) {
  SeedSpec spec;
  spec.r = r;
  spec.p = p;
  spec.k_r = choose_kr(m, r);

  std::vector<Vec> excluded = excluded_points(m, spec.k_r, p);
  Sampler sampler(rng_seed);
  Vec lo(m.n, Rat(-3, 4)), hi(m.n, Rat(3, 4));
  for (int draw = 0; draw < 256; ++draw) {
    Vec y = sampler.box_point(lo, hi, draw % 7);
    if (linf_norm(y) < Rat(1, 4)) continue;
    Rat dmin = -1;
    for (const auto& e : excluded) {
      Rat dist = linf_norm(vec_sub(y, e));
      if (dmin < 0 || dist < dmin) dmin = dist;
    }
    // Fixed points outside the enumeration window sit within 1/16 of a
    // limit point (which is in the list), and everything else has norm > 2
    // while ||y|| <= 3/4; shrink the bound accordingly.
    if (dmin > Rat(1, 16)) dmin -= Rat(1, 16);
    else dmin /= 2;
    if (dmin <= 0) continue;

    spec.y = y;
    auto with_eps = [&](const Rat& e) {
      spec.epsilon = e;
      Vec blo = y, bhi = y;
      for (int i = 0; i < m.n; ++i) {
        blo[i] -= e;
        bhi[i] += e;
      }
      spec.I = singleton(m.n, Polytope::box(blo, bhi));
    };
    Rat eps = dmin / 2;
    for (int halving = 0; halving < 40; ++halving, eps /= 2) {
      with_eps(eps);
      if (!check_seed(m, spec).ok()) continue;
      // A smaller cube keeps the certificate valid (every condition is
      // preserved under shrinking towards y) and leaves the completion
      // much less obstructed mass around the seed's dilation orbit, so
      // shrink a few extra steps beyond the first admissible size.
      for (int extra = 0; extra < 3; ++extra) {
        Rat half = spec.epsilon / 2;
        SeedSpec keep = spec;
        with_eps(half);
        if (!check_seed(m, spec).ok()) {
          spec = keep;
          break;
        }
      }
      return spec;
    }
  }
  throw SearchExhausted("build_seed: no admissible (y, epsilon) found");
}

SeedCheck check_seed(const DilationMatrix& m, const SeedSpec& seed) {
  SeedCheck out;
  const FrequencySet& I = seed.I;
  if (I.is_empty() || !(seed.epsilon > 0)) return out;
  FrequencySet d_tile = build_dilation_tile(m);

  FrequencySet Ip = dilate(I, m, -seed.p);
  out.tau_disjoint = intersects(tau_projection(I), tau_projection(Ip)) ==
                     Overlap::Disjoint;

  FrequencySet S = disjoint_union(I, translate(Ip, seed.k_r));

  try {
    Vec shift = m.B_rat.pow(seed.p) * to_rat_vec(seed.k_r);
    out.d_disjoint = intersects(d_projection(I, d_tile, m),
                                d_projection(translate(I, shift), d_tile, m)) ==
                     Overlap::Disjoint;

    out.a = support_conflicts(S, m).empty();

    BoundingAnnulus ann = bounding_annulus(S);
    JWindow win = dilation_overlap_window(m, ann, ann);
    out.b = true;
    for (int j = win.lo; j <= win.hi; ++j)
      if (j != 0 && intersects(dilate(S, m, j), S) != Overlap::Disjoint)
        out.b = false;

    Rat dist0 = -1;
    for (const auto& piece : tau_projection(S).pieces) {
      Rat d = piece.min_linf();
      if (dist0 < 0 || d < dist0) dist0 = d;
    }
    out.c = dist0 > 0;
    if (out.c) out.eps_prime = dist0 / 2;

    FrequencySet hole = pruned(difference(d_tile, d_projection(S, d_tile, m)));
    out.d = !hole.is_empty();
    if (out.d) {
      const Polytope* best = nullptr;
      for (const auto& piece : hole.pieces)
        if (!best || piece.volume() > best->volume()) best = &piece;
      auto [c, rho] = best->chebyshev();
      Vec blo = c, bhi = c;
      for (int i = 0; i < m.n; ++i) {
        blo[i] -= rho / 2;
        bhi[i] += rho / 2;
      }
      out.interior_box = singleton(m.n, Polytope::box(blo, bhi));
    }
  } catch (const OriginInClosure&) {
    // 0 in the closure of S: conditions (b)-(d) cannot hold.
  }
  return out;
}

namespace {

// One convex chunk of the growing set W, carrying its translation cell
// and dilation shell so the tau- and d-images stay exact and incremental:
// tau = poly - k lies in the torus box, dimg = B^(-shell) poly lies in D.
struct WPiece {
  Polytope poly;
  Polytope tau;
  Polytope dimg;
  IntVec k;
  int shell = 0;
  bool pinned = false;
  // Sweep index before which the piece may not be evicted. Forced fills
  // set this: a forced move is profitable to reverse immediately, so the
  // incoming piece is locked long enough for the reopened mass to drain,
  // after which it is ordinary evictable mass (permanent pins accumulate
  // and eventually strangle the exchange search).
  int lock = 0;
};

// 0 = silent, 1 = per-iteration lines, 2 = + shadow diagnostics on forces.
int trace_level() {
  static const int lvl = [] {
    const char* e = std::getenv("LATTICEWAVE_TRACE");
    return e ? std::atoi(e) : 0;
  }();
  return lvl;
}

struct Builder {
  const DilationMatrix& m;
  FrequencySet d_tile;
  BoundingAnnulus d_ann;
  FrequencySet torus;
  std::vector<WPiece> pieces;
  long budget = piece_budget();

  explicit Builder(const DilationMatrix& mm)
      : m(mm),
        d_tile(build_dilation_tile(mm)),
        d_ann(bounding_annulus(d_tile)),
        torus(FrequencySet::torus_box(mm.n)) {}

  int forced = 0;  // count of forced fills (see exchange_at)
  int sweep = 0;   // current exchange sweep, for eviction locks

  bool evictable(const WPiece& p) const {
    return !p.pinned && p.lock <= sweep;
  }

  FrequencySet tau_set() const {
    FrequencySet s{m.n, {}};
    for (const auto& p : pieces) s.pieces.push_back(p.tau);
    return s;
  }
  FrequencySet d_set() const {
    FrequencySet s{m.n, {}};
    for (const auto& p : pieces) s.pieces.push_back(p.dimg);
    return s;
  }
  FrequencySet w_set() const {
    FrequencySet s{m.n, {}};
    for (const auto& p : pieces) s.pieces.push_back(p.poly);
    return s;
  }

  // Positive-measure overlap test with a cached bounding-box prefilter, so
  // the per-insertion invariant scan stays cheap as the piece list grows.
  bool meets(const Polytope& p, const Polytope& q) const {
    const auto& [plo, phi] = p.bbox();
    const auto& [qlo, qhi] = q.bbox();
    for (int i = 0; i < m.n; ++i) {
      const Rat& lo = plo[i] < qlo[i] ? qlo[i] : plo[i];
      const Rat& hi = phi[i] < qhi[i] ? phi[i] : qhi[i];
      if (!(lo < hi)) return false;
    }
    return poly_intersect(p, q).has_interior();
  }

  void add(const Polytope& poly, IntVec k, int shell, bool pinned,
           int lock = 0) {
    WPiece wp{poly, poly.translated(vec_scale(Rat(-1), to_rat_vec(k))),
              dilate_poly(poly, m, -shell), std::move(k), shell, pinned,
              lock};
    // Tiling invariants (a)/(b) are asserted on every insertion.
    for (const auto& other : pieces) {
      if (meets(wp.tau, other.tau))
        throw OverlapDetected("completion: translation overlap");
      if (meets(wp.dimg, other.dimg))
        throw OverlapDetected("completion: dilation overlap");
    }
    pieces.push_back(std::move(wp));
    if (static_cast<long>(pieces.size()) > budget)
      throw MaxIterations("completion: piece budget exceeded (set "
                          "LATTICEWAVE_MAX_PIECES to raise)");
  }

  // Splits an arbitrary positioned set into WPieces with well-defined
  // translation cell and dilation shell.
  void ingest(const FrequencySet& s, bool pinned) {
    Vec tlo(m.n, Rat(-1, 2)), thi(m.n, Rat(1, 2));
    for (const auto& piece : pruned(s).pieces) {
      for (const auto& t : integer_shifts_meeting(piece, tlo, thi)) {
        Vec tv = to_rat_vec(t);
        Polytope cell =
            poly_intersect(piece, Polytope::box(vec_sub(tlo, tv),
                                                vec_sub(thi, tv)));
        if (!cell.has_interior()) continue;
        IntVec k(m.n);
        for (int i = 0; i < m.n; ++i) k[i] = -t[i];
        JWindow win = dilation_overlap_window(
            m, bounding_annulus(singleton(m.n, cell)), d_ann);
        for (int j = win.lo; j <= win.hi; ++j) {
          // B^j cell meets D <=> cell meets B^(-j) D: shell is -j... the
          // shell s satisfies B^(-s) chunk in D, so s = -j.
          for (const auto& dpiece : dilate(d_tile, m, -j).pieces) {
            Polytope chunk = poly_intersect(cell, dpiece);
            if (chunk.has_interior()) add(chunk, k, -j, pinned);
          }
        }
      }
    }
  }
};

const Polytope* largest_piece(const FrequencySet& s) {
  const Polytope* best = nullptr;
  for (const auto& p : s.pieces)
    if (!best || p.volume() > best->volume()) best = &p;
  return best;
}

// Fill one translation hole U: translate it into B^j T for the smallest
// j >= 1 whose image box fits U plus integer-rounding slack.
void fill_translation_hole(Builder& b, const Polytope& U,
                           const FrequencySet& d_hole) {
  const Polytope* tp = largest_piece(d_hole);
  if (!tp) throw NoProgress("completion: no dilation room left");
  auto [tc, trho] = tp->chebyshev();
  if (!(trho > 0)) throw NoProgress("completion: degenerate dilation room");
  Vec blo = tc, bhi = tc;
  for (int i = 0; i < b.m.n; ++i) {
    blo[i] -= trho;
    bhi[i] += trho;
  }
  Polytope t_box = Polytope::box(blo, bhi);

  auto [ulo, uhi] = U.bbox();
  Rat need = Rat(1, 2);
  Vec uc(b.m.n);
  for (int i = 0; i < b.m.n; ++i) {
    need = std::max(need, (uhi[i] - ulo[i]) / 2 + Rat(1, 2));
    uc[i] = (ulo[i] + uhi[i]) / 2;
  }
  for (int j = 1; j <= 64 * b.m.contraction_exponent; ++j) {
    Polytope img = dilate_poly(t_box, b.m, j);
    auto [c, rho] = img.chebyshev();
    if (rho < need) continue;
    IntVec k(b.m.n);
    for (int i = 0; i < b.m.n; ++i)
      k[i] = rat_round(c[i] - uc[i]).convert_to<std::int64_t>();
    b.add(U.translated(to_rat_vec(k)), k, j, false);
    return;
  }
  throw NoProgress("completion: no dilation shell fits the hole");
}

// One exchange level: fill parts of one dilation-hole piece at shell j.
// The expanded image B^j(hole) casts a translation shadow over the torus;
// wherever that shadow meets donor mass sitting at a strictly deeper shell
// (>= j+1), we evict the donor overlap and insert the matching chunk of
// B^j(hole) in its place. The filled d-volume is vol(ov)/a^j while the
// reopened d-volume is vol(ov)/a^shell with shell > j, so the dilation
// residual strictly decreases on every move. Returns true on progress.
//
// With `forced` set the depth requirement on donors is dropped: any unpinned
// blocker may be evicted, even when that increases the residual. This is the
// last resort for a hole whose shallow shadows are pinned by the seed and
// whose deep shadows have no donors: the forced fill relocates the hole onto
// generic donor d-slots, whose own shadows are unpinned, after which ordinary
// exchanges drain the relocated mass geometrically.
bool exchange_at(Builder& b, FrequencySet& d_hole, const Polytope& hole,
                 int j, bool forced = false) {
  bool progress = false;
  FrequencySet filled{b.m.n, {}};
  Vec tlo(b.m.n, Rat(-1, 2)), thi(b.m.n, Rat(1, 2));
  Polytope img = dilate_poly(hole, b.m, j);  // B^j hole
  for (const auto& t : integer_shifts_meeting(img, tlo, thi)) {
    Vec tv = to_rat_vec(t);
    Polytope cell =
        poly_intersect(img, Polytope::box(vec_sub(tlo, tv), vec_sub(thi, tv)));
    if (!cell.has_interior()) continue;
    Polytope shadow = cell.translated(tv);  // inside the torus

    // Donor chunks: unpinned W mass at shells deeper than j over the shadow.
    // Re-scanned per cell so overlapping shadows never claim a donor twice.
    struct Donation {
      std::size_t idx;
      Polytope overlap;  // in tau coordinates
    };
    std::vector<Donation> donations;
    const auto& [slo, shi] = shadow.bbox();
    for (std::size_t i = 0; i < b.pieces.size(); ++i) {
      if (!b.evictable(b.pieces[i])) continue;
      if (!forced && b.pieces[i].shell <= j) continue;
      if (forced && b.pieces[i].shell == j) {
        // Evicting a same-shell blocker and reinserting the shadow chunk at
        // the blocker's own position is the identity; skip the no-op.
        bool same = true;
        for (int d = 0; d < b.m.n && same; ++d)
          same = b.pieces[i].k[d] == -t[d];
        if (same) continue;
      }
      const auto& [plo, phi] = b.pieces[i].tau.bbox();
      bool boxes_meet = true;
      for (int d = 0; d < b.m.n && boxes_meet; ++d)
        if (!(std::max(plo[d], slo[d]) < std::min(phi[d], shi[d])))
          boxes_meet = false;
      if (!boxes_meet) continue;
      Polytope ov = poly_intersect(b.pieces[i].tau, shadow);
      if (ov.has_interior()) donations.push_back({i, ov});
    }
    if (donations.empty()) continue;

    // Evict donors (largest index first keeps earlier indices stable),
    // then insert the swapped-in chunks at shell j.
    std::sort(donations.begin(), donations.end(),
              [](const Donation& x, const Donation& y) {
                return x.idx > y.idx;
              });
    std::vector<Polytope> incoming;
    for (const auto& dn : donations) {
      WPiece donor = b.pieces[dn.idx];
      b.pieces.erase(b.pieces.begin() + static_cast<long>(dn.idx));
      Vec kv = to_rat_vec(donor.k);
      FrequencySet rest = pruned(difference(singleton(b.m.n, donor.tau),
                                            singleton(b.m.n, dn.overlap)));
      for (const auto& rt : rest.pieces)
        b.add(rt.translated(kv), donor.k, donor.shell, donor.pinned, donor.lock);
      // The evicted donor mass reopens its d-image.
      d_hole.pieces.push_back(
          dilate_poly(dn.overlap.translated(kv), b.m, -donor.shell));
      incoming.push_back(dn.overlap);
    }
    IntVec k(b.m.n);
    for (int i = 0; i < b.m.n; ++i) k[i] = -t[i];
    for (const auto& ov : incoming) {
      Polytope p = ov.translated(vec_scale(Rat(-1), tv));
      // A forced insertion is locked for a few sweeps: reversing it is
      // immediately profitable, so without the lock the search cycles.
      b.add(p, k, j, false, forced ? b.sweep + 12 : 0);
      filled.pieces.push_back(dilate_poly(p, b.m, -j));
    }
    progress = true;
  }
  if (progress) d_hole = pruned(difference(d_hole, filled));
  return progress;
}

// Sweeps every hole piece once per call. Each hole exchanges at its
// shallowest productive level only; a second level for the same hole could
// re-fill d-volume claimed moments earlier, so we move on instead. Distinct
// hole pieces are essentially disjoint, which keeps all insertions of one
// sweep compatible.
// Fallback for holes whose every shadow is blocked by shallow or pinned
// mass: pull a chunk of deep unpinned mass straight down into the hole.
// The chunk keeps its translation cell but re-enters at the shallowest
// level q whose expanded hole B^q(hole) admits an integer translate of it;
// q < donor shell, so the dilation residual strictly decreases.
bool pulldown_at(Builder& b, FrequencySet& d_hole, const Polytope& hole) {
  int max_shell = 0;
  for (const auto& p : b.pieces) max_shell = std::max(max_shell, p.shell);
  for (int q = 0; q < max_shell; ++q) {
    Polytope img = dilate_poly(hole, b.m, q);
    auto [c, w] = img.chebyshev();
    if (!(w > 0)) return false;
    Vec xlo = c, xhi = c;
    for (int i = 0; i < b.m.n; ++i) {
      xlo[i] -= w;
      xhi[i] += w;
    }
    Polytope xbox = Polytope::box(xlo, xhi);

    std::vector<std::size_t> order(b.pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return b.pieces[x].shell > b.pieces[y].shell;
    });
    for (std::size_t idx : order) {
      if (b.pieces[idx].shell <= q) break;  // sorted deepest first
      if (!b.evictable(b.pieces[idx])) continue;
      for (const auto& t : integer_shifts_meeting(b.pieces[idx].tau, xlo, xhi)) {
        Vec tv = to_rat_vec(t);
        Polytope chunk =
            poly_intersect(b.pieces[idx].tau.translated(tv), xbox);
        if (!chunk.has_interior()) continue;
        WPiece donor = b.pieces[idx];
        b.pieces.erase(b.pieces.begin() + static_cast<long>(idx));
        Vec kv = to_rat_vec(donor.k);
        Polytope ev = chunk.translated(vec_scale(Rat(-1), tv));
        FrequencySet rest = pruned(difference(singleton(b.m.n, donor.tau),
                                              singleton(b.m.n, ev)));
        for (const auto& rt : rest.pieces)
          b.add(rt.translated(kv), donor.k, donor.shell, donor.pinned, donor.lock);
        d_hole.pieces.push_back(
            dilate_poly(ev.translated(kv), b.m, -donor.shell));
        IntVec k(b.m.n);
        for (int i = 0; i < b.m.n; ++i) k[i] = t[i];
        b.add(chunk, k, q, false);
        d_hole = pruned(difference(
            d_hole, singleton(b.m.n, dilate_poly(chunk, b.m, -q))));
        return true;
      }
    }
  }
  return false;
}

// Dry run: does any single profitable exchange exist for this hole?
// `exclude` skips one piece index (used by the relocation lookahead).
bool hole_admits_fill(const Builder& b, const Polytope& hole,
                      std::size_t exclude) {
  int max_shell = 0;
  for (const auto& p : b.pieces) max_shell = std::max(max_shell, p.shell);
  Vec tlo(b.m.n, Rat(-1, 2)), thi(b.m.n, Rat(1, 2));
  for (int j = 0; j < max_shell; ++j) {
    Polytope img = dilate_poly(hole, b.m, j);
    for (const auto& t : integer_shifts_meeting(img, tlo, thi)) {
      Vec tv = to_rat_vec(t);
      Polytope cell = poly_intersect(
          img, Polytope::box(vec_sub(tlo, tv), vec_sub(thi, tv)));
      if (!cell.has_interior()) continue;
      Polytope shadow = cell.translated(tv);
      for (std::size_t i = 0; i < b.pieces.size(); ++i) {
        if (i == exclude || !b.evictable(b.pieces[i]) || b.pieces[i].shell <= j)
          continue;
        if (b.meets(b.pieces[i].tau, shadow)) return true;
      }
    }
  }
  return false;
}

// Escape hatch for a deadlocked hole: swap it with an unpinned blocker at
// the same level. The residual is unchanged — the hole relocates to the
// blocker's d-image — so the swap is only taken when a lookahead confirms
// the relocated hole admits a profitable exchange afterwards.
bool escape_at(Builder& b, FrequencySet& d_hole, const Polytope& hole) {
  int max_shell = 0;
  for (const auto& p : b.pieces) max_shell = std::max(max_shell, p.shell);
  Vec tlo(b.m.n, Rat(-1, 2)), thi(b.m.n, Rat(1, 2));
  for (int j = 0; j <= max_shell; ++j) {
    Polytope img = dilate_poly(hole, b.m, j);
    for (const auto& t : integer_shifts_meeting(img, tlo, thi)) {
      Vec tv = to_rat_vec(t);
      Polytope cell = poly_intersect(
          img, Polytope::box(vec_sub(tlo, tv), vec_sub(thi, tv)));
      if (!cell.has_interior()) continue;
      Polytope shadow = cell.translated(tv);
      for (std::size_t i = 0; i < b.pieces.size(); ++i) {
        if (!b.evictable(b.pieces[i]) || b.pieces[i].shell != j) continue;
        if (!b.meets(b.pieces[i].tau, shadow)) continue;
        Polytope ov = poly_intersect(b.pieces[i].tau, shadow);
        if (!ov.has_interior()) continue;
        Vec kv = to_rat_vec(b.pieces[i].k);
        Polytope reopened = dilate_poly(ov.translated(kv), b.m, -j);
        if (!hole_admits_fill(b, reopened, i)) continue;

        WPiece donor = b.pieces[i];
        b.pieces.erase(b.pieces.begin() + static_cast<long>(i));
        FrequencySet rest = pruned(difference(singleton(b.m.n, donor.tau),
                                              singleton(b.m.n, ov)));
        for (const auto& rt : rest.pieces)
          b.add(rt.translated(kv), donor.k, donor.shell, donor.pinned, donor.lock);
        d_hole.pieces.push_back(reopened);
        IntVec k(b.m.n);
        for (int d = 0; d < b.m.n; ++d) k[d] = -t[d];
        Polytope p = ov.translated(vec_scale(Rat(-1), tv));
        b.add(p, k, j, false);
        d_hole = pruned(difference(
            d_hole, singleton(b.m.n, dilate_poly(p, b.m, -j))));
        return true;
      }
    }
  }
  return false;
}

// Shadow-coverage breakdown for a stuck hole: at each level j, how much of
// tau(B^j hole) is covered by seed-pinned, force-pinned, and per-shell
// unpinned mass. Trace aid only.
void diag_hole(const Builder& b, const Polytope& hole, int jmax) {
  Vec tlo(b.m.n, Rat(-1, 2)), thi(b.m.n, Rat(1, 2));
  std::cerr << "[diag] hole vol " << to_double(hole.volume()) << "\n";
  for (int j = 0; j <= jmax; ++j) {
    Polytope img = dilate_poly(hole, b.m, j);
    Rat seed = 0, forcedv = 0;
    std::map<int, Rat> byshell;
    for (const auto& t : integer_shifts_meeting(img, tlo, thi)) {
      Vec tv = to_rat_vec(t);
      Polytope cell = poly_intersect(
          img, Polytope::box(vec_sub(tlo, tv), vec_sub(thi, tv)));
      if (!cell.has_interior()) continue;
      Polytope shadow = cell.translated(tv);
      for (const auto& p : b.pieces) {
        if (!b.meets(p.tau, shadow)) continue;
        Rat v = poly_intersect(p.tau, shadow).volume();
        if (p.pinned)
          seed += v;
        else if (p.lock > b.sweep)
          forcedv += v;
        else
          byshell[p.shell] += v;
      }
    }
    std::cerr << "[diag]  j=" << j << " seed " << to_double(seed)
              << " locked " << to_double(forcedv) << " unpinned:";
    for (const auto& [s, v] : byshell)
      std::cerr << " s" << s << "=" << to_double(v);
    std::cerr << "\n";
  }
}

bool exchange_step(Builder& b, FrequencySet& d_hole, const Rat& tolerance) {
  ++b.sweep;
  int max_shell = 0;
  for (const auto& p : b.pieces) max_shell = std::max(max_shell, p.shell);

  // Snapshot the hole pieces: exchanges rewrite d_hole in place.
  std::vector<Polytope> holes(d_hole.pieces);
  std::sort(holes.begin(), holes.end(),
            [](const Polytope& x, const Polytope& y) {
              return x.volume() > y.volume();
            });
  // Slivers far below the mean fragment heavily for negligible progress;
  // they are left for later sweeps, where they dominate the residual.
  Rat floor = volume(d_hole) / Rat(256 * std::max<std::size_t>(holes.size(), 1));
  bool progress = false;
  int escapes = 0;
  int forces = 0;
  for (const Polytope& hole : holes) {
    if (progress && hole.volume() < floor) break;
    // Drain this hole across levels until a quarter of it is gone; a tiny
    // nibble at one level must not end the hole's turn, or big holes
    // survive every sweep while only slivers move.
    Rat vol0 = hole.volume();
    bool done = false;
    bool touched = false;  // any profitable move on this hole this sweep
    FrequencySet left = singleton(b.m.n, hole);
    for (int j = 0; j < max_shell && !left.pieces.empty(); ++j) {
      bool hit = false;
      for (const auto& hp : left.pieces)
        if (exchange_at(b, d_hole, hp, j)) hit = true;
      if (!hit) continue;
      progress = true;
      touched = true;
      left = pruned(intersection(d_hole, singleton(b.m.n, hole)));
      if (volume(left) < vol0 - vol0 / 4) {
        done = true;
        break;
      }
    }
    if (!done)
      for (const auto& hp : left.pieces)
        if (pulldown_at(b, d_hole, hp)) {
          done = true;
          touched = true;
          progress = true;
          break;
        }
    if (!done && escapes < 4)
      for (const auto& hp : left.pieces)
        if (escape_at(b, d_hole, hp)) {
          ++escapes;
          done = true;
          progress = true;
          break;
        }
    // Last resort for a hole no other move touches: force it onto unpinned
    // blockers at the shallowest admissible level, accepting the temporary
    // residual bump (see exchange_at). Each force permanently clears one
    // pinned-shadow region, so a handful per sweep suffices; holes far below
    // the tolerance are left alone since they cannot block convergence.
    if (!done && !touched && forces < 2 && hole.volume() * 64 > tolerance)
      for (const auto& hp : left.pieces) {
        if (trace_level() >= 2) diag_hole(b, hp, max_shell + 2);
        bool hit = false;
        for (int j = 0; j <= max_shell + 2 && !hit; ++j)
          hit = exchange_at(b, d_hole, hp, j, /*forced=*/true);
        if (hit) {
          ++b.forced;
          ++forces;
          progress = true;
          break;
        }
      }
  }
  return progress;
}

// Exact check that a finite union of polytopes is disjoint from every
// nonzero integer translate of itself (so unit volume implies it tiles the
// torus by translations).
bool translation_self_disjoint(const FrequencySet& t) {
  for (const auto& a : t.pieces)
    for (const auto& bpiece : t.pieces) {
      auto [blo, bhi] = bpiece.bbox();
      for (const auto& k : integer_shifts_meeting(a, blo, bhi)) {
        bool zero = true;
        for (auto ki : k) zero = zero && ki == 0;
        if (zero) continue;  // canvas pieces are already essentially disjoint
        Polytope shifted = a.translated(to_rat_vec(k));
        if (poly_intersect(shifted, bpiece).has_interior()) return false;
      }
    }
  return true;
}

// A ready-made wavelet set from the family B^q D, when one exists (for
// example D itself for the 1-d dyadic matrix, B D for the quincunx matrix).
// Starting the completion from such a canvas leaves only the seed's small
// translation and dilation shadows to repair, and the canvas mass already
// sits at the final equilibrium distribution of dilation shells.
FrequencySet find_canvas(const Builder& b) {
  for (int q = 0; q <= 4 * b.m.contraction_exponent; ++q) {
    FrequencySet t = dilate(b.d_tile, b.m, q);
    Rat v = volume(t);
    if (v > 1) break;
    if (v == 1 && translation_self_disjoint(t)) return t;
  }
  return FrequencySet{b.m.n, {}};
}

// Canvas minus every integer translate of the seed's translation cells and
// every dilation image of the seed's d-cells, so ingesting the remainder
// cannot violate either tiling invariant.
FrequencySet trim_canvas(const Builder& b, const FrequencySet& canvas) {
  FrequencySet trimmed = canvas;
  for (const auto& sp : b.pieces) {
    for (const auto& cp : canvas.pieces) {
      auto [clo, chi] = cp.bbox();
      for (const auto& k : integer_shifts_meeting(sp.tau, clo, chi))
        trimmed = pruned(difference(
            trimmed,
            singleton(b.m.n, sp.tau.translated(to_rat_vec(k)))));
    }
    FrequencySet dset = singleton(b.m.n, sp.dimg);
    JWindow win = dilation_overlap_window(b.m, bounding_annulus(canvas),
                                          bounding_annulus(dset));
    for (int j = win.lo; j <= win.hi; ++j)
      trimmed = pruned(difference(trimmed, dilate(dset, b.m, -j)));
  }
  return trimmed;
}

}  // namespace

ConstructionReport complete_to_wavelet_set(const DilationMatrix& m,
                                           const FrequencySet& s,
                                           const Rat& tolerance,
                                           int max_iter) {
  if (!(tolerance > 0))
    throw Error("complete_to_wavelet_set: tolerance must be positive");
  Builder b(m);
  b.ingest(s, /*pinned=*/true);

  if (!s.is_empty() && !std::getenv("LATTICEWAVE_NO_CANVAS")) {
    FrequencySet canvas = find_canvas(b);
    if (!canvas.is_empty()) b.ingest(trim_canvas(b, canvas), /*pinned=*/false);
  }

  ConstructionReport rep;
  int iterations = 0;
  const bool trace = std::getenv("LATTICEWAVE_TRACE") != nullptr;

  // Phase 1: fill every translation hole with a far-out integer copy whose
  // d-image lands inside the current dilation hole.
  while (true) {
    FrequencySet tau_hole = pruned(difference(b.torus, b.tau_set()));
    if (tau_hole.is_empty()) break;
    if (trace)
      std::cerr << "[completion] phase1 iter " << iterations << " pieces "
                << b.pieces.size() << " tau-hole "
                << to_double(volume(tau_hole)) << "\n";
    if (++iterations > max_iter)
      throw MaxIterations("complete_to_wavelet_set: translation phase");
    FrequencySet d_hole = pruned(difference(b.d_tile, b.d_set()));
    fill_translation_hole(b, *largest_piece(tau_hole), d_hole);
  }

  // Phase 2: exchange moves shrink the dilation hole geometrically while
  // the translation tiling stays exact.
  FrequencySet d_hole = pruned(difference(b.d_tile, b.d_set()));
  Rat residual = volume(d_hole);
  int stalled = 0;
  while (residual >= tolerance && residual != 0) {
    if (trace) {
      std::cerr << "[completion] iter " << iterations << " pieces "
                << b.pieces.size() << " residual " << to_double(residual)
                << " holes " << d_hole.pieces.size() << " largest "
                << to_double(largest_piece(d_hole)->volume()) << " forced "
                << b.forced << "\n";
      if (iterations % 25 == 0) {
        Rat truth = volume(pruned(difference(b.d_tile, b.d_set())));
        std::cerr << "[completion] cross-check true residual "
                  << to_double(truth) << "\n";
      }
    }
    if (++iterations > max_iter)
      throw MaxIterations("complete_to_wavelet_set: dilation phase");
    int forced_before = b.forced;
    if (!exchange_step(b, d_hole, tolerance))
      throw NoProgress("complete_to_wavelet_set: every dilation hole is "
                       "shadowed by pinned mass");
    d_hole = pruned(d_hole);
    Rat next = volume(d_hole);
    bool forced_now = b.forced != forced_before;
    if (next > residual && !forced_now)
      throw NoProgress("complete_to_wavelet_set: residual increased");
    // Relocations keep the residual level and forced fills may raise it;
    // tolerate a bounded run of them, but a long non-decreasing stretch
    // means the search is cycling.
    if (next < residual) {
      stalled = 0;
    } else if (++stalled > 32) {
      throw NoProgress("complete_to_wavelet_set: residual stalled");
    }
    residual = next;
  }

  rep.W = pruned(b.w_set());
  rep.residual_translation = volume(pruned(difference(b.torus, b.tau_set())));
  rep.residual_dilation = residual;
  rep.iterations = iterations;
  rep.piece_count = static_cast<int>(rep.W.pieces.size());
  rep.exact = rep.residual_translation == 0 && rep.residual_dilation == 0;
  return rep;
}

PiecewiseWavelet assemble_psi_r(const DilationMatrix& m, int r,
                                const ConstructionReport& report,
                                bool allow_inexact) {
  if (!report.exact && !allow_inexact)
    throw Error("assemble_psi_r: completion residuals are nonzero; pass "
                "allow_inexact to assemble anyway");
  if (report.seed.p != 1)
    throw Error("assemble_psi_r: the psi_r pipeline requires p = 1");
  const FrequencySet& I = report.seed.I;
  const IntVec& kr = report.seed.k_r;
  if (ord_b(m, kr) != r) throw Error("assemble_psi_r: ord(k_r) != r");

  FrequencySet BinvI = dilate(I, m, -1);
  FrequencySet BinvI_k = translate(BinvI, kr);
  Vec bkr = m.B_rat * to_rat_vec(kr);
  FrequencySet I_bk = translate(I, to_int_vec(bkr));
  FrequencySet pair = disjoint_union(I, BinvI_k);
  FrequencySet J = pruned(difference(report.W, pair));

  const ExactValue half_rt2{Rat(1, 2), 1}, neg_half_rt2{Rat(-1, 2), 1},
      one{Rat(1), 0};
  std::vector<std::pair<const FrequencySet*, ExactValue>> groups = {
      {&I, half_rt2},       {&BinvI, half_rt2}, {&BinvI_k, half_rt2},
      {&I_bk, neg_half_rt2}, {&J, one}};
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      if (intersects(*groups[i].first, *groups[j].first) != Overlap::Disjoint)
        throw OverlapDetected("assemble_psi_r: support regions overlap");

  PiecewiseWavelet w;
  w.matrix = m;
  w.support.n = m.n;
  for (const auto& [set, val] : groups)
    for (const auto& piece : pruned(*set).pieces) {
      w.support.pieces.push_back(piece);
      w.values.push_back(val);
    }
  return w;
}

PipelineResult run_pipeline(const DilationMatrix& m, int r,
                            std::uint64_t rng_seed, const Rat& tolerance,
                            int max_iter) {
  SeedSpec seed = build_seed(m, r, 1, rng_seed);
  FrequencySet S =
      disjoint_union(seed.I, translate(dilate(seed.I, m, -1), seed.k_r));
  PipelineResult out;
  out.report = complete_to_wavelet_set(m, S, tolerance, max_iter);
  out.report.seed = seed;
  out.report.J = pruned(difference(out.report.W, S));
  out.psi = assemble_psi_r(m, r, out.report, /*allow_inexact=*/true);
  return out;
}

}  // namespace lw
