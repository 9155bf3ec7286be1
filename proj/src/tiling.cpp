#include "latticewave/tiling.hpp"

#include <algorithm>
#include <optional>

#include "latticewave/detail/sample_runner.hpp"
#include "latticewave/errors.hpp"
#include "latticewave/sampling.hpp"

namespace lw {

namespace {

constexpr int kMaxWitnesses = 16;

// Counts strict-interior hits; nullopt when any membership test touches a
// boundary (the sample is then redrawn).
std::optional<int> translation_multiplicity(const FrequencySet& k,
                                            const Vec& x, const Vec& lo,
                                            const Vec& hi) {
  int n = k.n;
  std::vector<std::pair<std::int64_t, std::int64_t>> rng(n);
  for (int i = 0; i < n; ++i)
    rng[i] = {rat_ceil(lo[i] - x[i]).convert_to<std::int64_t>(),
              rat_floor(hi[i] - x[i]).convert_to<std::int64_t>()};
  int count = 0;
  IntVec kv(n);
  bool boundary = false;
  auto rec = [&](auto&& self, int d) -> void {
    if (boundary) return;
    if (d == n) {
      Vec y = x;
      for (int i = 0; i < n; ++i) y[i] += kv[i];
      Region r = member(k, y);
      if (r == Region::Inside) ++count;
      if (r == Region::Boundary) boundary = true;
      return;
    }
    for (std::int64_t v = rng[d].first; v <= rng[d].second && !boundary; ++v) {
      kv[d] = v;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  if (boundary) return std::nullopt;
  return count;
}

std::optional<int> dilation_multiplicity(const FrequencySet& k,
                                         const std::vector<Mat>& b_neg_pows,
                                         const Vec& x) {
  int count = 0;
  for (const auto& b_inv_j : b_neg_pows) {
    Region r = member(k, b_inv_j * x);
    if (r == Region::Inside) ++count;
    if (r == Region::Boundary) return std::nullopt;
  }
  return count;
}

void collect_witnesses(const std::vector<Vec>& points,
                       const std::vector<std::optional<int>>& mult,
                       TilingReport& rep, Verdict& verdict) {
  verdict = Verdict::Pass;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (*mult[i] == 1) continue;
    verdict = Verdict::Fail;
    if (static_cast<int>(rep.witnesses.size()) < kMaxWitnesses)
      rep.witnesses.push_back({points[i], *mult[i], static_cast<long>(i)});
  }
}

}  // namespace

TilingReport check_translation_tiling(const FrequencySet& k, long samples,
                                      std::uint64_t seed, Exec exec) {
  TilingReport rep;
  rep.samples_used = samples;
  rep.volume_ok = (volume(k) == 1);

  Vec lo(k.n, Rat(0)), hi(k.n, Rat(0));
  bool first = true;
  for (const auto& p : k.pieces) {
    auto [plo, phi] = p.bbox();
    for (int i = 0; i < k.n; ++i) {
      if (first || plo[i] < lo[i]) lo[i] = plo[i];
      if (first || phi[i] > hi[i]) hi[i] = phi[i];
    }
    first = false;
  }
  Rat radius = 0;
  for (int i = 0; i < k.n; ++i)
    radius = std::max({radius, Rat(abs(lo[i])), Rat(abs(hi[i]))});
  rep.k_window_radius = rat_ceil(radius).convert_to<std::int64_t>() + 1;

  Vec box_lo(k.n, Rat(-1, 2)), box_hi(k.n, Rat(1, 2));
  std::vector<Vec> pts;
  std::vector<std::optional<int>> mult;
  detail::run_sampling<int>(
      samples, seed, exec == Exec::Parallel,
      [&](Sampler& s, long) { return s.box_point(box_lo, box_hi); },
      [&](const Vec& x, long) {
        return translation_multiplicity(k, x, lo, hi);
      },
      pts, mult);
  collect_witnesses(pts, mult, rep, rep.translation);
  if (!rep.volume_ok) {
    rep.translation = Verdict::Fail;
    rep.note = "volume(K) = " + format_rational(volume(k)) + ", expected 1";
  }
  return rep;
}

TilingReport check_dilation_tiling(const FrequencySet& k,
                                   const DilationMatrix& m, long samples,
                                   std::uint64_t seed, Exec exec) {
  TilingReport rep;
  rep.samples_used = samples;
  rep.volume_ok = true;

  BoundingAnnulus ann = bounding_annulus(k);
  if (ann.rho_min <= 0) {
    rep.dilation = Verdict::Inconclusive;
    rep.note = "origin lies in the closure of K; finite windows cannot "
               "certify behavior near 0";
    return rep;
  }

  FrequencySet d = build_dilation_tile(m);
  for (auto& p : d.pieces) p.volume();  // warm caches before parallel use
  BoundingAnnulus ann_d = bounding_annulus(d);
  rep.j_window = dilation_overlap_window(m, ann, ann_d);

  std::vector<Mat> b_neg_pows;
  for (int j = rep.j_window.lo; j <= rep.j_window.hi; ++j)
    b_neg_pows.push_back(m.B_rat.pow(-j));

  std::vector<Vec> pts;
  std::vector<std::optional<int>> mult;
  detail::run_sampling<int>(
      samples, seed, exec == Exec::Parallel,
      [&](Sampler& s, long) { return s.set_point(d); },
      [&](const Vec& x, long) {
        return dilation_multiplicity(k, b_neg_pows, x);
      },
      pts, mult);
  collect_witnesses(pts, mult, rep, rep.dilation);
  return rep;
}

TilingReport verify_wavelet_set(const FrequencySet& k, const DilationMatrix& m,
                                long samples, std::uint64_t seed, Exec exec) {
  TilingReport t = check_translation_tiling(k, samples, seed, exec);
  TilingReport d = check_dilation_tiling(k, m, samples, seed + 1, exec);
  TilingReport rep;
  rep.translation = t.translation;
  rep.dilation = d.dilation;
  rep.volume_ok = t.volume_ok;
  rep.samples_used = samples;
  rep.j_window = d.j_window;
  rep.k_window_radius = t.k_window_radius;
  rep.witnesses = t.witnesses;
  rep.witnesses.insert(rep.witnesses.end(), d.witnesses.begin(),
                       d.witnesses.end());
  rep.note = t.note.empty() ? d.note : t.note;
  return rep;
}

FrequencySet build_dilation_tile(const DilationMatrix& m) {
  FrequencySet c = FrequencySet::torus_box(m.n);
  FrequencySet c0 = c;
  for (int j = 1; j < m.contraction_exponent; ++j)
    c0 = disjoint_union(c0, dilate(c, m, -j));
  FrequencySet d = difference(c0, dilate(c0, m, -1));
  return pruned(d);
}

}  // namespace lw
