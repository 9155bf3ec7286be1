#include "latticewave/classify.hpp"

#include <algorithm>

#include "latticewave/errors.hpp"

namespace lw {

std::vector<Conflict> support_conflicts(const FrequencySet& e,
                                        const DilationMatrix& m) {
  const int n = e.n;
  if (e.is_empty()) return {};

  std::vector<std::pair<Vec, Vec>> boxes;
  for (const auto& p : e.pieces) boxes.push_back(p.bbox());

  Vec lo = boxes[0].first, hi = boxes[0].second;
  for (const auto& [plo, phi] : boxes)
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], plo[i]);
      hi[i] = std::max(hi[i], phi[i]);
    }

  std::vector<std::pair<std::int64_t, std::int64_t>> rng(n);
  for (int i = 0; i < n; ++i)
    rng[i] = {rat_ceil(lo[i] - hi[i]).convert_to<std::int64_t>(),
              rat_floor(hi[i] - lo[i]).convert_to<std::int64_t>()};

  auto bbox_overlap = [&](std::size_t i, std::size_t j, const IntVec& k) {
    for (int d = 0; d < n; ++d) {
      if (boxes[i].second[d] + k[d] <= boxes[j].first[d]) return false;
      if (boxes[j].second[d] <= boxes[i].first[d] + k[d]) return false;
    }
    return true;
  };

  std::vector<Conflict> out;
  IntVec k(n);
  auto consider = [&](const IntVec& kk) {
    // Only test lexicographically positive k; conflicts come in +-pairs.
    bool positive = false;
    for (int d = 0; d < n; ++d) {
      if (kk[d] > 0) {
        positive = true;
        break;
      }
      if (kk[d] < 0) return;
    }
    if (!positive) return;
    bool candidate = false;
    for (std::size_t i = 0; i < e.pieces.size() && !candidate; ++i)
      for (std::size_t j = 0; j < e.pieces.size() && !candidate; ++j)
        if (bbox_overlap(i, j, kk)) candidate = true;
    if (!candidate) return;
    if (intersects(translate(e, kk), e) == Overlap::PositiveMeasureOverlap) {
      int ord = ord_b(m, kk);
      out.push_back({kk, ord});
      IntVec neg(n);
      for (int d = 0; d < n; ++d) neg[d] = -kk[d];
      out.push_back({neg, ord});
    }
  };
  auto rec = [&](auto&& self, int d) -> void {
    if (d == n) {
      consider(k);
      return;
    }
    for (std::int64_t v = rng[d].first; v <= rng[d].second; ++v) {
      k[d] = v;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Conflict& a, const Conflict& b) {
    return a.k < b.k;
  });
  return out;
}

OverlapProfile overlap_profile(const PiecewiseWavelet& w) {
  OverlapProfile out;
  out.support = w.support;
  out.conflicts = support_conflicts(w.support, w.matrix);
  Rat radius = 0;
  for (const auto& p : w.support.pieces)
    radius = std::max(radius, p.max_linf());
  out.k_window_radius = rat_ceil(2 * radius).convert_to<std::int64_t>();
  return out;
}

ClassLabel classify(const PiecewiseWavelet& w, const WaveletReport& verified) {
  if (!verified.ok())
    throw NotAWavelet("classification refused: verify_all failed");
  auto conflicts = support_conflicts(w.support, w.matrix);
  if (conflicts.empty()) return {false, 0};
  int r = conflicts[0].ord;
  for (const auto& c : conflicts) r = std::min(r, c.ord);
  return {true, r};
}

ClassLabel classify(const PiecewiseWavelet& w, long samples,
                    std::uint64_t seed, Exec exec) {
  return classify(w, verify_all(w, samples, seed, exec));
}

bool is_in_Lr(const PiecewiseWavelet& w, int r,
              const WaveletReport& verified) {
  if (!verified.ok())
    throw NotAWavelet("L_r membership refused: verify_all failed");
  for (const auto& c : support_conflicts(w.support, w.matrix))
    if (c.ord < r) return false;
  return true;
}

}  // namespace lw
