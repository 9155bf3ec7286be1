#include "latticewave/sampling.hpp"

#include "latticewave/errors.hpp"

namespace lw {

Rat Sampler::unit(int dither) {
  const std::int64_t den = (1LL << 31) + dither;
  std::uint64_t r = eng_() % static_cast<std::uint64_t>(den);
  return Rat(static_cast<std::int64_t>(r), den);
}

Vec Sampler::box_point(const Vec& lo, const Vec& hi, int dither) {
  Vec x(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i)
    x[i] = lo[i] + (hi[i] - lo[i]) * unit(dither);
  return x;
}

Vec Sampler::set_point(const FrequencySet& s) {
  if (s.is_empty()) throw SearchExhausted("sampling an empty set");
  Rat total = volume(s);
  if (total <= 0) throw SearchExhausted("sampling a null set");
  Rat pick = total * unit();
  std::size_t idx = 0;
  Rat acc = 0;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    acc += s.pieces[i].volume();
    if (pick < acc) {
      idx = i;
      break;
    }
  }
  const Polytope& p = s.pieces[idx];
  auto [lo, hi] = p.bbox();
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Vec x = box_point(lo, hi, attempt % 7);
    if (p.member(x) == Region::Inside) return x;
  }
  throw SearchExhausted("rejection sampling failed (degenerate piece?)");
}

}  // namespace lw
