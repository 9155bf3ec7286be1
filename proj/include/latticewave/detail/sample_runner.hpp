#pragma once

#include <optional>

#include "latticewave/errors.hpp"
#include "latticewave/sampling.hpp"

namespace lw::detail {

inline constexpr int kMaxRedraws = 64;

// Draws `samples` points, evaluates them (in parallel when requested),
// and redraws any sample whose evaluation touched a boundary (nullopt).
// Results are indexed by sample, so the parallel path and the serial
// reference produce identical output.
template <typename Result, typename DrawFn, typename EvalFn>
void run_sampling(long samples, std::uint64_t seed, bool parallel,
                  DrawFn draw, EvalFn eval, std::vector<Vec>& points,
                  std::vector<std::optional<Result>>& results) {
  Sampler rng(seed);
  points.resize(samples);
  for (long i = 0; i < samples; ++i) points[i] = draw(rng, i);
  results.assign(samples, std::nullopt);

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < samples; ++i) results[i] = eval(points[i], i);
  } else {
    for (long i = 0; i < samples; ++i) results[i] = eval(points[i], i);
  }

  for (long i = 0; i < samples; ++i) {
    if (results[i]) continue;
    Sampler redraw(seed ^
                   (0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i)));
    for (int t = 0; t < kMaxRedraws && !results[i]; ++t) {
      points[i] = draw(redraw, i);
      results[i] = eval(points[i], i);
    }
    if (!results[i])
      throw SearchExhausted("persistent boundary hits while sampling");
  }
}

}  // namespace lw::detail
