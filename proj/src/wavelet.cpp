#include "latticewave/wavelet.hpp"

#include <algorithm>

#include "latticewave/classify.hpp"
#include "latticewave/detail/sample_runner.hpp"
#include "latticewave/errors.hpp"

namespace lw {

std::optional<ExactValue> value_at(const PiecewiseWavelet& w, const Vec& x) {
  for (std::size_t i = 0; i < w.support.pieces.size(); ++i) {
    Region r = w.support.pieces[i].member(x);
    if (r == Region::Inside) return w.values[i];
    if (r == Region::Boundary) return std::nullopt;
  }
  return ExactValue{Rat(0), 0};
}

PiecewiseWavelet indicator_wavelet(const FrequencySet& k,
                                   const DilationMatrix& m) {
  PiecewiseWavelet w;
  w.support = k;
  w.values.assign(k.pieces.size(), ExactValue{Rat(1), 0});
  w.matrix = m;
  return w;
}

CheckReport check_norm(const PiecewiseWavelet& w) {
  CheckReport rep;
  Rat total = 0;
  for (std::size_t i = 0; i < w.support.pieces.size(); ++i)
    total += w.support.pieces[i].volume() * w.values[i].square();
  rep.computed = total;
  rep.verdict = (total == 1) ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail)
    rep.note = "squared norm = " + format_rational(total) + ", expected 1";
  return rep;
}

namespace {

constexpr int kMaxWitnesses = 16;

BoundingAnnulus support_annulus_or_throw(const PiecewiseWavelet& w) {
  BoundingAnnulus ann = bounding_annulus(w.support);
  if (ann.rho_min <= 0)
    throw OriginInClosure("support must be bounded away from the origin");
  return ann;
}

// First exponent beyond which B^j x certainly leaves the support annulus.
int sum_window_hi(const DilationMatrix& m, const Rat& x_norm,
                  const Rat& rho_max) {
  Rat bound = m.residue_norm_bound * rho_max;
  int q = 0;
  while (bound >= x_norm) {
    bound *= m.contraction_norm;
    ++q;
  }
  return q * m.contraction_exponent;
}

void finish(CheckReport& rep, const std::vector<Vec>& pts,
            const std::vector<std::optional<bool>>& ok) {
  rep.verdict = Verdict::Pass;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (*ok[i]) continue;
    rep.verdict = Verdict::Fail;
    if (static_cast<int>(rep.witnesses.size()) < kMaxWitnesses)
      rep.witnesses.push_back({pts[i], 0, static_cast<long>(i)});
  }
}

}  // namespace

CheckReport check_dilation_sum(const PiecewiseWavelet& w, long samples,
                               std::uint64_t seed, Exec exec) {
  CheckReport rep;
  rep.samples_used = samples;
  BoundingAnnulus ann = support_annulus_or_throw(w);

  FrequencySet d = build_dilation_tile(w.matrix);
  for (auto& p : d.pieces) p.volume();
  JWindow win = dilation_overlap_window(w.matrix, ann, bounding_annulus(d));

  // xi in D; the term at exponent j is nonzero only when B^j xi lands in
  // the support, i.e. -j lies in the overlap window of supp against D.
  std::vector<Mat> pows;
  for (int j = -win.hi; j <= -win.lo; ++j) pows.push_back(w.matrix.B_rat.pow(j));

  std::vector<Vec> pts;
  std::vector<std::optional<bool>> ok;
  detail::run_sampling<bool>(
      samples, seed, exec == Exec::Parallel,
      [&](Sampler& s, long) { return s.set_point(d); },
      [&](const Vec& xi, long) -> std::optional<bool> {
        Rat sum = 0;
        for (const auto& bj : pows) {
          auto v = value_at(w, bj * xi);
          if (!v) return std::nullopt;
          sum += v->square();
        }
        return sum == 1;
      },
      pts, ok);
  finish(rep, pts, ok);
  return rep;
}

CheckReport check_periodization(const PiecewiseWavelet& w, long samples,
                                std::uint64_t seed, Exec exec) {
  CheckReport rep;
  rep.samples_used = samples;

  Vec lo(w.support.n, Rat(0)), hi(w.support.n, Rat(0));
  bool first = true;
  for (const auto& p : w.support.pieces) {
    auto [plo, phi] = p.bbox();
    for (int i = 0; i < w.support.n; ++i) {
      if (first || plo[i] < lo[i]) lo[i] = plo[i];
      if (first || phi[i] > hi[i]) hi[i] = phi[i];
    }
    first = false;
  }

  const int n = w.support.n;
  Vec box_lo(n, Rat(-1, 2)), box_hi(n, Rat(1, 2));
  std::vector<Vec> pts;
  std::vector<std::optional<bool>> ok;
  detail::run_sampling<bool>(
      samples, seed, exec == Exec::Parallel,
      [&](Sampler& s, long) { return s.box_point(box_lo, box_hi); },
      [&](const Vec& x, long) -> std::optional<bool> {
        Rat sum = 0;
        std::vector<std::pair<std::int64_t, std::int64_t>> rng(n);
        for (int i = 0; i < n; ++i)
          rng[i] = {rat_ceil(lo[i] - x[i]).convert_to<std::int64_t>(),
                    rat_floor(hi[i] - x[i]).convert_to<std::int64_t>()};
        bool boundary = false;
        IntVec kv(n);
        auto rec = [&](auto&& self, int dd) -> void {
          if (boundary) return;
          if (dd == n) {
            Vec y = x;
            for (int i = 0; i < n; ++i) y[i] += kv[i];
            auto v = value_at(w, y);
            if (!v) {
              boundary = true;
              return;
            }
            sum += v->square();
            return;
          }
          for (std::int64_t t = rng[dd].first;
               t <= rng[dd].second && !boundary; ++t) {
            kv[dd] = t;
            self(self, dd + 1);
          }
        };
        rec(rec, 0);
        if (boundary) return std::nullopt;
        return sum == 1;
      },
      pts, ok);
  finish(rep, pts, ok);
  return rep;
}

CheckReport check_tq_orthogonality(const PiecewiseWavelet& w, long samples,
                                   std::uint64_t seed, Exec exec) {
  CheckReport rep;
  rep.samples_used = samples;
  BoundingAnnulus ann = support_annulus_or_throw(w);
  const DilationMatrix& m = w.matrix;

  // A q outside B Z^n contributes a nonzero term only when some B^j q is a
  // translation conflict of the support, so the candidate set is the set of
  // conflicts pulled back to order zero.
  auto conflicts = support_conflicts(w.support, m);
  std::vector<IntVec> qs;
  int max_ord = 0;
  for (const auto& c : conflicts) {
    max_ord = std::max(max_ord, c.ord);
    Vec q = m.B_rat.pow(-c.ord) * to_rat_vec(c.k);
    IntVec qi = to_int_vec(q);
    if (std::find(qs.begin(), qs.end(), qi) == qs.end()) qs.push_back(qi);
  }
  rep.note = std::to_string(qs.size()) + " candidate q vectors from " +
             std::to_string(conflicts.size()) + " support conflicts";

  // Stratify samples across dilation depth: xi = B^(-js) eta with eta in
  // the support, so the exponents where cancellation happens are exercised.
  const int strata = max_ord + 2;
  std::vector<Mat> down;
  Rat expand_norm = 1;
  for (int js = 0; js < strata; ++js) {
    down.push_back(m.B_rat.pow(-js));
    expand_norm = std::max(expand_norm, m.B_rat.pow(js).max_row_l1());
  }

  // ||xi|| >= rho_min / ||B^js||, so one window covers every stratum.
  int j_hi = sum_window_hi(m, ann.rho_min / expand_norm, ann.rho_max);
  std::vector<Mat> up;
  for (int j = 0; j <= j_hi; ++j) up.push_back(m.B_rat.pow(j));

  for (auto& p : w.support.pieces) p.volume();

  std::vector<Vec> pts;
  std::vector<std::optional<bool>> ok;
  detail::run_sampling<bool>(
      samples, seed, exec == Exec::Parallel,
      [&](Sampler& s, long i) {
        return down[i % strata] * s.set_point(w.support);
      },
      [&](const Vec& xi, long) -> std::optional<bool> {
        for (const auto& q : qs) {
          Rat bucket_rat = 0, bucket_irr = 0;
          Vec xiq = vec_add(xi, to_rat_vec(q));
          for (int j = 0; j <= j_hi; ++j) {
            const Mat& bj = up[j];
            auto a = value_at(w, bj * xi);
            if (!a) return std::nullopt;
            if (a->is_zero()) continue;
            auto b = value_at(w, bj * xiq);
            if (!b) return std::nullopt;
            if (b->is_zero()) continue;
            ExactValue prod = a->times(*b);
            (prod.e == 0 ? bucket_rat : bucket_irr) += prod.m;
          }
          if (bucket_rat != 0 || bucket_irr != 0) return false;
        }
        return true;
      },
      pts, ok);
  finish(rep, pts, ok);
  return rep;
}

WaveletReport verify_all(const PiecewiseWavelet& w, long samples,
                         std::uint64_t seed, Exec exec) {
  WaveletReport rep;
  rep.norm = check_norm(w);
  rep.dilation_sum = check_dilation_sum(w, samples, seed + 1, exec);
  rep.tq_orthogonality = check_tq_orthogonality(w, samples, seed + 2, exec);
  rep.periodization = check_periodization(w, samples, seed + 3, exec);
  return rep;
}

}  // namespace lw
