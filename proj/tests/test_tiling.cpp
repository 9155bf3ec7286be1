#include <doctest.h>

#include "latticewave/catalog.hpp"
#include "latticewave/tiling.hpp"

using namespace lw;

namespace {

DilationMatrix matrix(const char* name) {
  return validate_dilation(*catalog_matrix(name));
}

FrequencySet shifted_shannon() {
  FrequencySet s = *catalog_set("shannon-set");
  s.pieces[1] = s.pieces[1].translated(Vec{Rat(1, 8)});
  return s;
}

}  // namespace

TEST_CASE("fixtures pass both tiling checks") {
  DilationMatrix m = matrix("dyadic1d");
  for (const auto& name : {"shannon-set", "journe-set"}) {
    TilingReport rep = verify_wavelet_set(*catalog_set(name), m, 2000, 7);
    CHECK(rep.translation == Verdict::Pass);
    CHECK(rep.dilation == Verdict::Pass);
    CHECK(rep.volume_ok);
    CHECK(rep.witnesses.empty());
  }
}

TEST_CASE("perturbed fixture fails with witnesses") {
  TilingReport rep =
      verify_wavelet_set(shifted_shannon(), matrix("dyadic1d"), 2000, 7);
  CHECK_FALSE(rep.ok());
  CHECK(!rep.witnesses.empty());
  // The witness really is multiply/never covered: multiplicity != 1.
  for (const auto& w : rep.witnesses) CHECK(w.multiplicity != 1);
}

TEST_CASE("volume identity is checked exactly") {
  // Correct combinatorics but wrong measure: half the Shannon set.
  FrequencySet s{1, {Polytope::box(Vec{Rat(1, 2)}, Vec{Rat(1)})}};
  TilingReport rep = check_translation_tiling(s, 500, 3);
  CHECK_FALSE(rep.volume_ok);
  CHECK(rep.translation == Verdict::Fail);
}

TEST_CASE("dilation tile construction: exact volume, passes its own check") {
  for (const auto& name : catalog_matrix_names()) {
    DilationMatrix m = matrix(name.c_str());
    FrequencySet d = build_dilation_tile(m);
    // vol(D) = (1 - 1/a) vol(C0)
    Rat c0 = volume(d) / (1 - Rat(1, m.a));
    CHECK(volume(d) == (1 - Rat(1, m.a)) * c0);
    CHECK(volume(d) > 0);
    TilingReport rep = check_dilation_tiling(d, m, 1000, 11);
    CHECK(rep.dilation == Verdict::Pass);
  }
  // Dyadic: C0 = [-1/2,1/2], D = +-[1/4,1/2].
  FrequencySet d = build_dilation_tile(matrix("dyadic1d"));
  CHECK(volume(d) == Rat(1, 2));
  CHECK(member(d, Vec{Rat(3, 8)}) == Region::Inside);
  CHECK(member(d, Vec{Rat(1, 8)}) == Region::Outside);
  // Quincunx: square minus diamond, volume 1/2.
  CHECK(volume(build_dilation_tile(matrix("quincunx"))) == Rat(1, 2));
}

TEST_CASE("inconclusive when the origin is in the closure") {
  FrequencySet s{1, {Polytope::box(Vec{Rat(0)}, Vec{Rat(1)})}};
  TilingReport rep = check_dilation_tiling(s, matrix("dyadic1d"), 100, 1);
  CHECK(rep.dilation == Verdict::Inconclusive);
}

TEST_CASE("serial and parallel kernels agree exactly") {
  DilationMatrix m = matrix("dyadic1d");
  for (const auto& set_name : {"shannon-set", "journe-set"}) {
    FrequencySet s = *catalog_set(set_name);
    TilingReport a = verify_wavelet_set(s, m, 1500, 13, Exec::Serial);
    TilingReport b = verify_wavelet_set(s, m, 1500, 13, Exec::Parallel);
    CHECK(a.translation == b.translation);
    CHECK(a.dilation == b.dilation);
    CHECK(a.witnesses.size() == b.witnesses.size());
    CHECK(a.samples_used == b.samples_used);
  }
  TilingReport a =
      verify_wavelet_set(shifted_shannon(), m, 1500, 13, Exec::Serial);
  TilingReport b =
      verify_wavelet_set(shifted_shannon(), m, 1500, 13, Exec::Parallel);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].point == b.witnesses[i].point);
    CHECK(a.witnesses[i].multiplicity == b.witnesses[i].multiplicity);
  }
}

TEST_CASE("determinism: same seed, same report") {
  DilationMatrix m = matrix("dyadic1d");
  TilingReport a = verify_wavelet_set(shifted_shannon(), m, 800, 99);
  TilingReport b = verify_wavelet_set(shifted_shannon(), m, 800, 99);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i)
    CHECK(a.witnesses[i].point == b.witnesses[i].point);
}
