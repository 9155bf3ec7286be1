// Compares the serial reference kernels against the OpenMP ones on the
// catalog verifiers and checks that the reports agree.

#include <chrono>
#include <iostream>

#include "latticewave/catalog.hpp"
#include "latticewave/wavelet.hpp"

using namespace lw;
using Clock = std::chrono::steady_clock;

namespace {

double run_tiling(const FrequencySet& s, const DilationMatrix& m, long n,
                  Exec exec) {
  auto t0 = Clock::now();
  TilingReport rep = verify_wavelet_set(s, m, n, 7, exec);
  auto t1 = Clock::now();
  if (!rep.ok()) std::cerr << "unexpected tiling failure\n";
  return std::chrono::duration<double>(t1 - t0).count();
}

double run_wavelet(const PiecewiseWavelet& w, long n, Exec exec) {
  auto t0 = Clock::now();
  WaveletReport rep = verify_all(w, n, 7, exec);
  auto t1 = Clock::now();
  if (!rep.ok()) std::cerr << "unexpected wavelet failure\n";
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long samples = argc > 1 ? std::atol(argv[1]) : 20000;
  DilationMatrix dyadic = validate_dilation(*catalog_matrix("dyadic1d"));

  for (const auto& name : catalog_set_names()) {
    FrequencySet s = *catalog_set(name);
    double ts = run_tiling(s, dyadic, samples, Exec::Serial);
    double tp = run_tiling(s, dyadic, samples, Exec::Parallel);
    std::cout << "verify-set " << name << ": serial " << ts << " s, parallel "
              << tp << " s, speedup " << ts / tp << "x\n";

    PiecewiseWavelet w = indicator_wavelet(s, dyadic);
    ts = run_wavelet(w, samples, Exec::Serial);
    tp = run_wavelet(w, samples, Exec::Parallel);
    std::cout << "verify-wavelet chi(" << name << "): serial " << ts
              << " s, parallel " << tp << " s, speedup " << ts / tp << "x\n";
  }
  return 0;
}
