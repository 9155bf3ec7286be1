// latticewave: construct, verify and classify wavelet sets and
// piecewise-constant wavelets for integer dilation matrices. All geometry
// is exact rational arithmetic; sampling is seeded and deterministic.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "latticewave/catalog.hpp"
#include "latticewave/errors.hpp"
#include "latticewave/json_io.hpp"
#include "latticewave/svg.hpp"

namespace {

using namespace lw;

DilationMatrix resolve_matrix(const std::string& spec) {
  if (auto a = catalog_matrix(spec)) return validate_dilation(*a);
  Json j = read_json_file(spec);
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  return validate_dilation(int_mat_from_json(j));
}

FrequencySet resolve_set(const std::string& spec) {
  if (auto s = catalog_set(spec)) return *s;
  return set_from_json(read_json_file(spec));
}

PiecewiseWavelet resolve_wavelet(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("wavelet")) j = j["wavelet"];
  return wavelet_from_json(j);
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out, j);
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact wavelet-set construction, verification and "
               "classification for integer dilation matrices"};
  app.require_subcommand(1);

  std::string matrix, set_spec, wavelet_path, out;
  long samples = 10000;
  std::uint64_t seed = 1;
  bool serial = false;
  int r = 0, p = 1, max_iter = 500;
  std::string tolerance = "1/1000000";

  auto add_common = [&](CLI::App* cmd, bool sampling) {
    cmd->add_option("--out", out, "Write the JSON/SVG output to this file");
    if (sampling) {
      cmd->add_option("--samples", samples, "Sample count (default 10000)");
      cmd->add_option("--seed", seed, "RNG seed (default 1)");
      cmd->add_flag("--serial", serial, "Disable the parallel kernels");
    }
  };

  auto* digits_cmd = app.add_subcommand("digits", "Digit set of a matrix");
  digits_cmd->add_option("--matrix", matrix, "Catalog name or JSON file")
      ->required();
  add_common(digits_cmd, false);

  auto* vset = app.add_subcommand(
      "verify-set", "Check the two wavelet-set tiling conditions");
  vset->add_option("--matrix", matrix)->required();
  vset->add_option("--set", set_spec, "Catalog name or JSON file")->required();
  add_common(vset, true);

  auto* vwav = app.add_subcommand(
      "verify-wavelet", "Check the wavelet characterization conditions");
  vwav->add_option("--wavelet", wavelet_path, "Wavelet JSON file")->required();
  add_common(vwav, true);

  auto* cons = app.add_subcommand(
      "construct", "Build the perturbed wavelet psi_r end to end");
  cons->add_option("--matrix", matrix)->required();
  cons->add_option("--r", r, "Target invariance order (default 0)");
  cons->add_option("--p", p, "Dilation offset of the seed pair (default 1)");
  cons->add_option("--tolerance", tolerance,
                   "Residual target as a rational (default 1/1000000)");
  cons->add_option("--max-iter", max_iter, "Iteration cap (default 500)");
  add_common(cons, true);

  auto* clas = app.add_subcommand(
      "classify", "Assign the translation-invariance class M_r / M_inf");
  clas->add_option("--wavelet", wavelet_path,
                   "Wavelet JSON (or a construct report)")
      ->required();
  add_common(clas, true);

  auto* rend = app.add_subcommand("render", "SVG figure of a planar set");
  rend->add_option("--set", set_spec, "Catalog name or JSON file");
  rend->add_option("--wavelet", wavelet_path, "Wavelet JSON file");
  add_common(rend, false);

  std::string fixtures_dir = ".";
  auto* fixt = app.add_subcommand(
      "fixtures", "Re-verify and write the catalog fixture sets");
  fixt->add_option("--out-dir", fixtures_dir, "Target directory");
  fixt->add_option("--samples", samples, "Sample count (default 10000)");
  fixt->add_option("--seed", seed, "RNG seed (default 1)");

  CLI11_PARSE(app, argc, argv);
  Exec exec = serial ? Exec::Serial : Exec::Parallel;

  try {
    if (*digits_cmd) {
      DilationMatrix m = resolve_matrix(matrix);
      DigitSet d = digit_set(m);
      Json out_digits = Json::array();
      for (const auto& mu : d.digits) out_digits.push_back(mu);
      emit(Json{{"digits", out_digits}, {"a", m.a}}, out);
      return 0;
    }
    if (*vset) {
      DilationMatrix m = resolve_matrix(matrix);
      TilingReport rep =
          verify_wavelet_set(resolve_set(set_spec), m, samples, seed, exec);
      emit(tiling_report_to_json(rep), out);
      return rep.ok() ? 0 : 1;
    }
    if (*vwav) {
      PiecewiseWavelet w = resolve_wavelet(wavelet_path);
      WaveletReport rep = verify_all(w, samples, seed, exec);
      emit(wavelet_report_to_json(rep), out);
      return rep.ok() ? 0 : 1;
    }
    if (*cons) {
      DilationMatrix m = resolve_matrix(matrix);
      if (p != 1)
        throw Error("construct: only the p = 1 psi_r pipeline is wired to "
                    "assembly; use the library for general p");
      PipelineResult res =
          run_pipeline(m, r, seed, parse_rational(tolerance), max_iter);
      Json j = construction_report_to_json(res.report);
      j["wavelet"] = wavelet_to_json(res.psi);
      emit(j, out);
      return 0;
    }
    if (*clas) {
      PiecewiseWavelet w = resolve_wavelet(wavelet_path);
      WaveletReport rep = verify_all(w, samples, seed, exec);
      if (!rep.ok()) {
        emit(Json{{"error", "not a wavelet"},
                  {"report", wavelet_report_to_json(rep)}},
             out);
        return 1;
      }
      ClassLabel label = classify(w, rep);
      emit(label_to_json(label, overlap_profile(w).conflicts), out);
      return 0;
    }
    if (*rend) {
      if (set_spec.empty() == wavelet_path.empty())
        throw Error("render: exactly one of --set / --wavelet required");
      std::string svg = set_spec.empty()
                            ? render_svg(resolve_wavelet(wavelet_path))
                            : render_svg(resolve_set(set_spec));
      emit_text(svg, out);
      return 0;
    }
    if (*fixt) {
      for (const auto& name : catalog_set_names()) {
        FrequencySet s = *catalog_set(name);
        TilingReport rep = verify_wavelet_set(
            s, validate_dilation(*catalog_matrix("dyadic1d")), samples, seed);
        if (!rep.ok()) {
          std::cerr << "fixture " << name << " failed verification\n";
          return 1;
        }
        write_json_file(fixtures_dir + "/" + name + ".json", set_to_json(s));
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
