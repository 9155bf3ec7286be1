#include "latticewave/json_io.hpp"

#include <fstream>

#include "latticewave/errors.hpp"

namespace lw {

Json rat_to_json(const Rat& r) { return format_rational(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) throw ParseError("expected a rational \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

Json vec_to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(rat_to_json(x));
  return j;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a vector array");
  Vec v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

Json int_mat_to_json(const IntMat& a) {
  Json j = Json::array();
  for (const auto& row : a) j.push_back(row);
  return j;
}

IntMat int_mat_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix (array of rows)");
  IntMat a;
  for (const auto& row : j) a.push_back(row.get<IntVec>());
  return a;
}

namespace {

Json piece_to_json(const Polytope& p) {
  Json hs = Json::array();
  for (const auto& h : p.halfspaces())
    hs.push_back({{"a", vec_to_json(h.a)}, {"b", rat_to_json(h.b)}});
  return Json{{"halfspaces", hs}};
}

Polytope piece_from_json(const Json& j, int n) {
  std::vector<Halfspace> hs;
  for (const auto& e : j.at("halfspaces"))
    hs.push_back({vec_from_json(e.at("a")), rat_from_json(e.at("b"))});
  return Polytope(n, hs);
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

}  // namespace

Json set_to_json(const FrequencySet& s) {
  Json pieces = Json::array();
  for (const auto& p : s.pieces) pieces.push_back(piece_to_json(p));
  return Json{{"n", s.n}, {"pieces", pieces}};
}

FrequencySet set_from_json(const Json& j) {
  FrequencySet s;
  s.n = j.at("n").get<int>();
  for (const auto& e : j.at("pieces")) s.pieces.push_back(piece_from_json(e, s.n));
  return s;
}

Json wavelet_to_json(const PiecewiseWavelet& w) {
  Json j = set_to_json(w.support);
  j["matrix"] = int_mat_to_json(w.matrix.A);
  Json values = Json::array();
  for (const auto& v : w.values)
    values.push_back({{"m", rat_to_json(v.m)}, {"e", v.e}});
  j["values"] = values;
  return j;
}

PiecewiseWavelet wavelet_from_json(const Json& j) {
  PiecewiseWavelet w;
  w.support = set_from_json(j);
  w.matrix = validate_dilation(int_mat_from_json(j.at("matrix")));
  for (const auto& e : j.at("values"))
    w.values.push_back({rat_from_json(e.at("m")), e.at("e").get<int>()});
  if (w.values.size() != w.support.pieces.size())
    throw ParseError("wavelet: one value per support piece required");
  return w;
}

Json seed_to_json(const SeedSpec& s) {
  return Json{{"r", s.r},
              {"k_r", s.k_r},
              {"p", s.p},
              {"y", vec_to_json(s.y)},
              {"epsilon", rat_to_json(s.epsilon)},
              {"I", set_to_json(s.I)}};
}

SeedSpec seed_from_json(const Json& j) {
  SeedSpec s;
  s.r = j.at("r").get<int>();
  s.k_r = j.at("k_r").get<IntVec>();
  s.p = j.at("p").get<int>();
  s.y = vec_from_json(j.at("y"));
  s.epsilon = rat_from_json(j.at("epsilon"));
  s.I = set_from_json(j.at("I"));
  return s;
}

Json witness_to_json(const Witness& w) {
  return Json{{"point", vec_to_json(w.point)},
              {"multiplicity", w.multiplicity},
              {"sample_index", w.sample_index}};
}

namespace {

Json witnesses_to_json(const std::vector<Witness>& ws) {
  Json j = Json::array();
  for (const auto& w : ws) j.push_back(witness_to_json(w));
  return j;
}

}  // namespace

Json tiling_report_to_json(const TilingReport& r) {
  return Json{{"translation", verdict_str(r.translation)},
              {"dilation", verdict_str(r.dilation)},
              {"volume_ok", r.volume_ok},
              {"witnesses", witnesses_to_json(r.witnesses)},
              {"samples_used", r.samples_used},
              {"note", r.note}};
}

Json check_report_to_json(const CheckReport& r) {
  return Json{{"verdict", verdict_str(r.verdict)},
              {"witnesses", witnesses_to_json(r.witnesses)},
              {"computed", rat_to_json(r.computed)},
              {"samples_used", r.samples_used},
              {"note", r.note}};
}

Json wavelet_report_to_json(const WaveletReport& r) {
  return Json{{"norm", check_report_to_json(r.norm)},
              {"dilation_sum", check_report_to_json(r.dilation_sum)},
              {"tq_orthogonality", check_report_to_json(r.tq_orthogonality)},
              {"periodization", check_report_to_json(r.periodization)},
              {"ok", r.ok()}};
}

Json label_to_json(const ClassLabel& label,
                   const std::vector<Conflict>& conflicts) {
  Json cs = Json::array();
  for (const auto& c : conflicts) cs.push_back({{"k", c.k}, {"ord", c.ord}});
  return Json{{"class", label.str()}, {"conflicts", cs}};
}

Json construction_report_to_json(const ConstructionReport& r) {
  return Json{{"seed", seed_to_json(r.seed)},
              {"W", set_to_json(r.W)},
              {"J", set_to_json(r.J)},
              {"residual_translation", rat_to_json(r.residual_translation)},
              {"residual_dilation", rat_to_json(r.residual_dilation)},
              {"iterations", r.iterations},
              {"piece_count", r.piece_count},
              {"exact", r.exact}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace lw
