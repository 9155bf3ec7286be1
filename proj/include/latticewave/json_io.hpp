#pragma once

#include <json.hpp>
#include <string>

#include "latticewave/classify.hpp"
#include "latticewave/construct.hpp"

namespace lw {

using Json = nlohmann::json;

// Rationals travel as exact "p/q" strings; every *_to_json / *_from_json
// pair round-trips to an identical value.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json int_mat_to_json(const IntMat& a);
IntMat int_mat_from_json(const Json& j);

Json set_to_json(const FrequencySet& s);
FrequencySet set_from_json(const Json& j);

// Wavelet JSON embeds the dilation matrix (revalidated on load).
Json wavelet_to_json(const PiecewiseWavelet& w);
PiecewiseWavelet wavelet_from_json(const Json& j);

Json seed_to_json(const SeedSpec& s);
SeedSpec seed_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Json tiling_report_to_json(const TilingReport& r);
Json check_report_to_json(const CheckReport& r);
Json wavelet_report_to_json(const WaveletReport& r);
Json label_to_json(const ClassLabel& label,
                   const std::vector<Conflict>& conflicts);
Json construction_report_to_json(const ConstructionReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace lw
