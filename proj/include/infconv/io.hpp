#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "infconv/analysis.hpp"
#include "infconv/envelope.hpp"
#include "infconv/extension.hpp"
#include "infconv/grid.hpp"
#include "infconv/repro.hpp"

namespace infconv::io {

using json = nlohmann::json;

// Extended reals in JSON: numbers, or the strings "inf" / "-inf".
json encode_value(double v);
double decode_value(const json& j);

// {"dim":d, "origin":[...], "spacing":[...], "counts":[...]}
json to_json(const Grid& grid);
Grid grid_from_json(const json& j);

// Grid fields plus "values":[...]. A -inf entry sets allow_neg_inf.
json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const json& j);

// {"name","passed","worst_violation","witness","detail"}
json to_json(const CheckReport& r);

// {"k":..., "norm":"l1|l2|linf", "points":[[...],...], "values":[...]}
json to_json(const SampleSet& s);
SampleSet sample_set_from_json(const json& j);

json to_json(const repro::Example16Report& r);
json to_json(const repro::WeierstrassReport& r);
json to_json(const repro::NormAttainmentReport& r);
json to_json(const repro::Remark26Report& r);

/// One row per node: x1..xd,value.
std::string to_csv(const GridFunction& f);
/// One row per node: x1..xd,argmin,y1..yd (argmin "none" without a witness).
std::string argmin_csv(const EnvelopeResult& result);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

/// Shortest decimal form that round-trips, "inf" / "-inf" for infinities.
std::string format_number(double v);

}  // namespace infconv::io
