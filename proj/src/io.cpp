#include "infconv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace infconv::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <typename T>
std::vector<T> read_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) parse_error(std::string("missing array '") + key + "'");
    try {
        return j.at(key).get<std::vector<T>>();
    } catch (const json::exception& e) {
        parse_error(std::string("bad entries in '") + key + "': " + e.what());
    }
}

json encode_witness(const std::vector<Index>& w) {
    if (w.empty()) return nullptr;
    if (w.size() == 1) return w.front();
    return w;
}

}  // namespace

std::string format_number(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json encode_value(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double decode_value(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    parse_error("expected a number, \"inf\" or \"-inf\", got " + j.dump());
}

json to_json(const Grid& grid) {
    json j;
    j["dim"] = grid.dim();
    json origin = json::array(), spacing = json::array(), counts = json::array();
    for (int a = 0; a < grid.dim(); ++a) {
        origin.push_back(grid.origin(a));
        spacing.push_back(grid.spacing(a));
        counts.push_back(grid.count(a));
    }
    j["origin"] = origin;
    j["spacing"] = spacing;
    j["counts"] = counts;
    return j;
}

Grid grid_from_json(const json& j) {
    if (!j.is_object()) parse_error("grid must be a JSON object");
    auto origin = read_array<double>(j, "origin");
    auto spacing = read_array<double>(j, "spacing");
    auto counts = read_array<Index>(j, "counts");
    if (j.contains("dim")) {
        if (!j.at("dim").is_number_integer()) parse_error("'dim' must be an integer");
        if (j.at("dim").get<std::size_t>() != origin.size()) parse_error("'dim' does not match 'origin'");
    }
    try {
        return Grid(std::move(origin), std::move(spacing), std::move(counts));
    } catch (const Error& e) {
        parse_error(std::string("invalid grid: ") + e.what());
    }
}

json to_json(const GridFunction& f) {
    json j = to_json(f.grid());
    json values = json::array();
    for (double v : f.values()) values.push_back(encode_value(v));
    j["values"] = std::move(values);
    return j;
}

GridFunction grid_function_from_json(const json& j) {
    Grid grid = grid_from_json(j);
    if (!j.contains("values") || !j.at("values").is_array()) parse_error("missing array 'values'");
    std::vector<double> values;
    values.reserve(j.at("values").size());
    bool neg_inf = false;
    for (const auto& v : j.at("values")) {
        values.push_back(decode_value(v));
        neg_inf = neg_inf || values.back() == -kInf;
    }
    try {
        return GridFunction(std::move(grid), std::move(values), neg_inf);
    } catch (const Error& e) {
        parse_error(std::string("invalid grid function: ") + e.what());
    }
}

json to_json(const CheckReport& r) {
    return json{{"name", r.name},
                {"passed", r.passed},
                {"worst_violation", encode_value(r.worst_violation)},
                {"witness", encode_witness(r.witness)},
                {"detail", r.detail}};
}

json to_json(const SampleSet& s) {
    json points = json::array();
    for (const auto& p : s.points()) points.push_back(std::vector<double>(p.begin(), p.begin() + s.dim()));
    return json{{"k", s.k()},
                {"norm", std::string(to_string(s.norm()))},
                {"points", points},
                {"values", s.values()}};
}

SampleSet sample_set_from_json(const json& j) {
    if (!j.is_object()) parse_error("sample set must be a JSON object");
    if (!j.contains("k") || !j.at("k").is_number()) parse_error("missing number 'k'");
    if (!j.contains("points") || !j.at("points").is_array()) parse_error("missing array 'points'");
    const auto norm = parse_norm(j.value("norm", std::string("l2")));
    const auto values = read_array<double>(j, "values");
    std::vector<Point> points;
    int dim = 0;
    for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.empty() || p.size() > kMaxDim) parse_error("sample points must be arrays of 1..3 numbers");
        if (dim == 0) dim = static_cast<int>(p.size());
        if (static_cast<int>(p.size()) != dim) parse_error("sample points differ in dimension");
        Point q{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) {
            if (!p[a].is_number()) parse_error("sample coordinates must be numbers");
            q[a] = p[a].get<double>();
        }
        points.push_back(q);
    }
    if (dim == 0) parse_error("sample set has no points");
    try {
        return SampleSet(dim, std::move(points), values, norm, j.at("k").get<double>());
    } catch (const Error& e) {
        parse_error(std::string("invalid sample set: ") + e.what());
    }
}

json to_json(const repro::Example16Report& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"m", row.m},
                        {"n", row.n},
                        {"raw_constraint", row.raw_constraint},
                        {"normalized_constraint", row.normalized_constraint},
                        {"sup_norm", row.sup_norm},
                        {"expected_sup_norm", static_cast<double>(row.m) / (row.m - 1)},
                        {"discrete_minimum", row.discrete_minimum},
                        {"bisection_minimum", row.bisection_minimum},
                        {"passed", row.passed}});
    }
    return json{{"repro", "example16"}, {"passed", r.passed}, {"rows", rows}, {"failures", r.failures}};
}

json to_json(const repro::WeierstrassReport& r) {
    json values = json::array();
    for (std::size_t i = 0; i < r.value_at_sequence.size(); ++i)
        values.push_back({{"k0", i + 1}, {"value", r.value_at_sequence[i]}, {"bound", r.bound[i]}});
    return json{{"repro", "weierstrass"},
                {"passed", r.passed},
                {"sequence_values", values},
                {"argmin", r.argmin},
                {"nearest_to_limit", r.nearest_to_limit},
                {"min_value", r.min_value},
                {"tail_bound", r.tail_bound},
                {"failures", r.failures}};
}

json to_json(const repro::NormAttainmentReport& r) {
    json minima = json::array();
    for (double m : r.envelope_minima) minima.push_back(encode_value(m));
    return json{{"repro", "norm-attain"},
                {"passed", r.passed},
                {"coeffs", r.coeffs},
                {"radius", r.radius},
                {"norm", std::string(to_string(r.norm))},
                {"dual_norm", r.dual_norm},
                {"attained", encode_value(r.attained)},
                {"expected", encode_value(r.expected)},
                {"attaining", r.attaining},
                {"envelope_minima", minima},
                {"argmin_matches", r.argmin_matches},
                {"boundary_adjacent", r.boundary_adjacent},
                {"failures", r.failures}};
}

json to_json(const repro::Remark26Report& r) {
    return json{{"repro", "remark26"},
                {"passed", r.passed},
                {"k", r.k},
                {"envelope_all_neg_inf", r.envelope_all_neg_inf},
                {"infimum_check", to_json(r.infimum)},
                {"minimizer_check", to_json(r.minimizers)},
                {"minimizer_check_failed_as_expected", !r.minimizers.passed},
                {"finite_floor", r.finite_floor},
                {"finite_variant_check", to_json(r.finite_variant)},
                {"failures", r.failures}};
}

std::string to_csv(const GridFunction& f) {
    const Grid& grid = f.grid();
    std::ostringstream os;
    for (int a = 0; a < grid.dim(); ++a) os << 'x' << (a + 1) << ',';
    os << "value\n";
    for (Index i = 0; i < grid.size(); ++i) {
        const Point p = grid.point(i);
        for (int a = 0; a < grid.dim(); ++a) os << format_number(p[a]) << ',';
        os << format_number(f[i]) << '\n';
    }
    return os.str();
}

std::string argmin_csv(const EnvelopeResult& result) {
    const Grid& grid = result.envelope.grid();
    const bool on_grid = result.witness_domain == EnvelopeResult::WitnessDomain::Grid;
    std::ostringstream os;
    for (int a = 0; a < grid.dim(); ++a) os << 'x' << (a + 1) << ',';
    os << "argmin";
    if (on_grid)
        for (int a = 0; a < grid.dim(); ++a) os << ",y" << (a + 1);
    os << '\n';
    for (Index i = 0; i < grid.size(); ++i) {
        const Point p = grid.point(i);
        for (int a = 0; a < grid.dim(); ++a) os << format_number(p[a]) << ',';
        const auto w = result.witness(i);
        if (!w) {
            os << "none";
            if (on_grid)
                for (int a = 0; a < grid.dim(); ++a) os << ',';
        } else {
            os << *w;
            if (on_grid) {
                const Point q = grid.point(*w);
                for (int a = 0; a < grid.dim(); ++a) os << ',' << format_number(q[a]);
            }
        }
        os << '\n';
    }
    return os.str();
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        parse_error(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace infconv::io
