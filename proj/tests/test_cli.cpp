#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "infconv/io.hpp"
#include "support.hpp"

using namespace infconv;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("infconv_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "infconv-cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("envelope subcommand") {
    Scratch s;
    const Grid g = Grid::line(-2.0, 2.0, 1.0);
    io::write_json(s / "point.json", io::to_json(indicator(PointSet::single(g, 2))));

    auto r = run({"envelope", "--input", s / "point.json", "--output", s / "dist.json", "--kernel", "conical", "--k",
                  "1", "--norm", "l2", "--argmin", s / "argmin.csv"});
    REQUIRE(r.code == cli::kExitOk);
    const auto dist = io::grid_function_from_json(io::read_json(s / "dist.json"));
    CHECK(std::vector<double>(dist.values().begin(), dist.values().end()) == std::vector<double>{2, 1, 0, 1, 2});
    CHECK(slurp(s / "argmin.csv") == "x1,argmin,y1\n-2,2,0\n-1,2,0\n0,2,0\n1,2,0\n2,2,0\n");

    r = run({"envelope", "--input", s / "point.json", "--output", s / "dist_oracle.json", "--k", "1", "--oracle"});
    CHECK(r.code == cli::kExitOk);
    CHECK(slurp(s / "dist.json") == slurp(s / "dist_oracle.json"));

    io::write_json(s / "const.json", io::to_json(GridFunction::constant(Grid::box(2, 0.0, 1.0, 0.25), 1.5)));
    r = run({"envelope", "--input", s / "const.json", "--output", s / "const_env.json", "--kernel", "quadratic",
             "--k", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(slurp(s / "const.json") == slurp(s / "const_env.json"));

    r = run({"envelope", "--input", s / "point.json", "--sequence", "3", "--output", s / "seq"});
    CHECK(r.code == cli::kExitOk);
    CHECK(fs::exists(s / "seq/f_0003.json"));
}

TEST_CASE("envelope exit codes") {
    Scratch s;
    const Grid g = Grid::line(-1.0, 1.0, 0.5);
    io::write_json(s / "neg.json", io::to_json(GridFunction(g, {0.0, -kInf, 1.0, 2.0, 3.0}, true)));
    auto r = run({"envelope", "--input", s / "neg.json"});
    CHECK(r.code == cli::kExitPrecondition);
    r = run({"envelope", "--input", s / "neg.json", "--oracle"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("\"-inf\"") != std::string::npos);

    io::write_text(s / "broken.json", "{\"origin\": [0], \"spacing\": [1]");
    CHECK(run({"envelope", "--input", s / "broken.json"}).code == cli::kExitParse);
    io::write_text(s / "short.json", R"({"origin":[0],"spacing":[1],"counts":[3],"values":[1,2]})");
    CHECK(run({"envelope", "--input", s / "short.json"}).code == cli::kExitParse);
    io::write_text(s / "nan.json", R"({"origin":[0],"spacing":[1],"counts":[2],"values":[1,"nan"]})");
    CHECK(run({"envelope", "--input", s / "nan.json"}).code == cli::kExitParse);
    CHECK(run({"envelope", "--input", s / "missing.json"}).code == cli::kExitParse);
    CHECK(run({"envelope", "--input", s / "neg.json", "--k", "0"}).code == cli::kExitParse);
    CHECK(run({"envelope", "--input", s / "neg.json", "--norm", "l7"}).code == cli::kExitParse);
    CHECK(run({"envelope"}).code == cli::kExitParse);
    CHECK(run({}).code == cli::kExitParse);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("check subcommand") {
    Scratch s;
    std::mt19937_64 rng(4);
    const Grid g = Grid::box(2, -1.0, 1.0, 0.25);
    const auto f = testsupport::random_function(rng, g, testsupport::Values::Integer);
    io::write_json(s / "f.json", io::to_json(f));
    io::write_json(s / "env.json", io::to_json(pasch_hausdorff(f, 2.0).envelope));

    auto r = run({"check", "--input", s / "f.json", "--envelope", s / "env.json", "--checks", "prop25", "--output",
                  s / "report.json"});
    CHECK(r.code == cli::kExitOk);
    const auto report = io::read_json(s / "report.json");
    REQUIRE(report.size() == 2);
    CHECK(report[0]["passed"] == true);
    CHECK(report[1]["passed"] == true);

    // Same inputs, same bytes.
    run({"check", "--input", s / "f.json", "--envelope", s / "env.json", "--checks", "prop25", "--output",
         s / "report2.json"});
    CHECK(slurp(s / "report.json") == slurp(s / "report2.json"));

    const auto twice = GridFunction::tabulate(g, [](const Point& p) { return 2.0 * std::hypot(p[0], p[1]); });
    io::write_json(s / "twice.json", io::to_json(twice));
    r = run({"check", "--input", s / "twice.json", "--checks", "lipschitz", "--k", "1"});
    CHECK(r.code == cli::kExitCheckFailed);
    const auto lip = io::json::parse(r.out);
    CHECK(lip[0]["passed"] == false);
    CHECK(lip[0]["witness"].size() == 2);

    CHECK(run({"envelope", "--input", s / "f.json", "--sequence", "5", "--output", s / "seq"}).code == 0);
    r = run({"check", "--input", s / "f.json", "--checks", "monotone", "--sequence", s / "seq"});
    CHECK(r.code == cli::kExitOk);

    r = run({"check", "--input", s / "f.json", "--checks", "prop25,convex,coercivity", "--k", "2"});
    CHECK(r.code == cli::kExitCheckFailed);
    CHECK(io::json::parse(r.out).size() == 4);

    CHECK(run({"check", "--input", s / "f.json", "--checks", "bogus"}).code == cli::kExitParse);
    CHECK(run({"check", "--input", s / "f.json", "--checks", "monotone"}).code == cli::kExitParse);
    CHECK(run({"check", "--input", s / "f.json", "--checks", "lipschitz"}).code == cli::kExitPrecondition);
}

TEST_CASE("extend subcommand") {
    Scratch s;
    io::write_text(s / "samples.json", R"({"k": 1, "norm": "l1", "points": [[0, 0], [1, 1]], "values": [0, 1.5]})");
    io::write_json(s / "grid.json", io::to_json(Grid::box(2, 0.0, 1.0, 0.5)));
    auto r = run({"extend", "--input", s / "samples.json", "--grid", s / "grid.json", "--argmin", s / "w.csv"});
    REQUIRE(r.code == cli::kExitOk);
    const auto ext = io::grid_function_from_json(io::json::parse(r.out));
    CHECK(ext[0] == 0.0);
    CHECK(ext[8] == 1.5);
    CHECK(ext[4] == 1.0);
    CHECK(slurp(s / "w.csv").rfind("x1,x2,argmin\n0,0,0\n", 0) == 0);

    io::write_text(s / "bad.json", R"({"k": 1, "points": [[0, 0], [1, 0]], "values": [0, 5]})");
    CHECK(run({"extend", "--input", s / "bad.json", "--grid", s / "grid.json"}).code == cli::kExitPrecondition);
}

TEST_CASE("repro subcommand") {
    Scratch s;
    auto r = run({"repro", "example16", "--m", "4,10,100", "--output", s / "e16"});
    CHECK(r.code == cli::kExitOk);
    const auto rep = io::read_json(s / "e16/example16.json");
    CHECK(rep["rows"][0]["discrete_minimum"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(rep["rows"][1]["discrete_minimum"].get<double>() == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
    CHECK(rep["rows"][2]["discrete_minimum"].get<double>() == doctest::Approx(100.0 / 99.0).epsilon(1e-14));
    CHECK(fs::exists(s / "e16/example16.csv"));

    r = run({"repro", "remark26"});
    CHECK(r.code == cli::kExitOk);
    const auto rem = io::json::parse(r.out);
    CHECK(rem["envelope_all_neg_inf"] == true);
    CHECK(rem["minimizer_check"]["passed"] == false);

    r = run({"repro", "norm-attain", "--coeffs", "3,4", "--spacing", "0.2"});
    CHECK(r.code == cli::kExitOk);

    r = run({"repro", "weierstrass", "--spacing", "0.05"});
    CHECK(r.code == cli::kExitOk);

    CHECK(run({"repro", "nonsense"}).code == cli::kExitUnknownRepro);
    CHECK(run({"repro", "example16", "--m", "5"}).code == cli::kExitPrecondition);
}

TEST_CASE("bench subcommand") {
    auto r = run({"bench", "--sizes", "1024,2048,8192", "--kernel", "conical"});
    CHECK(r.code == cli::kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "size,fast_seconds,oracle_seconds,oracle_match");
    std::getline(lines, line);
    CHECK(line.rfind("1024,", 0) == 0);
    CHECK(line.substr(line.size() - 4) == ",yes");
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line.rfind("8192,", 0) == 0);
    CHECK(line.back() == ',');

    CHECK(run({"bench", "--sizes", "1024", "--dim", "2"}).code == cli::kExitParse);
    CHECK(run({"bench", "--sizes", "1024", "--dim", "2", "--kernel", "quadratic"}).code == cli::kExitOk);
}
