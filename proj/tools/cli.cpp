#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "infconv/analysis.hpp"
#include "infconv/envelope.hpp"
#include "infconv/extension.hpp"
#include "infconv/io.hpp"
#include "infconv/repro.hpp"

namespace infconv::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Kernel make_kernel(const CliConfig& c) {
    if (c.kernel == "conical") return Kernel::conical(c.k, c.norm);
    if (c.kernel == "quadratic") return Kernel::quadratic(c.k);
    throw UsageError("unknown kernel '" + c.kernel + "' (conical|quadratic)");
}

GridFunction load_function(const std::string& path) {
    if (path.empty()) throw UsageError("--input is required");
    return io::grid_function_from_json(io::read_json(path));
}

// JSON to the output file, or to `out` when no file is given.
void emit_json(const CliConfig& c, const json& j, std::ostream& out) {
    if (c.output.empty())
        out << j.dump(2) << '\n';
    else
        io::write_json(c.output, j);
}

std::string sequence_file(int n) {
    std::ostringstream os;
    os << "f_";
    os.width(4);
    os.fill('0');
    os << n << ".json";
    return os.str();
}

std::vector<GridFunction> load_sequence(const std::string& dir) {
    if (dir.empty()) throw UsageError("the monotone check needs --sequence <dir>");
    if (!fs::is_directory(dir)) throw Error(ErrorCode::ParseError, dir + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorCode::ParseError, dir + " holds no .json files");
    std::vector<GridFunction> seq;
    for (const auto& p : files) seq.push_back(io::grid_function_from_json(io::read_json(p)));
    return seq;
}

EnvelopeResult without_witness(GridFunction env) {
    std::vector<Index> argmin(env.size(), kNoWitness);
    return EnvelopeResult{std::move(env), std::move(argmin)};
}

}  // namespace

int run_envelope(const CliConfig& c, std::ostream& out, std::ostream&) {
    const GridFunction f = load_function(c.input);
    if (c.sequence > 0) {
        if (c.kernel != "conical") throw UsageError("--sequence needs the conical kernel");
        if (c.output.empty()) throw UsageError("--sequence needs --output <dir>");
        fs::create_directories(c.output);
        for (int n = 1; n <= c.sequence; ++n) {
            const auto r = c.oracle ? inf_conv_bruteforce(f, Kernel::conical(n, c.norm))
                                    : pasch_hausdorff(f, n, c.norm);
            io::write_json(fs::path(c.output) / sequence_file(n), io::to_json(r.envelope));
        }
        return kExitOk;
    }
    const Kernel kernel = make_kernel(c);
    const auto result = c.oracle ? inf_conv_bruteforce(f, kernel) : envelope(f, kernel);
    emit_json(c, io::to_json(result.envelope), out);
    if (!c.argmin_path.empty()) io::write_text(c.argmin_path, io::argmin_csv(result));
    return kExitOk;
}

int run_check(const CliConfig& c, std::ostream& out, std::ostream&) {
    if (c.checks.empty()) throw UsageError("--checks is required");
    const GridFunction f = load_function(c.input);

    std::optional<EnvelopeResult> env;
    auto need_envelope = [&]() -> const EnvelopeResult& {
        if (!env) {
            if (!c.envelope_path.empty())
                env = without_witness(io::grid_function_from_json(io::read_json(c.envelope_path)));
            else
                env = envelope(f, make_kernel(c));
        }
        return *env;
    };

    std::vector<CheckReport> reports;
    for (const auto& name : c.checks) {
        if (name == "prop25") {
            reports.push_back(check_infimum_preservation(f, need_envelope()));
            reports.push_back(check_minimizer_preservation(f, need_envelope()));
        } else if (name == "infimum") {
            reports.push_back(check_infimum_preservation(f, need_envelope()));
        } else if (name == "minimizers") {
            reports.push_back(check_minimizer_preservation(f, need_envelope()));
        } else if (name == "monotone") {
            const auto seq = load_sequence(c.sequence_path);
            reports.push_back(check_monotone_in_n(std::span<const GridFunction>(seq), f));
        } else if (name == "lipschitz") {
            reports.push_back(check_lipschitz(f, c.k, c.norm, c.seed));
        } else if (name == "convex") {
            reports.push_back(check_midpoint_convex(f, c.seed));
        } else if (name == "coercivity") {
            PointSet support(f.grid());
            for (Index x = 0; x < f.size(); ++x)
                if (f[x] != kInf) support.insert(x);
            reports.push_back(check_coercivity_bound(need_envelope(), f, support, c.k, c.norm));
        } else {
            throw UsageError("unknown check '" + name +
                             "' (prop25|infimum|minimizers|monotone|lipschitz|convex|coercivity)");
        }
    }

    json arr = json::array();
    bool all = true;
    for (const auto& r : reports) {
        arr.push_back(io::to_json(r));
        all = all && r.passed;
    }
    emit_json(c, arr, out);
    return all ? kExitOk : kExitCheckFailed;
}

int run_extend(const CliConfig& c, std::ostream& out, std::ostream&) {
    if (c.input.empty()) throw UsageError("--input is required");
    if (c.grid_path.empty()) throw UsageError("--grid is required");
    const SampleSet samples = io::sample_set_from_json(io::read_json(c.input));
    const Grid grid = io::grid_from_json(io::read_json(c.grid_path));
    const auto ext = mcshane_extend(samples, grid);
    emit_json(c, io::to_json(ext.envelope), out);
    if (!c.argmin_path.empty()) io::write_text(c.argmin_path, io::argmin_csv(ext));
    return kExitOk;
}

int run_repro(const CliConfig& c, std::ostream& out, std::ostream& err) {
    json report;
    std::vector<std::pair<std::string, std::string>> csvs;
    bool passed = false;

    if (c.repro == "example16") {
        const auto r = repro::example16_paper_sequence(c.m_list);
        report = io::to_json(r);
        passed = r.passed;
        std::ostringstream os;
        os << "m,n,sup_norm,discrete_minimum,bisection_minimum\n";
        for (const auto& row : r.rows)
            os << row.m << ',' << row.n << ',' << io::format_number(row.sup_norm) << ','
               << io::format_number(row.discrete_minimum) << ','
               << io::format_number(row.bisection_minimum) << '\n';
        csvs.emplace_back("example16.csv", os.str());
        csvs.emplace_back("example16_sequence_norms.csv", io::to_csv(repro::example16_sequence_norms(20)));
    } else if (c.repro == "weierstrass") {
        const double h = c.spacing > 0.0 ? c.spacing : 0.02;
        const Grid grid = Grid::box(2, -1.0, 1.0, h);
        const Point p{0.3, -0.2, 0.0};
        std::vector<Point> seq;
        for (int n = 1; n <= 40; ++n) {
            const double r = 0.5 * std::pow(0.5, n);
            seq.push_back({p[0] + r * std::cos(n), p[1] + r * std::sin(n), 0.0});
        }
        const auto inst = repro::make_weierstrass_instance(seq, 40, PointSet::all(grid), c.norm);
        const auto r = repro::weierstrass_demo(inst, p, 8);
        report = io::to_json(r);
        passed = r.passed;
        csvs.emplace_back("weierstrass.csv", io::to_csv(repro::weierstrass_function(inst)));
    } else if (c.repro == "norm-attain") {
        const int dim = static_cast<int>(c.coeffs.size());
        if (dim < 1 || dim > kMaxDim) throw UsageError("--coeffs needs 1 to 3 entries");
        const double h = c.spacing > 0.0 ? c.spacing : 0.05;
        const Grid grid = Grid::box(dim, -c.radius, c.radius, h);
        const auto r = repro::norm_attainment_demo(c.coeffs, c.radius, grid, c.norm, c.n_max);
        report = io::to_json(r);
        passed = r.passed;
        std::ostringstream os;
        os << "n,min\n";
        for (std::size_t n = 0; n < r.envelope_minima.size(); ++n)
            os << n + 1 << ',' << io::format_number(r.envelope_minima[n]) << '\n';
        csvs.emplace_back("norm_attain_minima.csv", os.str());
        csvs.emplace_back("norm_attain_f.csv",
                          io::to_csv(linear_minus_on_ball(c.coeffs, c.radius, grid, c.norm)));
    } else if (c.repro == "remark26") {
        const double h = c.spacing > 0.0 ? c.spacing : 0.125;
        const Grid grid = Grid::line(-1.0, 1.0, h);
        const auto r = repro::remark26_counterexample(grid, c.k);
        report = io::to_json(r);
        passed = r.passed;
        csvs.emplace_back("remark26_f.csv", io::to_csv(repro::remark26_function(grid)));
    } else {
        err << "unknown repro '" << c.repro << "' (example16|weierstrass|norm-attain|remark26)\n";
        return kExitUnknownRepro;
    }

    if (c.output.empty()) {
        out << report.dump(2) << '\n';
    } else {
        const fs::path dir(c.output);
        io::write_json(dir / (c.repro + ".json"), report);
        for (const auto& [name, text] : csvs) io::write_text(dir / name, text);
    }
    return passed ? kExitOk : kExitCheckFailed;
}

int run_bench(const CliConfig& c, std::ostream& out, std::ostream& err) {
    if (c.dim < 1 || c.dim > 2) throw UsageError("--dim must be 1 or 2");
    const Kernel kernel = make_kernel(c);
    if (c.dim > 1 && kernel.kind == Kernel::Kind::Conical && c.norm != NormKind::L1)
        throw UsageError("multi-dimensional conical benchmarks need --norm l1");

    std::vector<std::size_t> sizes = c.sizes;
    if (sizes.empty()) {
        if (c.dim == 1)
            for (std::size_t n = 1u << 10; n <= (1u << 20); n *= 2) sizes.push_back(n);
        else
            for (std::size_t side = 64; side <= 1024; side *= 2) sizes.push_back(side * side);
    }

    constexpr int kRuns = 5;
    constexpr std::size_t kOracleLimit = 1u << 12;
    // Below this the clock resolution dominates and ratios are not asserted.
    constexpr double kMinTimed = 1e-3;

    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> value(0.0, 1.0);
    auto median_time = [&](auto&& fn) {
        fn();
        std::vector<double> t;
        for (int r = 0; r < kRuns; ++r) {
            const auto start = std::chrono::steady_clock::now();
            fn();
            t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        std::nth_element(t.begin(), t.begin() + kRuns / 2, t.end());
        return t[kRuns / 2];
    };

    std::ostringstream csv;
    csv << "size,fast_seconds,oracle_seconds,oracle_match\n";
    std::vector<double> times;
    for (std::size_t size : sizes) {
        std::size_t side = size;
        if (c.dim == 2) {
            side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(size))));
            if (side * side != size) throw UsageError("2D sizes must be perfect squares");
        }
        if (side < 1) throw UsageError("sizes must be positive");
        std::vector<Index> counts(c.dim, side);
        const Grid grid(std::vector<double>(c.dim, 0.0), std::vector<double>(c.dim, 1.0 / side), counts);
        std::vector<double> vals(grid.size());
        for (auto& v : vals) v = value(rng);
        const GridFunction f(grid, std::move(vals));

        EnvelopeResult fast = envelope(f, kernel);
        const double t_fast = median_time([&] { fast = envelope(f, kernel); });
        times.push_back(t_fast);
        csv << size << ',' << t_fast << ',';
        if (size <= kOracleLimit) {
            EnvelopeResult slow = inf_conv_bruteforce(f, kernel);
            const double t_slow = median_time([&] { slow = inf_conv_bruteforce(f, kernel); });
            const bool match = slow.argmin == fast.argmin &&
                               std::equal(slow.envelope.values().begin(), slow.envelope.values().end(),
                                          fast.envelope.values().begin());
            csv << t_slow << ',' << (match ? "yes" : "no");
        } else {
            csv << ',';
        }
        csv << '\n';
    }

    // Each doubling of the point count may at most triple the time.
    bool ok = true;
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1] || sizes[i] % sizes[i - 1] != 0) continue;
        const std::size_t factor = sizes[i] / sizes[i - 1];
        if ((factor & (factor - 1)) != 0 || times[i - 1] < kMinTimed) continue;
        const double limit = std::pow(3.0, std::log2(static_cast<double>(factor)));
        const double ratio = times[i] / times[i - 1];
        if (!(ratio < limit)) {
            err << "scaling: " << sizes[i - 1] << " -> " << sizes[i] << " took " << ratio
                << "x the time (limit " << limit << ")\n";
            ok = false;
        }
    }

    if (c.output.empty())
        out << csv.str();
    else
        io::write_text(c.output, csv.str());
    return ok ? kExitOk : kExitCheckFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig c;
    std::string norm = "l2";

    CLI::App app{"Inf-convolution envelopes on finite grids"};
    app.name("infconv-cli");
    app.require_subcommand(1, 1);

    auto add_kernel = [&](CLI::App* sub) {
        sub->add_option("--kernel", c.kernel, "conical|quadratic")->capture_default_str();
        sub->add_option("--k", c.k, "kernel parameter, > 0")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--norm", norm, "l1|l2|linf")->capture_default_str();
    };

    auto* env = app.add_subcommand("envelope", "envelope of a grid function JSON file");
    env->add_option("--input", c.input, "grid function JSON")->required();
    env->add_option("--output", c.output, "envelope JSON (stdout if omitted); directory with --sequence");
    env->add_option("--argmin", c.argmin_path, "witness CSV");
    env->add_flag("--oracle", c.oracle, "brute-force evaluation");
    env->add_option("--sequence", c.sequence, "write f_1..f_n (conical) instead")->check(CLI::NonNegativeNumber);
    add_kernel(env);

    auto* chk = app.add_subcommand("check", "property checks, JSON report");
    chk->add_option("--input", c.input, "grid function JSON")->required();
    chk->add_option("--output", c.output, "report JSON (stdout if omitted)");
    chk->add_option("--envelope", c.envelope_path, "envelope JSON; computed from the kernel flags if omitted");
    chk->add_option("--sequence", c.sequence_path, "directory of envelope JSON files, in name order");
    chk->add_option("--checks", c.checks, "prop25,infimum,minimizers,monotone,lipschitz,convex,coercivity")
        ->delimiter(',')
        ->required();
    chk->add_option("--seed", c.seed)->capture_default_str();
    add_kernel(chk);

    auto* ext = app.add_subcommand("extend", "Lipschitz extension of scattered samples");
    ext->add_option("--input", c.input, "sample set JSON")->required();
    ext->add_option("--grid", c.grid_path, "grid JSON")->required();
    ext->add_option("--output", c.output, "extension JSON (stdout if omitted)");
    ext->add_option("--argmin", c.argmin_path, "witness CSV (sample indices)");

    auto* rep = app.add_subcommand("repro", "constructive examples");
    rep->add_option("name", c.repro, "example16|weierstrass|norm-attain|remark26")->required();
    rep->add_option("--output", c.output, "report directory (JSON to stdout if omitted)");
    rep->add_option("--m", c.m_list, "example16 subdivisions")->delimiter(',');
    rep->add_option("--coeffs", c.coeffs, "norm-attain functional")->delimiter(',');
    rep->add_option("--radius", c.radius, "norm-attain ball radius")->check(CLI::PositiveNumber);
    rep->add_option("--spacing", c.spacing, "grid step")->check(CLI::PositiveNumber);
    rep->add_option("--n-max", c.n_max, "norm-attain envelope count")->check(CLI::PositiveNumber);
    rep->add_option("--seed", c.seed)->capture_default_str();
    add_kernel(rep);

    auto* bench = app.add_subcommand("bench", "fast-path timing CSV");
    bench->add_option("--sizes", c.sizes, "point counts")->delimiter(',');
    bench->add_option("--dim", c.dim)->capture_default_str();
    bench->add_option("--output", c.output, "CSV (stdout if omitted)");
    bench->add_option("--seed", c.seed)->capture_default_str();
    add_kernel(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        c.norm = parse_norm(norm);
        c.subcommand = app.get_subcommands().front()->get_name();
        if (c.subcommand == "envelope") return run_envelope(c, out, err);
        if (c.subcommand == "check") return run_check(c, out, err);
        if (c.subcommand == "extend") return run_extend(c, out, err);
        if (c.subcommand == "repro") return run_repro(c, out, err);
        return run_bench(c, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::ParseError ? kExitParse : kExitPrecondition;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }
}

}  // namespace infconv::cli
