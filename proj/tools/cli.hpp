#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infconv/grid.hpp"

namespace infconv::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitUnknownRepro = 4;

struct CliConfig {
    std::string subcommand;

    std::string input;
    std::string output;
    std::string envelope_path;   // check: precomputed envelope
    std::string sequence_path;   // check: directory of f_1..f_n
    std::string grid_path;       // extend: target grid
    std::string argmin_path;     // envelope/extend: witness CSV

    std::string kernel = "conical";
    double k = 1.0;
    NormKind norm = NormKind::L2;
    bool oracle = false;
    int sequence = 0;            // envelope: write f_1..f_n instead of one envelope

    std::vector<std::string> checks;

    std::string repro;
    std::vector<int> m_list{4, 10, 100, 1000};
    std::vector<double> coeffs{0.6, -0.8};
    double radius = 1.0;
    double spacing = 0.0;        // 0 picks the repro's default
    int n_max = 5;

    std::vector<std::size_t> sizes;
    int dim = 1;

    std::uint64_t seed = 42;
};

int run_envelope(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_check(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_extend(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_repro(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_bench(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; library errors become exit statuses.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace infconv::cli
