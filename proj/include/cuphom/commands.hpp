#pragma once

// Subcommand implementations behind the CLI: parse inputs, run computations,
// emit reports.  Exit codes: 0 ok, 2 parse failure, 3 semantic failure,
// 4 relation failure.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace cuphom {

struct RunConfig {
    std::string ring = "both";  // f2 | q | both
    std::optional<long long> truncation;
    std::optional<int> pages;
    std::string format = "json"; // json | text
    std::uint64_t seed = 1;
    bool check_only = false;
    std::optional<std::size_t> count; // properties suite size override
};

int run_cup(const std::string& input_path, const RunConfig& cfg, std::ostream& out,
            std::ostream& err);
int run_surgery_knot(const std::string& input_path, long long framing, const RunConfig& cfg,
                     std::ostream& out, std::ostream& err);
int run_hypercube(const std::string& input_path, const RunConfig& cfg, std::ostream& out,
                  std::ostream& err);
int run_reduce(const std::string& input_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err);
int run_properties(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace cuphom
