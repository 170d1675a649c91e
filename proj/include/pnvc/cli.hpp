#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pnvc {

enum class Command { Analyze, Bounds, Cover, Bounded, Mc, Gen, Propcheck };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& s);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInconclusive = 2, kExitPropertyFailure = 3 };

struct RunConfig {
    Command command = Command::Analyze;
    std::string net_path;
    std::string net_text;  // inline net (text or JSON); wins over net_path
    std::string target;   // "p1:1,p2:1"
    std::string formula;
    std::string method = "both";
    std::optional<std::uint64_t> max_len;  // cover: defaults to the closed bound l(k')
    std::uint64_t bounded_max_len = 10'000;
    std::size_t state_cap = 1'000'000;
    std::size_t node_cap = 100'000;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    std::uint64_t c_prime = 2;
    std::uint64_t d = 2;
    bool json = false;
    bool approximate = false;

    // bounds
    std::optional<std::uint64_t> i, j, m, W, k_prime, R, U;

    // mc
    std::size_t max_depth = 6;
    std::size_t mc_state_cap = 20'000;
    std::uint64_t fallback_depth = 10'000;

    // gen
    std::size_t gen_places = 4;
    std::size_t gen_transitions = 5;
    std::uint32_t gen_max_weight = 2;
    std::int64_t gen_max_initial = 2;
    std::optional<std::size_t> gen_target_vc;

    // propcheck
    std::vector<std::string> suites;
    bool corrupt_transfer = false;
};

// Keys mirror the long flag names with '-' replaced by '_'.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
// PNVC_SEED overrides the seed when set.
void apply_env(RunConfig& cfg);

struct Report {
    nlohmann::json body;
    int exit_code = kExitOk;
    std::optional<std::string> text;  // plain rendering when not key: value lines
};

// Runs a command without printing; throws Error on bad input.
Report report(const RunConfig& cfg);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace pnvc
