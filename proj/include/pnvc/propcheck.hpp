#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pnvc {

struct PropcheckCaps {
    std::size_t state_cap = 1'000'000;
    std::size_t node_cap = 100'000;
    std::size_t basis_cap = 1'000'000;
};

struct Counterexample {
    std::size_t trial = 0;
    std::uint64_t trial_seed = 0;
    std::string net_text;
    nlohmann::json inputs;
    std::string message;
};

struct SuiteReport {
    std::string name;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    // Passing trials that were vacuous (nothing to check) or inconclusive.
    std::size_t vacuous = 0;
    std::optional<Counterexample> first_failure;
    nlohmann::json metrics = nlohmann::json::object();
};

struct PropcheckConfig {
    std::vector<std::string> suites;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    PropcheckCaps caps;
    // Self-test: swap each transferred transition for one of another type.
    bool corrupt_transfer = false;
};

struct PropcheckReport {
    std::vector<SuiteReport> suites;

    bool passed() const;
    nlohmann::json to_json() const;
};

const std::vector<std::string>& propcheck_suite_names();

// Throws InvalidArgument on an unknown suite name.
PropcheckReport propcheck(const PropcheckConfig& cfg);

struct TrialOutcome {
    enum class Status { Pass, Vacuous, Fail } status = Status::Pass;
    std::string message;
    std::string net_text;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json metrics = nlohmann::json::object();
};

// Re-runs one trial from its seed; used to replay counterexamples.
TrialOutcome run_trial(const std::string& suite, std::uint64_t trial_seed, const PropcheckCaps& caps = {},
                       bool corrupt_transfer = false);

std::uint64_t trial_seed(std::uint64_t seed, const std::string& suite, std::size_t trial);

}  // namespace pnvc
