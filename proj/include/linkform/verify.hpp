#pragma once

// Seeded property suites comparing the closed-form predictions against
// independent oracles. Trials run in parallel; reports are assembled in trial
// order, so a fixed RunConfig gives byte-identical output.

#include "linkform/io.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace linkform {

struct RunConfig {
    std::uint64_t seed = 20240611;
    std::size_t trials = 0;  // 0: suite default
    SearchBounds bounds;
    std::uint64_t oracle_bound = 1u << 12;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct SuiteReport {
    std::string suite;
    bool passed = false;
    std::size_t trials = 0;
    std::size_t passes = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;
    std::optional<std::string> counterexample;  // first failure in trial order
    Json details = Json::object();
    std::string summary;
};

Json to_json(const SuiteReport& r);

const std::vector<std::string>& suite_names();
std::size_t default_trials(const std::string& suite);

// Throws DomainError for an unknown suite.
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);

using Rng = std::mt19937_64;

// Deterministic stream for trial i of a suite.
Rng trial_rng(std::uint64_t seed, const std::string& suite, std::size_t i);

}  // namespace linkform
