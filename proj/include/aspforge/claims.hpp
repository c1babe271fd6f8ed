#ifndef ASPFORGE_CLAIMS_HPP
#define ASPFORGE_CLAIMS_HPP

#include "aspforge/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aspforge::claims {

struct ClaimResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteOptions {
    std::vector<corpus::InstanceParams> instances = {
        {{"a1"}, 1, std::nullopt},
        {{"a1", "a2"}, 1, std::nullopt},
        {{"a1"}, 2, std::nullopt},
        {{"a1", "a2"}, 2, std::nullopt},
    };
    int cap = 20;          // candidate-atom cap for the oracles
    uint64_t seed = 20240; // drives random-context spot checks
};

// Runs the planning-module rewriting claims on every configured instance,
// the composed Plan-choice/Plan-disj correspondence, and the Water-domain
// translation correspondence checks.
std::vector<ClaimResult> run_claim_suite(const SuiteOptions& options = {});

bool all_passed(const std::vector<ClaimResult>& results);

} // namespace aspforge::claims

#endif
