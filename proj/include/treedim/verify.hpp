#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treedim/derivation.hpp"
#include "treedim/family.hpp"

namespace treedim {

struct VerifyOptions {
  Int depth = 64;                       // cap for the walk-based checks
  Int oracle_cap = 1000000;             // explicit-language size limit
  Int node_budget = 1000000;            // exhaustive-walk node limit
  unsigned samples_per_length = 32;     // random descents beyond the budget
  std::uint64_t seed = 0x5eedf00dULL;
  std::optional<GrowthPolicy> policy;   // growth conformance when known
  std::optional<std::vector<Rat>> qs;   // density pinning when known
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// The full invariant suite over one family: stored-parameter identities,
/// growth policy, oracle cross-checks at every level under the cap,
/// extension property, successor dichotomy, the martingale identity, density
/// bound certificates, monotone bounds when applicable, and a small gale
/// consistency pass.
VerifyReport run_verification(const TreeFamily& fam, const VerifyOptions& opt);

}  // namespace treedim
