#pragma once

// The oracle battery behind the `verify` subcommand: closed-form identities
// of the traveling wave, the expansion profiles, the per-mode interface
// solutions and the multiplier symbols, each checked over seeded random
// draws. Prints one pass/fail row per check.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace frontlab {

struct VerifyCheck {
    std::string name;
    bool passed;
    double worst;      // largest relative residual seen
    double tolerance;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const;
};

VerifyReport run_verification_battery(std::uint64_t seed);

/// Renders the report as an aligned pass/fail table.
void print_verify_report(const VerifyReport& report, std::ostream& os);

}  // namespace frontlab
