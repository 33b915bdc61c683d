// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Self-check batteries behind `stationary-gate verify quick|full`: invariants
// of the transfer-matrix, Sagnac, EIT and fidelity layers plus cross-checks
// against the closed forms. `quick` runs in well under a minute on one core;
// `full` adds the discrete-model comparison and the N = 10⁴ gate evaluations.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgate/settings.hpp"

namespace sgate {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured value against its tolerance
    double seconds = 0.0;
};

// `level` is "quick" or "full" (anything else throws ErrorKind::Config).
// A check that throws is reported as failed with the error text.
std::vector<CheckResult> run_verify(const std::string& level, const NumericSettings& settings = {},
                                    int threads = 1);

// Fixed-width table, one line per check, followed by a summary line.
void print_verify_table(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace sgate
