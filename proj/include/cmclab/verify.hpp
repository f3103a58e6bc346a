#pragma once

#include "cmclab/io.hpp"

namespace cmclab {

// Verification suite: every headline identity and count, each as a
// named record with its computed value, target and tolerance.  The
// criteria are grouped; group k corresponds to one line of the
// acceptance run.

std::vector<CheckRecord> check_delaunay(const RunConfig& cfg);             // 1
std::vector<CheckRecord> check_cousin_geometry(const RunConfig& cfg);      // 2
std::vector<CheckRecord> check_necksize_distance(const RunConfig& cfg);    // 3
std::vector<CheckRecord> check_identities(const RunConfig& cfg);           // 4
std::vector<CheckRecord> check_mode_structure(const RunConfig& cfg);       // 5
std::vector<CheckRecord> check_dimension_tables(const RunConfig& cfg);     // 6
std::vector<CheckRecord> check_rate_agreement(const RunConfig& cfg);       // 7
std::vector<CheckRecord> check_boundary_classification(const RunConfig& cfg);  // 8
std::vector<CheckRecord> check_determinism(const RunConfig& cfg);          // 9

// The full suite (pinned sweeps).
VerifyReport run_verification(const RunConfig& cfg);

// Subset exercising one necksize (the CLI `verify --necksize` path).
VerifyReport run_verification_single(const RunConfig& cfg, double necksize);

}  // namespace cmclab
