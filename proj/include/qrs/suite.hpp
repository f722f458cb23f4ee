/**
 * @file suite.hpp
 * @brief The verification suite: the expected-results matrix (identity x size
 *        x regime), the engine-health checks (oracle agreement, confluence,
 *        classical specialization), and the runner shared by the CLI and the
 *        acceptance binary.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qrs/qlinalg.hpp"
#include "qrs/report.hpp"

namespace qrs {

struct SuiteRow {
    int criterion = 0;          // acceptance-criterion group the row belongs to
    std::string check;          // identity name or engine-health check name
    int size = 0;               // n or 2n; 0 when not applicable
    Regime regime = Regime::generic;
    bool expected_holds = true;
    bool skippable_2n6 = false; // skipped by --skip 2n6
};

enum class RowStatus { pass, fail, skipped };

struct SuiteRowResult {
    SuiteRow row;
    Report report;              // zeroed when the row was skipped
    RowStatus status = RowStatus::skipped;
};

struct SuiteConfig {
    double budget_seconds = 3600.0;
    bool skip_2n6 = false;
    std::uint64_t seed = 20240001;
    bool corrupt_engine = false;  // test-only hook, forwarded to the engine
    bool no_timing = false;       // zero elapsed_ms in reports
    std::string only;             // when nonempty, run only rows with this check name
    unsigned jobs = 1;            // worker threads; 0 = hardware concurrency
};

struct SuiteResult {
    std::vector<SuiteRowResult> rows;
    bool all_passed = true;       // every executed row matched its expectation
    bool budget_exceeded = false;
};

/// The embedded acceptance matrix, in fixed print order.
const std::vector<SuiteRow>& acceptance_matrix();

/// Runs one row (identity or engine-health check) and returns its Report.
Report run_check(const SuiteRow& row, const SuiteConfig& cfg);

/// Runs the whole matrix under the config.
SuiteResult run_suite(const SuiteConfig& cfg);

} // namespace qrs
