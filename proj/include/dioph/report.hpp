// Machine-readable run reports: one record per verification branch, with
// JSON Lines, CSV and plain-text renderings. JSON emission is canonical
// (sorted keys, integers as decimal strings), so emit -> parse -> emit is the
// identity.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/integer.hpp"

namespace dioph {

struct SolutionRecord {
    Integer m, l, x, d;
    std::string tag;  // d0 | regular | degenerate | irregular
};

struct BranchReport {
    Integer k;
    int nu = 1;
    int sign = 1;
    std::optional<int> lambda;  // absent for oracle-mode branches
    std::string kind;           // analytic | oracle | alias | degenerate
    std::string verdict;        // all-regular | unresolved | irregular | not-applicable
    Integer m_bound = 0;
    int rounds = 0;
    std::vector<SolutionRecord> solutions;
    std::vector<std::string> trail;
};

std::string to_json_line(const BranchReport& br);
BranchReport branch_from_json_line(const std::string& line);

std::string csv_header();
std::string to_csv_row(const BranchReport& br);
std::string to_text(const BranchReport& br);

}  // namespace dioph
