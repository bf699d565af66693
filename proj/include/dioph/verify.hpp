// Pipeline orchestration: per-k verification of the extension theorem over
// the c-family, the prime-case corollary sweep, and the library backends of
// the CLI subcommands.

#pragma once

#include <iosfwd>
#include <vector>

#include "dioph/bounds.hpp"
#include "dioph/report.hpp"

namespace dioph {

struct RunConfig {
    Integer k_min = 2;
    Integer k_max = 2;
    std::vector<int> nus = {1, 2, 3};
    Integer d_max = Integer("1000000000");  // oracle search ceiling
    Integer c_cap = Integer(100000);        // corollary oracle: third elements up to here
    long precision = 0;                     // decimal digits; 0 = derived default
    std::string format = "text";            // text | json | csv
    int jobs = 1;

    void validate() const;
};

// All branch reports for one k, in canonical (nu, sign, lambda) order.
std::vector<BranchReport> verify_k(const Integer& k, const RunConfig& cfg);

struct CorollaryReport {
    Integer k;
    Integer half_b_minus_one;
    bool prime = false;
    bool prime_deterministic = true;
    bool applicable = false;  // prime holds
    bool single_class = false;
    bool family_complete = false;
    bool branches_all_regular = false;
    bool oracle_ran = false;
    bool oracle_all_regular = true;
    std::string verdict;  // regular-confirmed | unresolved | not-applicable
};

CorollaryReport corollary_k(const Integer& k, const RunConfig& cfg);
std::string corollary_to_json_line(const CorollaryReport& cr);
std::string corollary_to_text(const CorollaryReport& cr);

// Drivers behind the CLI subcommands; each returns a process exit code
// (0 only when nothing was unresolved or irregular).
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_corollary(const RunConfig& cfg, std::ostream& out);
int run_pell(const Integer& D, const Integer& N, const Integer& s_max, const std::string& format,
             std::ostream& out);
int run_search(const Integer& a, const Integer& b, const Integer& c, const Integer& d_max,
               const std::string& format, std::ostream& out);

}  // namespace dioph
