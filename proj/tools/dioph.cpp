// Command-line front end: verify / corollary / pell / search.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "dioph/verify.hpp"

namespace {

long env_precision() {
    const char* v = std::getenv("DIOPH_PRECISION");
    if (!v) return 0;
    long p = std::strtol(v, nullptr, 10);
    return p > 0 ? p : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pellian verification toolkit for extensions of Diophantine triples {2, b, c}"};
    app.require_subcommand(1);

    dioph::RunConfig cfg;
    cfg.precision = env_precision();

    std::string k_min = "2", k_max = "2";
    std::string d_max = "1000000000";
    std::vector<int> nus{1, 2, 3};
    long precision_opt = 0;

    auto* verify = app.add_subcommand("verify", "run the extension verification pipeline per k");
    verify->add_option("--k-min", k_min, "first k of the range");
    verify->add_option("--k-max", k_max, "last k of the range");
    verify->add_option("--nu", nus, "nu values to cover (subset of 1 2 3)");
    verify->add_option("--d-max", d_max, "extension search ceiling in the oracle regime");
    verify->add_option("--precision", precision_opt, "working precision in decimal digits");
    verify->add_option("--format", cfg.format, "text, json or csv");
    verify->add_option("--jobs", cfg.jobs, "worker threads over independent k");

    auto* corollary = app.add_subcommand("corollary", "check the prime-case regularity corollary");
    corollary->add_option("--k-min", k_min, "first k of the range");
    corollary->add_option("--k-max", k_max, "last k of the range");
    corollary->add_option("--d-max", d_max, "oracle search ceiling");
    corollary->add_option("--precision", precision_opt, "working precision in decimal digits");
    corollary->add_option("--format", cfg.format, "text or json");
    corollary->add_option("--jobs", cfg.jobs, "worker threads");

    std::string pell_d = "6", pell_n = "-5", pell_smax = "100";
    auto* pell = app.add_subcommand("pell", "solve t^2 - D s^2 = N");
    pell->add_option("--d", pell_d, "coefficient D (positive non-square)")->required();
    pell->add_option("--n", pell_n, "right-hand side N (nonzero)")->required();
    pell->add_option("--s-max", pell_smax, "enumerate solutions with s up to here");
    pell->add_option("--format", cfg.format, "text or json");

    std::string triple_arg = "2,4,12";
    auto* search = app.add_subcommand("search", "list quadruple extensions of a triple");
    search->add_option("--triple", triple_arg, "comma-separated a,b,c")->required();
    search->add_option("--d-max", d_max, "extension search ceiling");
    search->add_option("--format", cfg.format, "text or json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (precision_opt > 0) cfg.precision = precision_opt;
        cfg.k_min = dioph::Integer(k_min);
        cfg.k_max = dioph::Integer(k_max);
        cfg.d_max = dioph::Integer(d_max);
        cfg.nus = nus;

        if (verify->parsed()) return dioph::run_verify(cfg, std::cout);
        if (corollary->parsed()) return dioph::run_corollary(cfg, std::cout);
        if (pell->parsed()) {
            return dioph::run_pell(dioph::Integer(pell_d), dioph::Integer(pell_n),
                                   dioph::Integer(pell_smax), cfg.format, std::cout);
        }
        if (search->parsed()) {
            std::vector<dioph::Integer> t;
            std::string cur;
            for (char ch : triple_arg + ",") {
                if (ch == ',') {
                    if (!cur.empty()) t.emplace_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            if (t.size() != 3) throw std::domain_error("--triple expects a,b,c");
            return dioph::run_search(t[0], t[1], t[2], cfg.d_max, cfg.format, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
