#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dioph/bounds.hpp"

using namespace dioph;

namespace {

FundamentalCase pick_case(const TripleFamily& fam, bool even, int z_sign, int y_sign = 1) {
    for (const auto& fc : lemma_cases(fam)) {
        if (fc.even_parity != even) continue;
        if ((z_sign > 0) != (fc.z0 > 0)) continue;
        if (!even && (y_sign > 0) != (fc.y2 > 0)) continue;
        return fc;
    }
    throw std::logic_error("case not found");
}

bool encloses_decimal(const HPReal& x, const char* lo, const char* hi) {
    long d = x.digits();
    return HPReal::from_decimal(lo, d).less_than(x) == Trilean::True &&
           x.less_than(HPReal::from_decimal(hi, d)) == Trilean::True;
}

}  // namespace

TEST_CASE("make_context encloses the expected constants") {
    TripleFamily fam = c_family(pair_from_k(2), 1, 1);
    LinearFormContext ctx = make_context(fam, pick_case(fam, true, 1), 50);
    CHECK(encloses_decimal(ctx.alpha, "9.898979", "9.898980"));
    CHECK(encloses_decimal(ctx.beta, "13.928203", "13.928204"));
    // Even case: gamma > 1.
    CHECK(HPReal::from_long(1, 50).less_than(ctx.gamma) == Trilean::True);
    LinearFormContext ctxm = make_context(fam, pick_case(fam, true, -1), 50);
    CHECK(HPReal::from_long(1, 50).less_than(ctxm.gamma) == Trilean::True);

    TripleFamily f45 = c_family(pair_from_k(45), 2, -1);
    LinearFormContext c45 = make_context(f45, pick_case(f45, false, 1, -1), 60);
    SecondOrderSeq T = unit_T_seq(f45.pair);
    SecondOrderSeq U = unit_U_seq(f45.pair);
    CHECK(f45.s == T.at(2) - 2 * U.at(2));
    HPReal expect_beta = HPReal::exact(f45.s, 60) + HPReal::exact(2 * f45.c, 60).sqrt();
    CHECK(c45.beta.contains(expect_beta));
}

TEST_CASE("lambda window certification at the known solutions") {
    // k = 2, nu = 1, +: even case z0 = -1 has the (m, l) = (2, 2) solution.
    TripleFamily fam = c_family(pair_from_k(2), 1, 1);
    CHECK(check_lambda_window(fam, pick_case(fam, true, -1), 2, 2, 50));
    CHECK(check_two_log_gap(fam, pick_case(fam, true, -1), 2, 2, 50));

    // Odd case z0 = +t with matching y2 pins V_1 = p_{nu+1}: d = d_plus.
    CHECK(check_lambda_window(fam, pick_case(fam, false, 1, 1), 2, 1, 50));
    CHECK(check_two_log_gap(fam, pick_case(fam, false, 1, 1), 2, 1, 50));

    TripleFamily f10 = c_family(pair_from_k(10), 1, 1);
    CHECK(check_lambda_window(f10, pick_case(f10, false, 1, 1), 2, 1, 50));
    CHECK(check_two_log_gap(f10, pick_case(f10, false, 1, 1), 2, 1, 50));

    // (l, m) = (0, 0) in the even case with z0 = +1 reduces to log gamma > 0.
    LinearFormContext ctx = make_context(fam, pick_case(fam, true, 1), 50);
    CHECK(lambda_value(ctx, 0, 0).sign_positive() == Trilean::True);
}

TEST_CASE("lower_bound_m") {
    TripleFamily f45 = c_family(pair_from_k(45), 1, 1);
    LinearFormContext ctx = make_context(f45, pick_case(f45, true, 1), 50);
    HPReal lb = lower_bound_m(1, f45.pair.b, ctx.alpha);
    CHECK(encloses_decimal(lb, "230.5", "231.5"));

    HPReal lb2 = lower_bound_m(2, f45.pair.b, ctx.alpha);
    HPReal twice = lb + lb;
    // Linear in |Delta|: the enclosures must overlap tightly.
    CHECK(lb2.less_than(twice - HPReal::from_ratio(1, 1000000, 50)) != Trilean::True);
    CHECK((twice + HPReal::from_ratio(1, 1000000, 50)).less_than(lb2) != Trilean::True);

    CHECK_THROWS_AS(lower_bound_m(1, Integer(3960), ctx.alpha), std::domain_error);
}

TEST_CASE("heights and the minimal polynomial of alpha^nu / beta") {
    TripleFamily fam = c_family(pair_from_k(1000), 1, 1);
    LinearFormContext ctx = make_context(fam, pick_case(fam, true, 1), 60);
    HeightBounds hb = heights(ctx, 1);
    CHECK(!hb.below_analytic_regime);
    SecondOrderSeq T = unit_T_seq(fam.pair);
    CHECK(hb.alpha1_minpoly[1] == -4 * fam.s * T.at(1));
    CHECK(hb.alpha1_minpoly[2] == 4 * T.at(1) * T.at(1) + 8 * fam.c + 2);

    HPReal residual = alpha1_minpoly_residual(ctx);
    CHECK(residual.sign_positive() == Trilean::Unknown);  // encloses zero
    // Residual width below 10^(-digits+5).
    Integer tol_den = 1;
    for (int i = 0; i < 55; ++i) tol_den *= 10;
    CHECK(residual.width_rational() < mpq_class(Integer(1), tol_den));

    CHECK(gamma_height_bound_holds(ctx));

    // h2 at nu = 1, |Delta + lambda| = 1 encloses 3 log alpha + 0.01.
    HPReal expect = HPReal::from_decimal("3", 60) * ctx.log_alpha + HPReal::from_decimal("0.01", 60);
    HPReal h2 = heights(ctx, 1).h2;
    CHECK(h2.less_than(expect - HPReal::from_ratio(1, 1000000, 60)) != Trilean::True);
    CHECK((expect + HPReal::from_ratio(1, 1000000, 60)).less_than(h2) != Trilean::True);

    HeightBounds warn = heights(make_context(c_family(pair_from_k(50), 1, 1),
                                             pick_case(c_family(pair_from_k(50), 1, 1), true, 1), 50),
                                1);
    CHECK(warn.below_analytic_regime);
}

TEST_CASE("upper_bound_m against an independent high-precision evaluation") {
    TripleFamily fam = c_family(pair_from_k(1000), 1, 1);
    LinearFormContext lo = make_context(fam, pick_case(fam, true, 1), 50);
    LinearFormContext hi = make_context(fam, pick_case(fam, true, 1), 200);
    HPReal a = upper_bound_m(lo, 1);
    HPReal b = upper_bound_m(hi, 1);
    CHECK(a.contains(b));
}

TEST_CASE("b-prime fixpoint and small branch") {
    CHECK(b_prime_fixpoint(60) == 33789);
    CHECK(b_prime_small_branch(60) == 1236);
}

TEST_CASE("global k bound") {
    GlobalBound gb = global_k_bound(60);
    CHECK(encloses_decimal(gb.sqrt_b_limit, "1077590.36", "1077590.76"));
    CHECK(gb.k_max >= 761968);
    CHECK(gb.k_max <= 761972);

    GlobalBound gb2 = global_k_bound(60, 2);
    CHECK(gb2.k_max < gb.k_max);
}

TEST_CASE("beyond the bound every branch is contradictory") {
    CHECK(k_excluded_by_bounds(Integer(761971), 60));
    CHECK(k_excluded_by_bounds(Integer(1000000), 60));
    CHECK(k_excluded_by_bounds(Integer(10000000), 60));
}

TEST_CASE("beta tracks alpha^nu: ratio and log-ratio bounds") {
    for (long k : {45L, 100L, 1000L, 5000L, 761970L}) {
        for (int nu = 1; nu <= 3; ++nu) {
            for (int sign : {1, -1}) {
                if (nu == 1 && sign == -1) continue;
                TripleFamily fam = c_family(pair_from_k(k), nu, sign);
                LinearFormContext ctx = make_context(fam, lemma_cases(fam)[0], 60);
                HPReal anu = ctx.alpha.pow_int(nu);
                HPReal rel = ((ctx.beta - anu) / anu).abs();
                HPReal cap = HPReal::from_decimal("1.42", 60) /
                             HPReal::exact(fam.pair.b, 60).sqrt();
                CHECK(rel.less_than(cap) == Trilean::True);
                if (k >= 1000) {
                    HPReal logratio = (ctx.log_beta - HPReal::from_long(nu, 60) * ctx.log_alpha).abs();
                    CHECK(logratio.less_than(HPReal::from_decimal("0.01", 60)) == Trilean::True);
                }
            }
        }
    }
}

TEST_CASE("bd_reduce on a rational kappa signals IncreaseQ") {
    ReductionParams params;
    params.kappa = HPReal::from_ratio(7, 4, 50);  // dyadic: the enclosure is a point
    params.mu = HPReal::from_ratio(1, 5, 50);
    params.A = HPReal::from_long(2, 50);
    params.B = HPReal::from_long(4, 50);
    params.L = 10;
    params.M = 10;
    params.digits = 50;
    BdOutcome out = bd_reduce(params);
    CHECK(out.status == BdStatus::IncreaseQ);
}

TEST_CASE("reduce_case collapses the first bound at k = 45") {
    for (int nu = 1; nu <= 3; ++nu) {
        for (int sign : {1, -1}) {
            if (nu == 1 && sign == -1) continue;
            TripleFamily fam = c_family(pair_from_k(45), nu, sign);
            for (const auto& fc : lemma_cases(fam)) {
                ReductionResult res = reduce_case(fam, fc, first_reduction_bound(), 0);
                CHECK(res.converged);
                CHECK(res.final_bound <= 3);
                CHECK(res.rounds <= 2);
            }
        }
    }
}

TEST_CASE("reduce_case at larger k") {
    TripleFamily f1000 = c_family(pair_from_k(1000), 3, -1);
    for (const auto& fc : lemma_cases(f1000)) {
        ReductionResult res = reduce_case(f1000, fc, first_reduction_bound(), 0);
        CHECK(res.converged);
        CHECK(res.final_bound <= 3);
        CHECK(res.rounds <= 2);
    }
    TripleFamily fbig = c_family(pair_from_k(761970), 2, 1);
    FundamentalCase fc = pick_case(fbig, false, -1, -1);
    ReductionResult res = reduce_case(fbig, fc, first_reduction_bound(), 0);
    CHECK(res.converged);
    CHECK(res.final_bound <= 3);
}

TEST_CASE("reduce_case recovers from a starved starting precision") {
    // 20 digits cannot pin enough convergents for q > 6L at M0 ~ 1.33e18;
    // the engine must escalate precision internally and still land at <= 3.
    TripleFamily fam = c_family(pair_from_k(45), 1, 1);
    FundamentalCase fc = pick_case(fam, true, 1);
    ReductionResult res = reduce_case(fam, fc, first_reduction_bound(), 20);
    CHECK(res.converged);
    CHECK(res.final_bound <= 3);
    CHECK(res.digits_used > 20);
}

TEST_CASE("reduction bound is sound against direct enumeration") {
    for (long k : {45L, 50L}) {
        TripleFamily fam = c_family(pair_from_k(k), 1, 1);
        for (const auto& fc : lemma_cases(fam)) {
            ReductionResult res = reduce_case(fam, fc, first_reduction_bound(), 0);
            REQUIRE(res.converged);
            long bound = static_cast<long>(res.final_bound.get_si());
            CaseSequences seqs = build_case_sequences(fam, fc);
            auto all = solve_intersection(seqs, fc, fam.nu, 10 * std::max(bound, 1L));
            for (const auto& sol : all) {
                // Only genuine upward extensions satisfy the window the
                // reduction reasons about; d = 0 and d_minus hits do not.
                Integer d = (sol.x * sol.x - 1) / 2;
                if (sol.m >= 1 && d > fam.c) CHECK(sol.m <= bound);
            }
        }
    }
}
