#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dioph/recurrences.hpp"
#include "support/oracles.hpp"

using namespace dioph;

namespace {

FundamentalCase even_case(const TripleFamily& fam, int z_sign) {
    for (const auto& fc : lemma_cases(fam)) {
        if (fc.even_parity && ((z_sign > 0) == (fc.z0 > 0))) return fc;
    }
    throw std::logic_error("case not found");
}

FundamentalCase odd_case(const TripleFamily& fam, int z_sign, int y_sign) {
    for (const auto& fc : lemma_cases(fam)) {
        if (!fc.even_parity && ((z_sign > 0) == (fc.z0 > 0)) && ((y_sign > 0) == (fc.y2 > 0)))
            return fc;
    }
    throw std::logic_error("case not found");
}

}  // namespace

TEST_CASE("pair sequences at k = 2, plus sign") {
    Pair2B pair = pair_from_k(2);
    SecondOrderSeq t = pair_t_seq(pair, 1);
    CHECK(t.at(0) == 1);
    CHECK(t.at(1) == 17);
    CHECK(t.at(2) == 169);
    CHECK(t.at(3) == 1673);
    SecondOrderSeq s = pair_s_seq(pair, 1);
    CHECK(s.at(0) == 1);
    CHECK(s.at(1) == 7);
    CHECK(s.at(2) == 69);
    CHECK(s.at(3) == 683);
    SecondOrderSeq T = unit_T_seq(pair);
    SecondOrderSeq U = unit_U_seq(pair);
    CHECK(T.at(0) == 1);
    CHECK(T.at(1) == 5);
    CHECK(T.at(2) == 49);
    CHECK(T.at(3) == 485);
    CHECK(U.at(0) == 0);
    CHECK(U.at(1) == 1);
    CHECK(U.at(2) == 10);
    CHECK(U.at(3) == 99);
    CHECK(T.at(2) * T.at(2) - 2 * pair.b * U.at(2) * U.at(2) == 1);
}

TEST_CASE("halve_odd_indices kernel and values") {
    SecondOrderSeq p(1, 7, 10, -1);  // kernel (2r, -1) at r = 5
    SecondOrderSeq h = halve_odd_indices(p);
    CHECK(h.kernel_a() == 98);
    CHECK(h.kernel_b() == -1);

    SecondOrderSeq fib(0, 1, 1, 1);
    SecondOrderSeq fodd = halve_odd_indices(fib);
    CHECK(fodd.kernel_a() == 3);
    CHECK(fodd.kernel_b() == -1);
    // F1, F3, F5, ... = 1, 2, 5, 13, 34
    CHECK(fodd.at(0) == 1);
    CHECK(fodd.at(1) == 2);
    CHECK(fodd.at(2) == 5);
    CHECK(fodd.at(3) == 13);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        long A = coef(rng), B = coef(rng);
        long u0 = coef(rng), u1 = coef(rng);
        SecondOrderSeq base(u0, u1, A, B);
        SecondOrderSeq odd = halve_odd_indices(SecondOrderSeq(u0, u1, A, B));
        for (std::size_t i = 0; i < 20; ++i) {
            CHECK(odd.at(i) == base.at(2 * i + 1));
        }
    }
}

TEST_CASE("unit identity and s = T +- 2U across the sample grid") {
    for (long k = 1; k <= 60; ++k) {
        Pair2B pair = pair_from_k(k);
        SecondOrderSeq T = unit_T_seq(pair);
        SecondOrderSeq U = unit_U_seq(pair);
        SecondOrderSeq sp = pair_s_seq(pair, 1);
        SecondOrderSeq sm = pair_s_seq(pair, -1);
        for (std::size_t nu = 0; nu <= 20; ++nu) {
            CHECK(T.at(nu) * T.at(nu) - 2 * pair.b * U.at(nu) * U.at(nu) == 1);
            CHECK(sp.at(nu) == T.at(nu) + 2 * U.at(nu));
            CHECK(sm.at(nu) == T.at(nu) - 2 * U.at(nu));
        }
    }
}

TEST_CASE("congruence scheme for W and q modulo b") {
    for (long k = 2; k <= 60; ++k) {
        Pair2B pair = pair_from_k(k);
        for (int nu = 1; nu <= 3; ++nu) {
            for (int sign : {1, -1}) {
                if (k == 1 && nu == 1 && sign == -1) continue;
                TripleFamily fam = c_family(pair, nu, sign);
                // Even z-side case: z1 = +-1, y1 = 1; odd: z1 = +-s, y1 = r.
                for (const auto& [z1, y1] : std::vector<std::pair<Integer, Integer>>{
                         {1, 1}, {-1, 1}, {fam.s, pair.r}, {-fam.s, pair.r}}) {
                    SecondOrderSeq W = y_side_W_seq(fam, z1, y1);
                    for (std::size_t n = 0; n <= 25; ++n) {
                        Integer expect = (n % 2 == 0 ? y1 : fam.t * y1) % pair.b;
                        Integer got = W.at(n) % pair.b;
                        CHECK((got - expect) % pair.b == 0);
                    }
                }
                for (const auto& [y2, x2] :
                     std::vector<std::pair<Integer, Integer>>{{1, 1}, {-1, 1}}) {
                    SecondOrderSeq q = y_side_q_seq(pair, y2, x2);
                    for (std::size_t l = 0; l <= 25; ++l) {
                        Integer expect = (l % 2 == 0 ? y2 : pair.r * y2) % pair.b;
                        Integer got = q.at(l) % pair.b;
                        CHECK((got - expect) % pair.b == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("case sequences at k = 2") {
    TripleFamily fam = c_family(pair_from_k(2), 1, 1);

    CaseSequences plus = build_case_sequences(fam, even_case(fam, 1));
    CHECK(plus.V.at(0) == 1);
    CHECK(plus.V.at(1) == 9);  // s + 2
    CHECK(plus.V.at(2) == 125);
    CHECK(plus.p.at(0) == 1);
    CHECK(plus.p.at(1) == 7);
    CHECK(plus.p.at(2) == 69);

    CaseSequences minus = build_case_sequences(fam, even_case(fam, -1));
    CHECK(minus.V.at(1) == 5);  // s - 2
    CHECK(minus.V.at(2) == 69);

    // p_nu = T_nu + 2 U_nu in the even case.
    TripleFamily fam2 = c_family(pair_from_k(2), 2, 1);
    CaseSequences c2 = build_case_sequences(fam2, even_case(fam2, 1));
    SecondOrderSeq T = unit_T_seq(fam2.pair);
    SecondOrderSeq U = unit_U_seq(fam2.pair);
    CHECK(c2.p.at(2) == T.at(2) + 2 * U.at(2));
    CHECK(c2.p.at(2) == 69);

    // Odd case: V0 = r, V1 = r s + 2 t.
    CaseSequences odd = build_case_sequences(fam, odd_case(fam, 1, 1));
    CHECK(odd.V.at(0) == 5);
    CHECK(odd.V.at(1) == 69);

    FundamentalCase bad{true, 3, 1, 1, 1, 0};
    CHECK_THROWS_AS(build_case_sequences(fam, bad), std::domain_error);
}

TEST_CASE("classify_y2 regimes") {
    Pair2B p45 = pair_from_k(45);
    TripleFamily f45 = c_family(p45, 1, 1);
    CaseClassification c45 = classify_y2(p45, f45);
    CHECK(c45.justification == Y2Justification::CongruenceArgument);
    CHECK(c45.cases.size() == 6);
    CHECK(c45.extra_y_classes.empty());

    Pair2B p2 = pair_from_k(2);
    TripleFamily f2 = c_family(p2, 1, 1);
    CaseClassification c2 = classify_y2(p2, f2);
    CHECK(c2.justification == Y2Justification::OracleEnumeration);
    CHECK(c2.extra_y_classes.empty());

    Pair2B p7 = pair_from_k(7);  // k = g^2 - 2 with g = 3
    TripleFamily f7 = c_family(p7, 1, 1);
    CaseClassification c7 = classify_y2(p7, f7);
    CHECK(c7.justification == Y2Justification::OracleEnumeration);
    bool has_13_2 = false;
    for (const auto& e : c7.extra_y_classes) {
        if (abs(e.t) == 13 && e.s == 2) has_13_2 = true;
    }
    CHECK(has_13_2);
}

TEST_CASE("solve_intersection finds the regular coincidences") {
    TripleFamily fam = c_family(pair_from_k(2), 1, 1);
    FundamentalCase fc = even_case(fam, -1);
    CaseSequences seqs = build_case_sequences(fam, fc);
    auto sols = solve_intersection(seqs, fc, fam.nu, 10);
    REQUIRE(sols.size() == 2);
    CHECK(sols[0].m == 0);
    CHECK(sols[0].l == 0);
    CHECK(sols[0].x == 1);
    CHECK(sols[1].m == 2);
    CHECK(sols[1].l == 2);
    CHECK(sols[1].x == 69);
    CHECK(sols[1].delta == 0);
    CHECK((sols[1].x * sols[1].x - 1) / 2 == 2380);

    // z0 = +1 has only the trivial coincidence.
    FundamentalCase fp = even_case(fam, 1);
    CaseSequences seqp = build_case_sequences(fam, fp);
    auto solsp = solve_intersection(seqp, fp, fam.nu, 10);
    REQUIRE(solsp.size() == 1);
    CHECK(solsp[0].m == 0);
}

TEST_CASE("solve_intersection matches a naive double loop") {
    std::mt19937_64 rng(20240818);
    std::uniform_int_distribution<long> kd(2, 40);
    std::uniform_int_distribution<int> nud(1, 3), sd(0, 1), cd(0, 5);
    for (int trial = 0; trial < 50; ++trial) {
        long k = kd(rng);
        int nu = nud(rng);
        int sign = sd(rng) ? 1 : -1;
        if (k == 1 && nu == 1 && sign == -1) continue;
        TripleFamily fam = c_family(pair_from_k(k), nu, sign);
        FundamentalCase fc = lemma_cases(fam)[static_cast<std::size_t>(cd(rng))];
        CaseSequences seqs = build_case_sequences(fam, fc);

        long m_max = 60;
        auto got = solve_intersection(seqs, fc, nu, m_max);

        std::vector<IntersectionSolution> naive;
        SecondOrderSeq V = seqs.V;
        SecondOrderSeq p = seqs.p;
        for (long m = 0; m <= m_max; ++m) {
            for (long l = 0; l <= 60; ++l) {
                if (V.at(static_cast<std::size_t>(m)) != p.at(static_cast<std::size_t>(l))) continue;
                bool parity_ok = fc.even_parity ? (m % 2 == 0 && l % 2 == 0) : (m % 2 == 1);
                if (!parity_ok) continue;
                naive.push_back({Integer(m), Integer(l), V.at(static_cast<std::size_t>(m)),
                                 delta_of(Integer(l), fc.lambda, nu, Integer(m))});
            }
        }
        std::vector<IntersectionSolution> got_capped;
        for (const auto& s : got) {
            if (s.l <= 60) got_capped.push_back(s);
        }
        REQUIRE(got_capped.size() == naive.size());
        for (std::size_t i = 0; i < naive.size(); ++i) {
            CHECK(got_capped[i].m == naive[i].m);
            CHECK(got_capped[i].l == naive[i].l);
            CHECK(got_capped[i].x == naive[i].x);
            CHECK(got_capped[i].delta == naive[i].delta);
        }
    }
}

TEST_CASE("delta_of") {
    CHECK(delta_of(2, 0, 1, 2) == 0);
    CHECK(delta_of(5, 1, 2, 2) == 0);
    CHECK(delta_of(7, 0, 3, 2) == 1);
}

TEST_CASE("z-side sequences pair with the x-side witness") {
    // k = 2 witness: x = V_2 = 69 gives d = 2380; the z companion with
    // z0 = -1, x0 = 1 must satisfy c d + 1 = z^2 at the same index.
    TripleFamily fam = c_family(pair_from_k(2), 1, 1);
    SecondOrderSeq v = z_side_v_seq(fam, -1, 1);
    CHECK(v.at(0) == -1);
    CHECK(v.at(1) == 17);  // s z0 + c x0 = -7 + 24
    CHECK(v.at(2) == 239);
    CHECK(fam.c * 2380 + 1 == v.at(2) * v.at(2));

    // w pairs t with c: w1 = t z1 + c y1.
    SecondOrderSeq w = z_side_w_seq(fam, 1, 1);
    CHECK(w.at(0) == 1);
    CHECK(w.at(1) == fam.t + fam.c);
    CHECK(w.kernel_a() == 2 * fam.t);

    // The even-parity z-branch hits the same z = 239: w_n sequence with
    // z1 = -1, y1 = 1 at n = 2.
    SecondOrderSeq w2 = z_side_w_seq(fam, -1, 1);
    CHECK(w2.at(2) == 239);
}

TEST_CASE("ordering chains hold across the sampled grid") {
    for (long k : {2L, 3L, 10L, 45L, 46L, 100L}) {
        for (int nu = 1; nu <= 3; ++nu) {
            for (int sign : {1, -1}) {
                if (nu == 1 && sign == -1) continue;  // reordered alias
                TripleFamily fam = c_family(pair_from_k(k), nu, sign);
                for (const auto& fc : lemma_cases(fam)) {
                    DeltaInequalityReport rep = verify_delta_inequalities(fam, fc, 25);
                    CHECK(rep.all_hold);
                    for (const auto& eq : rep.regular_equalities) {
                        // Equalities may only appear at the known spots.
                        CHECK((eq.m == 1 || eq.m == 2));
                    }
                    if (fc.even_parity && fc.z0 < 0 && nu == 1 && sign == 1) {
                        REQUIRE(rep.regular_equalities.size() == 1);
                        CHECK(rep.regular_equalities[0].m == 2);
                    }
                }
            }
        }
    }
}

TEST_CASE("intersections with m in {1,2} give d = 0 or a regular quadruple") {
    for (long k = 2; k <= 30; ++k) {
        for (int nu = 1; nu <= 3; ++nu) {
            for (int sign : {1, -1}) {
                if (nu == 1 && sign == -1) continue;
                TripleFamily fam = c_family(pair_from_k(k), nu, sign);
                for (const auto& fc : lemma_cases(fam)) {
                    CaseSequences seqs = build_case_sequences(fam, fc);
                    for (const auto& sol : solve_intersection(seqs, fc, fam.nu, 2)) {
                        if (sol.m < 1) continue;
                        Integer d = (sol.x * sol.x - 1) / 2;
                        if (d == 0) continue;
                        CHECK(is_regular_quadruple(2, fam.pair.b, fam.c, d));
                    }
                }
            }
        }
    }
}
