#include "dioph/pell.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "dioph/contfrac.hpp"

namespace dioph {

PellEquation PellEquation::make(const Integer& D, const Integer& N) {
    if (D < 2 || is_square(D)) throw std::domain_error("PellEquation: D must be >= 2 and non-square");
    if (N == 0) throw std::domain_error("PellEquation: N must be nonzero");
    return PellEquation{D, N};
}

namespace {

std::mutex g_unit_mutex;
std::map<Integer, UnitSolution>& unit_cache() {
    static std::map<Integer, UnitSolution> cache;
    return cache;
}

std::map<Integer, std::optional<PellSolution>>& neg_unit_cache() {
    static std::map<Integer, std::optional<PellSolution>> cache;
    return cache;
}

}  // namespace

UnitSolution minimal_unit_solution(const Integer& D) {
    {
        std::lock_guard<std::mutex> lk(g_unit_mutex);
        auto it = unit_cache().find(D);
        if (it != unit_cache().end()) return it->second;
    }
    ContinuedFraction cf = cf_sqrt(D);
    std::size_t want = 2 * cf.period.size() + 2;
    auto conv = convergents(cf, want);
    for (const auto& c : conv) {
        if (c.p * c.p - D * c.q * c.q == 1) {
            UnitSolution u{c.p, c.q};
            std::lock_guard<std::mutex> lk(g_unit_mutex);
            unit_cache().emplace(D, u);
            return u;
        }
    }
    throw std::runtime_error("minimal_unit_solution: no unit found (unreachable)");
}

std::optional<PellSolution> negative_unit_solution(const Integer& D) {
    {
        std::lock_guard<std::mutex> lk(g_unit_mutex);
        auto it = neg_unit_cache().find(D);
        if (it != neg_unit_cache().end()) return it->second;
    }
    ContinuedFraction cf = cf_sqrt(D);
    std::optional<PellSolution> out;
    if (cf.period.size() % 2 == 1) {
        auto conv = convergents(cf, cf.period.size());
        for (const auto& c : conv) {
            if (c.p * c.p - D * c.q * c.q == -1) {
                out = PellSolution{c.p, c.q};
                break;
            }
        }
    }
    std::lock_guard<std::mutex> lk(g_unit_mutex);
    neg_unit_cache().emplace(D, out);
    return out;
}

bool solves(const PellEquation& eq, const PellSolution& sol) {
    return sol.t * sol.t - eq.D * sol.s * sol.s == eq.N;
}

bool same_class(const PellSolution& a, const PellSolution& b, const PellEquation& eq) {
    if (!solves(eq, a) || !solves(eq, b)) throw std::domain_error("same_class: inputs must solve the equation");
    Integer mod = abs(eq.N);
    Integer c1 = (a.t * b.t - eq.D * a.s * b.s) % mod;
    Integer c2 = (a.t * b.s - b.t * a.s) % mod;
    return c1 == 0 && c2 == 0;
}

Integer class_count_bound(const Integer& N) {
    if (N == 0) throw std::domain_error("class_count_bound: N must be nonzero");
    return Integer(1) << distinct_prime_factors(N);
}

PellSolution unit_multiply(const PellSolution& v, const UnitSolution& u, const Integer& D) {
    return {v.t * u.T + D * v.s * u.U, v.t * u.U + v.s * u.T};
}

PellSolution unit_divide(const PellSolution& v, const UnitSolution& u, const Integer& D) {
    return {v.t * u.T - D * v.s * u.U, v.s * u.T - v.t * u.U};
}

namespace {

// Walks v toward the class element with the least |s|; |s| along the orbit is
// V-shaped, so a bidirectional greedy descent reaches the minimum.
PellSolution class_minimum(PellSolution v, const UnitSolution& u, const Integer& D) {
    auto fold = [](PellSolution w) { return w.s < 0 ? PellSolution{-w.t, -w.s} : w; };
    v = fold(v);
    for (;;) {
        PellSolution down = fold(unit_divide(v, u, D));
        if (down.s < v.s) {
            v = down;
            continue;
        }
        PellSolution up = fold(unit_multiply(v, u, D));
        if (up.s < v.s) {
            v = up;
            continue;
        }
        return v;
    }
}

// Nagell's bound on the s of a fundamental solution, widened by +1.
Integer nagell_scan_bound(const Integer& N, const UnitSolution& u) {
    Integer num = u.U * u.U * abs(N);
    Integer den = N > 0 ? Integer(2 * (u.T + 1)) : Integer(2 * (u.T - 1));
    return isqrt_floor(num / den) + 1;
}

// --- PQa-based search, used when the scan bound is out of reach. ---
// Standard continued-fraction machinery for (P0 + sqrt(D)) / Q0; emits the
// G/B combinations whose norms sweep the Q values of the expansion.

struct PqaHit {
    PellSolution sol;  // G, B at a Q = +-1 step
    int norm_sign;     // sign of G^2 - D B^2 relative to |Q0|: +1 or -1
};

std::vector<PqaHit> pqa_unit_hits(const Integer& P0, const Integer& Q0, const Integer& D) {
    std::vector<PqaHit> hits;
    // The (P, Q) state stays within |P| <= |P0| + sqrt(D) + |Q0| and
    // |Q| <= max(|Q0|, 2 sqrt(D) + 1); only G and B grow, so the state
    // machine runs in machine words whenever the inputs allow.
    if (D.fits_slong_p() && P0.fits_slong_p() && Q0.fits_slong_p() &&
        D < (Integer(1) << 30) && abs(Q0) < (Integer(1) << 30)) {
        const long d = D.get_si();
        const long a0 = static_cast<long>(isqrt_floor(D).get_si());
        long P = P0.get_si(), Q = Q0.get_si();
        Integer B_prev = 0, B_pprev = 1;
        Integer G_prev = Q0, G_pprev = -P0;
        std::set<std::pair<long, long>> seen;
        for (long i = 0; i < 10000000; ++i) {
            if (!seen.insert({P, Q}).second) break;
            long num = P + a0;
            long a;
            if (Q > 0) {
                a = num >= 0 ? num / Q : -((-num + Q - 1) / Q);
            } else {
                long qa = -Q;
                long f = num >= 0 ? num / qa : -((-num + qa - 1) / qa);
                a = -f - 1;  // irrational quotient: dividing by Q < 0 shifts the floor
            }
            Integer B = a * B_prev + B_pprev;
            Integer G = a * G_prev + G_pprev;
            long Pn = a * Q - P;
            long Qn = (d - Pn * Pn) / Q;
            if (Qn == 1 || Qn == -1) {
                Integer norm = G * G - D * B * B;
                if (abs(norm) == abs(Q0)) hits.push_back({{G, B}, norm > 0 ? 1 : -1});
            }
            B_pprev = B_prev;
            B_prev = B;
            G_pprev = G_prev;
            G_prev = G;
            P = Pn;
            Q = Qn;
        }
        return hits;
    }

    Integer a0 = isqrt_floor(D);
    Integer P = P0, Q = Q0;
    Integer B_prev = 0, B_pprev = 1;
    Integer G_prev = Q0, G_pprev = -P0;

    std::set<std::pair<Integer, Integer>> seen;
    for (long i = 0; i < 10000000; ++i) {
        if (!seen.insert({P, Q}).second) break;  // full cycle examined
        // a = floor((P + sqrt(D)) / Q), exactly, for either sign of Q.
        Integer a;
        if (Q > 0) {
            Integer num = P + a0;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
            Integer num = P + a0;
            Integer qa = -Q;
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), qa.get_mpz_t());
            a = -f - 1;  // (P + sqrt D)/Q is irrational, so the floor shifts by one
        }
        Integer B = a * B_prev + B_pprev;
        Integer G = a * G_prev + G_pprev;
        Integer Pn = a * Q - P;
        Integer Qn = (D - Pn * Pn) / Q;
        if (Qn == 1 || Qn == -1) {
            // G^2 - D B^2 = (-1)^(i+1) * Q_{i+1} * Q0
            Integer norm = G * G - D * B * B;
            int sign = norm > 0 ? 1 : -1;
            if (abs(norm) == abs(Q0)) hits.push_back({{G, B}, sign});
        }
        B_pprev = B_prev;
        B_prev = B;
        G_pprev = G_prev;
        G_prev = G;
        P = Pn;
        Q = Qn;
    }
    return hits;
}

// All square roots of D modulo m0 > 0, represented in (-m0/2, m0/2].
std::vector<Integer> sqrt_roots_mod(const Integer& D, const Integer& m0) {
    std::vector<Integer> roots;
    Integer half = m0 / 2;
    Integer Dm = D % m0;
    for (Integer z = -half + (m0 % 2 == 0 ? 1 : 0); z <= half; ++z) {
        Integer zz = (z * z) % m0;
        if (zz < 0) zz += m0;
        Integer target = Dm < 0 ? Dm + m0 : Dm;
        if (zz == target) roots.push_back(z);
    }
    return roots;
}

// Complete set of (not yet canonical) class representatives via the
// square-divisor / residue-class decomposition.
std::vector<PellSolution> representatives_by_pqa(const PellEquation& eq) {
    std::vector<PellSolution> reps;
    Integer absN = abs(eq.N);
    std::optional<PellSolution> neg_unit = negative_unit_solution(eq.D);

    for (Integer f = 1; f * f <= absN; ++f) {
        if (absN % (f * f) != 0) continue;
        Integer m = eq.N / (f * f);
        Integer m0 = abs(m);
        if (m0 == 1) {
            // x^2 - D y^2 = +-1 directly from the expansion of sqrt(D).
            if (m == 1) {
                reps.push_back({f, 0});
            } else if (neg_unit) {
                reps.push_back({f * neg_unit->t, f * neg_unit->s});
            }
            continue;
        }
        for (const Integer& z : sqrt_roots_mod(eq.D, m0)) {
            for (const auto& hit : pqa_unit_hits(z, m0, eq.D)) {
                Integer norm = hit.sol.t * hit.sol.t - eq.D * hit.sol.s * hit.sol.s;
                PellSolution cand = hit.sol;
                if (norm != m) {
                    if (!neg_unit) continue;  // wrong sign; a later hit may match
                    cand = PellSolution{cand.t * neg_unit->t + eq.D * cand.s * neg_unit->s,
                                        cand.t * neg_unit->s + cand.s * neg_unit->t};
                    if (cand.t * cand.t - eq.D * cand.s * cand.s != m) continue;
                }
                reps.push_back({f * cand.t, f * cand.s});
                break;
            }
        }
    }
    return reps;
}

constexpr long kScanCap = 100000;  // larger Nagell windows switch to PQa

}  // namespace

std::vector<PellSolution> fundamental_solutions(const PellEquation& eq) {
    UnitSolution unit = minimal_unit_solution(eq.D);
    Integer scan_bound = nagell_scan_bound(eq.N, unit);

    std::vector<PellSolution> reps;
    Integer cap = kScanCap;

    auto add_if_new_class = [&](const PellSolution& cand) {
        for (const auto& known : reps) {
            if (same_class(cand, known, eq)) return;
        }
        reps.push_back(cand);
    };

    if (scan_bound <= cap) {
        // Fast path when every intermediate fits comfortably in 64 bits.
        bool small = eq.D.fits_slong_p() && eq.N.fits_slong_p() && scan_bound.fits_slong_p() &&
                     eq.D * scan_bound * scan_bound + abs(eq.N) < (Integer(1) << 62);
        if (small) {
            const long d = eq.D.get_si(), n = eq.N.get_si(), sb = scan_bound.get_si();
            for (long s = 0; s <= sb; ++s) {
                long long v = static_cast<long long>(d) * s * s + n;
                if (v < 0) continue;
                auto r = static_cast<long long>(sqrtl(static_cast<long double>(v)));
                while (r > 0 && r * r > v) --r;
                while ((r + 1) * (r + 1) <= v) ++r;
                if (r * r != v) continue;
                add_if_new_class({Integer(static_cast<long>(r)), Integer(s)});
                if (r != 0) add_if_new_class({Integer(static_cast<long>(-r)), Integer(s)});
            }
        } else {
            for (Integer s = 0; s <= scan_bound; ++s) {
                Integer tt = eq.N + eq.D * s * s;
                if (tt < 0) continue;
                auto r = isqrt_exact(tt);
                if (!r) continue;
                add_if_new_class({*r, s});
                if (*r != 0) add_if_new_class({-*r, s});
            }
        }
    } else {
        for (const auto& raw : representatives_by_pqa(eq)) {
            PellSolution cand = class_minimum(raw, unit, eq.D);
            bool dup = false;
            for (const auto& known : reps) {
                if (same_class(cand, known, eq)) {
                    dup = true;
                    break;
                }
            }
            if (!dup) reps.push_back(cand);
        }
        // Prefer t >= 0 whenever both signs inhabit the class.
        for (auto& rep : reps) {
            if (rep.t < 0 && same_class(rep, {-rep.t, rep.s}, eq)) rep.t = -rep.t;
        }
    }

    std::sort(reps.begin(), reps.end(), [](const PellSolution& a, const PellSolution& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    });
    return reps;
}

std::vector<TaggedSolution> enumerate_solutions(const PellEquation& eq, const Integer& s_max) {
    if (s_max < 1) throw std::domain_error("enumerate_solutions: s_max must be >= 1");
    UnitSolution unit = minimal_unit_solution(eq.D);
    auto fundamentals = fundamental_solutions(eq);

    std::set<std::pair<Integer, Integer>> seen;
    std::vector<TaggedSolution> out;

    auto consider = [&](PellSolution v, std::size_t ci) {
        if (v.s < 0) v = {-v.t, -v.s};  // -v lies in the same class
        if (v.s <= 0 || v.s > s_max || v.t < 0) return;
        if (seen.insert({v.t, v.s}).second) out.push_back({v, ci});
    };

    for (std::size_t ci = 0; ci < fundamentals.size(); ++ci) {
        for (int dir = 0; dir < 2; ++dir) {
            PellSolution v = fundamentals[ci];
            Integer prev_abs_s = abs(v.s);
            if (dir == 0) consider(v, ci);
            for (long guard = 0; guard < 1000000; ++guard) {
                v = dir == 0 ? unit_multiply(v, unit, eq.D) : unit_divide(v, unit, eq.D);
                consider(v, ci);
                Integer as = abs(v.s);
                // |s| along the orbit is V-shaped: once past s_max and
                // growing, nothing further can re-enter the window.
                if (as > s_max && as > prev_abs_s) break;
                prev_abs_s = as;
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const TaggedSolution& a, const TaggedSolution& b) {
        return a.sol.s < b.sol.s;
    });
    return out;
}

}  // namespace dioph
