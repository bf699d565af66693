#include "dioph/bounds.hpp"

#include <algorithm>

namespace dioph {

namespace {

Integer floor_of_upper(const HPReal& x) {
    mpq_class u = x.upper_rational();
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), u.get_num().get_mpz_t(), u.get_den().get_mpz_t());
    return out;
}

Integer ceil_of_upper(const HPReal& x) {
    mpq_class u = x.upper_rational();
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), u.get_num().get_mpz_t(), u.get_den().get_mpz_t());
    return out;
}

HPReal dec(const char* text, long digits) { return HPReal::from_decimal(text, digits); }

}  // namespace

LinearFormContext make_context(const TripleFamily& fam, const FundamentalCase& fc, long digits) {
    LinearFormContext ctx;
    ctx.fam = fam;
    ctx.fc = fc;
    ctx.nu = fam.nu;
    ctx.lambda = fc.lambda;
    ctx.digits = digits;

    HPReal sqrt2 = HPReal::exact(2, digits).sqrt();
    HPReal sqrt_b = HPReal::exact(fam.pair.b, digits).sqrt();
    HPReal sqrt_c = HPReal::exact(fam.c, digits).sqrt();
    HPReal sqrt_2b = HPReal::exact(2 * fam.pair.b, digits).sqrt();
    HPReal sqrt_2c = HPReal::exact(2 * fam.c, digits).sqrt();

    ctx.alpha = HPReal::exact(fam.pair.r, digits) + sqrt_2b;
    ctx.beta = HPReal::exact(fam.s, digits) + sqrt_2c;

    HPReal num = sqrt_c * (HPReal::exact(fc.y2, digits) * sqrt2 + HPReal::exact(fc.x2, digits) * sqrt_b);
    HPReal den = sqrt_b * (HPReal::exact(fc.z0, digits) * sqrt2 + HPReal::exact(fc.x0, digits) * sqrt_c);
    if (!den.surely_positive() || !num.surely_positive())
        throw PrecisionExhausted("make_context: gamma sign not certified at this precision");
    ctx.gamma = num / den;

    HPReal one = HPReal::from_long(1, digits);
    if (one.less_than(ctx.alpha) != Trilean::True || one.less_than(ctx.beta) != Trilean::True)
        throw PrecisionExhausted("make_context: alpha, beta > 1 not certified");
    ctx.log_alpha = ctx.alpha.log();
    ctx.log_beta = ctx.beta.log();
    ctx.log_gamma = ctx.gamma.log();
    return ctx;
}

HPReal lambda_value(const LinearFormContext& ctx, const Integer& l, const Integer& m) {
    if (l < 0 || m < 0) throw std::domain_error("lambda_value: l, m must be nonnegative");
    return HPReal::exact(l, ctx.digits) * ctx.log_alpha - HPReal::exact(m, ctx.digits) * ctx.log_beta +
           ctx.log_gamma;
}

bool check_two_log_gap(const TripleFamily& fam, const FundamentalCase& fc, const Integer& l,
                       const Integer& m, long digits_start, int retries) {
    if (m < 1) throw std::domain_error("check_two_log_gap: m must be >= 1");
    return certify(
        [&](long digits) {
            LinearFormContext ctx = make_context(fam, fc, digits);
            HPReal lhs = (HPReal::exact(l - fc.lambda, digits) * ctx.log_alpha -
                          HPReal::exact(m, digits) * ctx.log_beta)
                             .abs();
            HPReal rhs = HPReal::from_ratio(8, fam.pair.b, digits).sqrt();
            return lhs.less_than(rhs);
        },
        digits_start, retries);
}

bool check_lambda_window(const TripleFamily& fam, const FundamentalCase& fc, const Integer& l,
                         const Integer& m, long digits_start, int retries) {
    if (m < 1) throw std::domain_error("check_lambda_window: m must be >= 1");
    if (!m.fits_slong_p()) throw std::domain_error("check_lambda_window: m out of range");
    return certify(
        [&](long digits) {
            LinearFormContext ctx = make_context(fam, fc, digits);
            HPReal lam = lambda_value(ctx, l, m);
            HPReal cap = ctx.beta.pow_int(-2 * m.get_si());
            Trilean pos = lam.sign_positive();
            Trilean below = lam.less_than(cap);
            if (pos == Trilean::False || below == Trilean::False) return Trilean::False;
            if (pos == Trilean::True && below == Trilean::True) return Trilean::True;
            return Trilean::Unknown;
        },
        digits_start, retries);
}

HPReal lower_bound_m(const Integer& delta_abs, const Integer& b, const HPReal& alpha) {
    if (delta_abs < 1) throw std::domain_error("lower_bound_m: |Delta| must be >= 1");
    if (b <= 4000) throw std::domain_error("lower_bound_m: requires b > 4000");
    long digits = alpha.digits();
    return dec("0.69", digits) * HPReal::exact(delta_abs, digits) *
           HPReal::exact(b, digits).sqrt() * alpha.log();
}

HeightBounds heights(const LinearFormContext& ctx, const Integer& delta) {
    HeightBounds out;
    out.below_analytic_regime = ctx.fam.pair.k < 1000;
    out.delta_lambda_abs = abs(delta + ctx.lambda);
    long d = ctx.digits;
    HPReal half = HPReal::from_ratio(1, 2, d);
    out.h1 = half * HPReal::from_long(ctx.nu, d) * ctx.log_alpha + dec("0.01", d);
    out.h2 = half * HPReal::exact(out.delta_lambda_abs + 3 + 2 * ctx.nu, d) * ctx.log_alpha +
             dec("0.01", d);

    SecondOrderSeq T = unit_T_seq(ctx.fam.pair);
    Integer Tnu = T.at(static_cast<std::size_t>(ctx.nu));
    Integer a1 = -4 * ctx.fam.s * Tnu;
    // Expanding the four conjugate factors gives e2 = 2s^2 + 4c + 2T^2 +
    // 4bU^2 + 2 = 4T^2 + 8c + 2 (using s^2 = 2c + 1 and T^2 - 2bU^2 = 1).
    Integer a2 = 4 * Tnu * Tnu + 8 * ctx.fam.c + 2;
    out.alpha1_minpoly = {Integer(1), a1, a2, a1, Integer(1)};
    return out;
}

HPReal alpha1_minpoly_residual(const LinearFormContext& ctx) {
    HeightBounds hb = heights(ctx, 1);
    HPReal x = ctx.alpha.pow_int(ctx.nu) / ctx.beta;
    HPReal acc = HPReal::from_long(0, ctx.digits);
    for (const Integer& coef : hb.alpha1_minpoly) {
        acc = acc * x + HPReal::exact(coef, ctx.digits);
    }
    return acc;
}

bool gamma_height_bound_holds(const LinearFormContext& ctx) {
    long d = ctx.digits;
    HPReal lhs = HPReal::from_ratio(1, 2, d) *
                 HPReal::exact(4 * ctx.fam.pair.r * ctx.fam.pair.b * ctx.fam.c, d).log();
    HPReal rhs = HPReal::from_ratio(3, 2, d) * ctx.log_alpha + ctx.log_beta;
    return lhs.less_than(rhs) == Trilean::True;
}

HPReal upper_bound_m(const LinearFormContext& ctx, const Integer& delta) {
    long d = ctx.digits;
    Integer factor = abs(delta + ctx.lambda) + 3 + 2 * ctx.nu;
    return dec("67578.15", d) * HPReal::exact(factor, d) * ctx.log_alpha + dec("1351.57", d);
}

namespace {

// Sign of 289.264 (log n + 0.38)^2 - n + 0.07, certified.
Trilean fixpoint_sign(const Integer& n, long digits) {
    HPReal lhs = dec("289.264", digits) *
                 (HPReal::exact(n, digits).log() + dec("0.38", digits)).pow_int(2);
    HPReal rhs = HPReal::exact(n, digits) - dec("0.07", digits);
    return rhs.less_than(lhs);
}

}  // namespace

Integer b_prime_fixpoint(long digits) {
    // Exponential search for a certified failure, then bisection; the
    // difference changes sign exactly once past its maximum.
    auto holds = [&](const Integer& n) {
        return certify([&](long d) { return fixpoint_sign(n, d); }, digits);
    };
    Integer hi = 2;
    while (holds(hi)) hi *= 2;
    Integer lo = hi / 2;
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (holds(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

Integer b_prime_small_branch(long digits) {
    // Largest n with log n <= 7.12, i.e. n = floor(e^7.12).
    HPReal cap = dec("7.12", digits).exp();
    Integer n = floor_of_upper(cap);
    // The endpoints could straddle an integer; settle by direct comparison.
    auto fits = [&](const Integer& v) {
        return certify(
            [&](long d) {
                return HPReal::exact(v, d).log().less_than(dec("7.12", d));
            },
            digits);
    };
    while (!fits(n)) n -= 1;
    while (fits(n + 1)) n += 1;
    return n;
}

BoundReport branch_bound_report(const TripleFamily& fam, const FundamentalCase& fc,
                                const Integer& delta_abs, long digits) {
    LinearFormContext ctx = make_context(fam, fc, digits);
    BoundReport rep{fam.pair.k, fam.nu, fam.sign, fc.lambda, delta_abs,
                    lower_bound_m(delta_abs, fam.pair.b, ctx.alpha),
                    upper_bound_m(ctx, delta_abs * (fc.lambda >= 0 ? 1 : -1)), false};
    // Worst case over the sign of Delta: |Delta + lambda| <= |Delta| + 1.
    HPReal worst_upper = dec("67578.15", digits) *
                             HPReal::exact(delta_abs + 1 + 3 + 2 * fam.nu, digits) * ctx.log_alpha +
                         dec("1351.57", digits);
    rep.upper = worst_upper;
    rep.contradiction = worst_upper.less_than(rep.lower) == Trilean::True;
    return rep;
}

bool k_excluded_by_bounds(const Integer& k, long digits) {
    Pair2B pair = pair_from_k(k);
    for (int nu = 1; nu <= 3; ++nu) {
        for (int sign : {1, -1}) {
            if (nu == 1 && sign == -1) continue;  // reordered alias of k-1
            TripleFamily fam = c_family(pair, nu, sign);
            for (const FundamentalCase& fc : lemma_cases(fam)) {
                BoundReport rep = branch_bound_report(fam, fc, 1, digits);
                if (!rep.contradiction) return false;
                // Monotone in |Delta|: the lower bound gains 0.69 sqrt(b)
                // log(alpha) per unit, the upper at most 67578.15 log(alpha).
                LinearFormContext ctx = make_context(fam, fc, digits);
                HPReal lhs = dec("67578.15", digits);
                HPReal rhs = dec("0.69", digits) * HPReal::exact(pair.b, digits).sqrt();
                if (lhs.less_than(rhs) != Trilean::True) return false;
            }
        }
    }
    return true;
}

GlobalBound global_k_bound(long digits, int nu_max) {
    if (nu_max < 1 || nu_max > 3) throw std::domain_error("global_k_bound: nu_max must be 1..3");
    // Exact rational maximization of (|Delta + lambda| + 3 + 2 nu) / |Delta|.
    mpq_class best = 0;
    for (int nu = 1; nu <= nu_max; ++nu) {
        for (int lambda : {-1, 0, 1}) {
            for (int da = 1; da <= 8; ++da) {
                int worst_num = da + std::abs(lambda);  // |Delta + lambda| at matching signs
                mpq_class ratio(worst_num + 3 + 2 * nu, da);
                ratio.canonicalize();
                best = std::max(best, ratio);
            }
        }
    }
    if (best != mpq_class(2 * nu_max + 5)) throw std::logic_error("global_k_bound: ratio maximization drifted");

    // sqrt(b) < 67578.15 * best / 0.69 + 1351.57 / (0.69 log alpha), with
    // alpha > r >= 2001 in the k >= 1000 regime.
    mpq_class c1 = mpq_class(6757815, 100) * best / mpq_class(69, 100);
    HPReal term1(digits);
    term1 = HPReal::from_ratio(c1.get_num(), c1.get_den(), digits);
    HPReal log_alpha_min = HPReal::exact(2001, digits).log();
    HPReal term2 = dec("1351.57", digits) / (dec("0.69", digits) * log_alpha_min);

    GlobalBound out{term1 + term2, 0};

    mpq_class limit_sq = out.sqrt_b_limit.upper_rational();
    limit_sq *= limit_sq;
    Integer lo = 1, hi = 2;
    auto below = [&](const Integer& k) { return mpq_class(2 * k * (k + 1)) < limit_sq; };
    while (below(hi)) hi *= 2;
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (below(mid)) lo = mid;
        else hi = mid;
    }
    out.k_max = lo;
    return out;
}

BdOutcome bd_reduce(const ReductionParams& params) {
    if (params.M < 1 || params.L < 1) throw std::domain_error("bd_reduce: M and L must be >= 1");
    if (HPReal::from_long(1, params.digits).less_than(params.B) != Trilean::True)
        throw std::domain_error("bd_reduce: B must be certified > 1");

    Integer q_floor = 6 * params.L;
    CertifiedConvergents cc = certified_convergents(params.kappa, q_floor, params.skip + 1);
    // Locate the first convergent past 6L, then apply the skip.
    std::size_t idx = cc.items.size();
    for (std::size_t i = 0; i < cc.items.size(); ++i) {
        if (cc.items[i].q > q_floor) {
            idx = i;
            break;
        }
    }
    if (idx == cc.items.size() || idx + params.skip >= cc.items.size()) {
        return {cc.rational_exhausted ? BdStatus::IncreaseQ : BdStatus::IncreasePrecision, 0, 0};
    }
    const Convergent& conv = cc.items[idx + params.skip];

    long d = params.digits;
    HPReal q_enc = HPReal::exact(conv.q, d);
    HPReal kq = (params.kappa * q_enc - HPReal::exact(conv.p, d)).abs();
    HPReal mu_q_dist = (params.mu * q_enc).dist_to_nearest_int();
    HPReal eps = mu_q_dist - HPReal::exact(params.L, d) * kq;

    Trilean pos = eps.sign_positive();
    if (pos == Trilean::False) return {BdStatus::IncreaseQ, 0, conv.q};
    if (pos == Trilean::Unknown) return {BdStatus::IncreasePrecision, 0, conv.q};

    HPReal bound = ((params.A * q_enc) / eps).log() / params.B.log();
    Integer m_cap = floor_of_upper(bound);
    if (m_cap < 0) m_cap = 0;
    return {BdStatus::NewBound, m_cap, conv.q};
}

const Integer& first_reduction_bound() {
    static const Integer m0("1330000000000000000");  // 1.33 * 10^18
    return m0;
}

long default_digits_for(const Integer& M) {
    long digits10 = static_cast<long>(mpz_sizeinbase(M.get_mpz_t(), 10));
    return 60 + 2 * digits10;
}

ReductionResult reduce_case(const TripleFamily& fam, const FundamentalCase& fc, const Integer& M0,
                            long digits) {
    ReductionResult res;
    res.final_bound = M0;
    long d = digits > 0 ? digits : default_digits_for(M0);
    int precision_bumps = 0;
    int skip = 0;

    LinearFormContext ctx = make_context(fam, fc, d);
    // The l-cap derivation leans on log(beta)/log(alpha) sitting within 1/2
    // of nu; certify that before trusting L(M).
    auto ratio_near_nu = [&](const LinearFormContext& c) {
        HPReal ratio = c.log_beta / c.log_alpha;
        HPReal nu_enc = HPReal::from_long(c.nu, c.digits);
        HPReal half = HPReal::from_ratio(1, 2, c.digits);
        return (ratio - nu_enc).abs().less_than(half) == Trilean::True;
    };
    if (!ratio_near_nu(ctx)) throw PrecisionExhausted("reduce_case: log beta / log alpha far from nu");

    Integer M = M0;
    while (res.rounds < 5) {
        // L(M) = nu M + |lambda| + ceil(2 sqrt(2) / (sqrt(b) log alpha) M) + 2.
        HPReal gap_term = HPReal::from_ratio(8, fam.pair.b, d).sqrt() /
                          ctx.log_alpha * HPReal::exact(M, d);
        Integer L = Integer(fam.nu) * M + abs(Integer(fc.lambda)) + ceil_of_upper(gap_term) + 2;

        ReductionParams params{ctx.log_alpha / ctx.log_beta,
                               ctx.log_gamma / ctx.log_beta,
                               HPReal::from_long(1, d) / ctx.log_beta,
                               ctx.beta * ctx.beta,
                               L,
                               M,
                               d,
                               skip};
        BdOutcome out = bd_reduce(params);
        if (out.status == BdStatus::IncreaseQ) {
            ++skip;
            if (skip > 60) {
                res.notes.push_back("exhausted convergents without positive eps");
                break;
            }
            continue;
        }
        if (out.status == BdStatus::IncreasePrecision) {
            ++precision_bumps;
            if (precision_bumps > 4) {
                res.notes.push_back("precision cap reached");
                break;
            }
            d *= 2;
            ctx = make_context(fam, fc, d);
            continue;
        }
        ++res.rounds;
        skip = 0;
        if (out.bound >= M) {
            res.converged = true;
            res.notes.push_back("bound stabilized");
            break;
        }
        M = out.bound;
        if (M <= 3) {
            res.converged = true;
            break;
        }
    }
    res.final_bound = M;
    res.digits_used = d;
    if (res.rounds >= 5 && !res.converged) res.notes.push_back("no convergence after 5 rounds");
    return res;
}

}  // namespace dioph
