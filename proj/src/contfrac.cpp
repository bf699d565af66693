#include "dioph/contfrac.hpp"

namespace dioph {

ContinuedFraction cf_sqrt(const Integer& D) {
    if (D < 2) throw std::domain_error("cf_sqrt: D must be >= 2");
    Integer a0 = isqrt_floor(D);
    if (a0 * a0 == D) throw std::domain_error("cf_sqrt: D is a perfect square");

    ContinuedFraction cf;
    cf.head.push_back(a0);

    // State recursion for (m + sqrt(D)) / q; all arithmetic exact.
    Integer m = 0, q = 1;
    Integer first_m, first_q;
    bool have_first = false;
    for (;;) {
        m = cf.period.empty() ? a0 * q - m : cf.period.back() * q - m;
        q = (D - m * m) / q;
        Integer a = (a0 + m) / q;
        if (!have_first) {
            first_m = m;
            first_q = q;
            have_first = true;
        } else if (m == first_m && q == first_q) {
            break;  // state repeated: one full period collected
        }
        cf.period.push_back(a);
        if (cf.period.size() > 100000000)
            throw std::runtime_error("cf_sqrt: period did not close");
    }
    return cf;
}

ContinuedFraction cf_rational(const Integer& num, const Integer& den) {
    if (den <= 0) throw std::domain_error("cf_rational: denominator must be positive");
    ContinuedFraction cf;
    Integer a = num, b = den;
    while (b != 0) {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        cf.head.push_back(q);
        a = b;
        b = r;
    }
    // Canonical form: [..., a, 1] -> [..., a+1].
    if (cf.head.size() > 1 && cf.head.back() == 1) {
        cf.head.pop_back();
        cf.head.back() += 1;
    }
    return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count) {
    if (count < 1) throw std::domain_error("convergents: count must be >= 1");
    std::vector<Convergent> out;
    Integer p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    Integer p_pprev = 0, q_pprev = 1;
    std::size_t emitted = 0;
    std::size_t idx = 0;
    while (emitted < count) {
        Integer a;
        if (idx < cf.head.size()) {
            a = cf.head[idx];
        } else if (cf.periodic()) {
            a = cf.period[(idx - cf.head.size()) % cf.period.size()];
        } else {
            break;  // rational exhausted
        }
        Integer p = a * p_prev + p_pprev;
        Integer q = a * q_prev + q_pprev;
        out.push_back({p, q});
        p_pprev = p_prev;
        q_pprev = q_prev;
        p_prev = p;
        q_prev = q;
        ++idx;
        ++emitted;
    }
    return out;
}

CertifiedConvergents certified_convergents(const HPReal& x, const Integer& q_target, int extra) {
    CertifiedConvergents out;
    // Exact rational endpoints; the continued-fraction step is applied to
    // both, emitting a quotient only when both floors match.
    mpq_class lo = x.lower_rational();
    mpq_class hi = x.upper_rational();
    bool point = lo == hi;

    Integer p_prev = 1, q_prev = 0;
    Integer p_pprev = 0, q_pprev = 1;
    int beyond = 0;

    for (;;) {
        Integer flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        if (flo != fhi) return out;  // quotient not pinned by the enclosure

        Integer p = flo * p_prev + p_pprev;
        Integer q = flo * q_prev + q_pprev;
        out.items.push_back({p, q});
        if (q > q_target) {
            out.reached_target = true;
            if (beyond >= extra) return out;
            ++beyond;
        }
        p_pprev = p_prev;
        q_pprev = q_prev;
        p_prev = p;
        q_prev = q;

        mpq_class frac_lo = lo - mpq_class(flo);
        mpq_class frac_hi = hi - mpq_class(fhi);
        if (frac_lo == 0 || frac_hi == 0) {
            out.rational_exhausted = point && frac_lo == 0 && frac_hi == 0;
            return out;
        }
        // Reciprocal flips the order.
        mpq_class nlo = 1 / frac_hi;
        mpq_class nhi = 1 / frac_lo;
        lo = nlo;
        hi = nhi;
    }
}

}  // namespace dioph
