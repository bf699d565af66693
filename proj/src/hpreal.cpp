#include "dioph/hpreal.hpp"

#include <algorithm>
#include <cmath>

namespace dioph {

namespace {

constexpr long kDefaultDigits = 50;

mpfr_prec_t bits_for(long digits) {
    if (digits < 1) throw std::domain_error("HPReal: precision must be >= 1 digit");
    // log2(10) = 3.3219...; 32 guard bits absorb rounding in compositions.
    return static_cast<mpfr_prec_t>(digits * 3.33 + 0.5) + 32;
}

}  // namespace

HPReal::HPReal() : HPReal(kDefaultDigits) {}

HPReal::HPReal(long digits) : digits_(digits) {
    mpfr_prec_t p = bits_for(digits);
    mpfr_init2(lo_, p);
    mpfr_init2(hi_, p);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

HPReal::HPReal(const HPReal& o) : digits_(o.digits_) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

HPReal::HPReal(HPReal&& o) noexcept : digits_(o.digits_) {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

HPReal& HPReal::operator=(const HPReal& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
        digits_ = o.digits_;
    }
    return *this;
}

HPReal& HPReal::operator=(HPReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        digits_ = o.digits_;
    }
    return *this;
}

HPReal::~HPReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

HPReal HPReal::exact(const Integer& v, long digits) {
    HPReal r(digits);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

HPReal HPReal::from_long(long v, long digits) {
    HPReal r(digits);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

HPReal HPReal::from_ratio(const Integer& num, const Integer& den, long digits) {
    if (den == 0) throw std::domain_error("HPReal::from_ratio: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    HPReal r(digits);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

HPReal HPReal::from_decimal(const std::string& text, long digits) {
    // Parse sign / integer part / fraction part into an exact rational.
    std::string t = text;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    auto dot = t.find('.');
    std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
    if (ip.empty()) ip = "0";
    Integer num(ip + fp, 10);  // explicit base: leading zeros must not mean octal
    Integer den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    if (neg) num = -num;
    return from_ratio(num, den, digits);
}

HPReal operator+(const HPReal& a, const HPReal& b) {
    HPReal r(std::max(a.digits_, b.digits_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

HPReal operator-(const HPReal& a, const HPReal& b) {
    HPReal r(std::max(a.digits_, b.digits_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

HPReal operator*(const HPReal& a, const HPReal& b) {
    HPReal r(std::max(a.digits_, b.digits_));
    mpfr_t c, m;
    mpfr_init2(c, mpfr_get_prec(r.lo_));
    mpfr_init2(m, mpfr_get_prec(r.lo_));
    // lo: min of the four corner products rounded down
    mpfr_mul(m, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(c, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(m, m, c, MPFR_RNDD);
    mpfr_mul(c, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(m, m, c, MPFR_RNDD);
    mpfr_mul(c, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(m, m, c, MPFR_RNDD);
    mpfr_set(r.lo_, m, MPFR_RNDD);
    // hi: max of the four rounded up
    mpfr_mul(m, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(c, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(m, m, c, MPFR_RNDU);
    mpfr_mul(c, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(m, m, c, MPFR_RNDU);
    mpfr_mul(c, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(m, m, c, MPFR_RNDU);
    mpfr_set(r.hi_, m, MPFR_RNDU);
    mpfr_clear(c);
    mpfr_clear(m);
    return r;
}

HPReal operator/(const HPReal& a, const HPReal& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
        throw std::domain_error("HPReal: division by an interval containing zero");
    HPReal r(std::max(a.digits_, b.digits_));
    mpfr_t c, m;
    mpfr_init2(c, mpfr_get_prec(r.lo_));
    mpfr_init2(m, mpfr_get_prec(r.lo_));
    mpfr_div(m, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(c, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(m, m, c, MPFR_RNDD);
    mpfr_div(c, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(m, m, c, MPFR_RNDD);
    mpfr_div(c, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(m, m, c, MPFR_RNDD);
    mpfr_set(r.lo_, m, MPFR_RNDD);
    mpfr_div(m, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(c, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(m, m, c, MPFR_RNDU);
    mpfr_div(c, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(m, m, c, MPFR_RNDU);
    mpfr_div(c, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(m, m, c, MPFR_RNDU);
    mpfr_set(r.hi_, m, MPFR_RNDU);
    mpfr_clear(c);
    mpfr_clear(m);
    return r;
}

HPReal HPReal::operator-() const {
    HPReal r(digits_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

HPReal HPReal::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("HPReal::sqrt: sign not certified nonnegative");
    HPReal r(digits_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

HPReal HPReal::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("HPReal::log: sign not certified positive");
    HPReal r(digits_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

HPReal HPReal::exp() const {
    HPReal r(digits_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

HPReal HPReal::abs() const {
    HPReal r(digits_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    mpfr_set_zero(r.lo_, 1);
    mpfr_t na;
    mpfr_init2(na, mpfr_get_prec(hi_));
    mpfr_neg(na, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, na, hi_, MPFR_RNDU);
    mpfr_clear(na);
    return r;
}

HPReal HPReal::pow_int(long e) const {
    if (e == 0) return from_long(1, digits_);
    if (e < 0) return from_long(1, digits_) / pow_int(-e);
    HPReal acc = from_long(1, digits_);
    HPReal base = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

Trilean HPReal::less_than(const HPReal& o) const {
    if (mpfr_cmp(hi_, o.lo_) < 0) return Trilean::True;
    if (mpfr_cmp(lo_, o.hi_) >= 0) return Trilean::False;
    return Trilean::Unknown;
}

Trilean HPReal::sign_positive() const {
    if (mpfr_sgn(lo_) > 0) return Trilean::True;
    if (mpfr_sgn(hi_) <= 0) return Trilean::False;
    return Trilean::Unknown;
}

Trilean HPReal::sign_negative() const {
    if (mpfr_sgn(hi_) < 0) return Trilean::True;
    if (mpfr_sgn(lo_) >= 0) return Trilean::False;
    return Trilean::Unknown;
}

std::optional<Integer> HPReal::floor_if_certain() const {
    Integer flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi_, MPFR_RNDD);
    if (flo == fhi) return flo;
    return std::nullopt;
}

HPReal HPReal::dist_to_nearest_int() const {
    HPReal half = from_ratio(1, 2, digits_);
    // Nearest integer to the midpoint; exactness of the midpoint is
    // irrelevant, only the resulting enclosure matters.
    mpfr_t mid;
    mpfr_init2(mid, mpfr_get_prec(lo_));
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    Integer n;
    mpfr_get_z(n.get_mpz_t(), mid, MPFR_RNDN);
    mpfr_clear(mid);
    HPReal d = (*this - exact(n, digits_)).abs();
    if (d.less_than(half) == Trilean::True || mpfr_cmp_q(d.hi_, half.lower_rational().get_mpq_t()) <= 0) {
        return d;
    }
    // Straddles a half-integer: only [0, 1/2] is safe.
    HPReal wide(digits_);
    mpfr_set_zero(wide.lo_, 1);
    mpfr_set(wide.hi_, half.hi_, MPFR_RNDU);
    return wide;
}

mpq_class HPReal::lower_rational() const {
    if (!mpfr_number_p(lo_)) throw std::runtime_error("HPReal: non-finite endpoint");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

mpq_class HPReal::upper_rational() const {
    if (!mpfr_number_p(hi_)) throw std::runtime_error("HPReal: non-finite endpoint");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

bool HPReal::contains(const HPReal& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(o.hi_, hi_) <= 0;
}

mpq_class HPReal::width_rational() const { return upper_rational() - lower_rational(); }

std::string HPReal::to_string(int display_digits) const {
    char* s = nullptr;
    std::string out;
    mpfr_t mid;
    mpfr_init2(mid, mpfr_get_prec(lo_));
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    if (mpfr_asprintf(&s, "%.*Rg", display_digits, mid) >= 0) {
        out = s;
        mpfr_free_str(s);
    }
    mpfr_clear(mid);
    return out;
}

HPReal hp_sqrt(const HPReal& x, long digits) {
    HPReal y(digits);
    y = y + x;  // re-round at the requested precision
    return y.sqrt();
}

HPReal hp_log(const HPReal& x, long digits) {
    HPReal y(digits);
    y = y + x;
    return y.log();
}

bool certify(const std::function<Trilean(long)>& pred, long p0, int retries) {
    long p = p0;
    for (int attempt = 0; attempt <= retries; ++attempt) {
        Trilean t = pred(p);
        if (t == Trilean::True) return true;
        if (t == Trilean::False) return false;
        p *= 2;
    }
    throw PrecisionExhausted("comparison undecidable after precision retries");
}

}  // namespace dioph
