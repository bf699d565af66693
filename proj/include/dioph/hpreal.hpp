// Certified real arithmetic: an enclosure [lo, hi] with outward-directed
// rounding at a configurable decimal precision. Strict inequalities are
// proved, never approximated: a comparison that the current enclosures cannot
// decide reports Unknown instead of guessing.

#pragma once

#include "dioph/integer.hpp"  // pulls gmp.h first so mpfr.h exposes the mpq interop

#include <mpfr.h>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace dioph {

enum class Trilean { False, True, Unknown };

inline bool known(Trilean t) { return t != Trilean::Unknown; }

// Raised when a comparison stays undecidable after the precision retry loop.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

class HPReal {
public:
    HPReal();  // [0, 0] at default precision
    explicit HPReal(long digits);
    HPReal(const HPReal& o);
    HPReal(HPReal&& o) noexcept;
    HPReal& operator=(const HPReal& o);
    HPReal& operator=(HPReal&& o) noexcept;
    ~HPReal();

    static HPReal exact(const Integer& v, long digits);
    static HPReal from_long(long v, long digits);
    static HPReal from_ratio(const Integer& num, const Integer& den, long digits);
    // Decimal literal such as "0.69" or "67578.15", enclosed outward.
    static HPReal from_decimal(const std::string& text, long digits);

    long digits() const { return digits_; }

    friend HPReal operator+(const HPReal& a, const HPReal& b);
    friend HPReal operator-(const HPReal& a, const HPReal& b);
    friend HPReal operator*(const HPReal& a, const HPReal& b);
    friend HPReal operator/(const HPReal& a, const HPReal& b);  // b must exclude 0
    HPReal operator-() const;

    HPReal sqrt() const;  // requires certified lo >= 0
    HPReal log() const;   // requires certified lo > 0
    HPReal exp() const;
    HPReal abs() const;
    HPReal pow_int(long e) const;

    Trilean less_than(const HPReal& o) const;
    Trilean greater_than(const HPReal& o) const { return o.less_than(*this); }
    Trilean sign_positive() const;  // value > 0
    Trilean sign_negative() const;

    bool surely_positive() const { return sign_positive() == Trilean::True; }
    bool surely_less(const HPReal& o) const { return less_than(o) == Trilean::True; }

    // Floor shared by every point of the enclosure, if pinned.
    std::optional<Integer> floor_if_certain() const;
    // Enclosure of the distance to the nearest integer. Falls back to the
    // uninformative [0, 1/2] when the enclosure straddles a half-integer.
    HPReal dist_to_nearest_int() const;

    // Exact rational endpoints (binary floats are rationals).
    mpq_class lower_rational() const;
    mpq_class upper_rational() const;

    bool contains(const HPReal& o) const;  // o subseteq this
    // Upper bound on hi - lo.
    mpq_class width_rational() const;

    std::string to_string(int display_digits = 20) const;

private:
    mpfr_t lo_, hi_;
    long digits_;
};

// Spec-level entry points: re-round the input to `digits` and evaluate.
HPReal hp_sqrt(const HPReal& x, long digits);
HPReal hp_log(const HPReal& x, long digits);

// Runs `pred` at precision p0, doubling up to `retries` times while the
// result is Unknown. Throws PrecisionExhausted if still undecided.
bool certify(const std::function<Trilean(long digits)>& pred, long p0 = 50, int retries = 4);

}  // namespace dioph
