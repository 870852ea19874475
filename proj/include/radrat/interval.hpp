#pragma once

/**
 * @file interval.hpp
 * @brief Closed real intervals with exact rational endpoints.
 *
 * Endpoints are exact, so the only rounding is the explicit outward rounding
 * to a dyadic grid (round_outward) that keeps endpoint sizes bounded. Every
 * operation returns an interval guaranteed to contain the exact result.
 */

#include "numeric.hpp"

#include <algorithm>
#include <ostream>

namespace radrat {

struct Interval {
    Rational lo;
    Rational hi;

    static Interval point(const Rational& r) { return {r, r}; }

    bool contains(const Rational& r) const { return lo <= r && r <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return Rational((lo + hi) / 2); }

    /// +1 / -1 when the interval lies strictly on one side of zero, 0 otherwise.
    int certain_sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }

    /// Widens both endpoints to multiples of 2^-bits.
    Interval round_outward(std::size_t bits) const {
        return {dyadic(floor(Rational(lo * Rational(shifted(BigInt(1), bits)))), bits),
                dyadic(ceil(Rational(hi * Rational(shifted(BigInt(1), bits)))), bits)};
    }
};

inline Interval operator-(const Interval& a) { return {Rational(-a.hi), Rational(-a.lo)}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return {Rational(a.lo + b.lo), Rational(a.hi + b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {Rational(a.lo - b.hi), Rational(a.hi - b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline Interval operator*(const Rational& c, const Interval& a) {
    if (sgn(c) >= 0) return {Rational(c * a.lo), Rational(c * a.hi)};
    return {Rational(c * a.hi), Rational(c * a.lo)};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an enclosure of zero");
    return a * Interval{Rational(1 / b.hi), Rational(1 / b.lo)};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << '[' << iv.lo.get_d() << ", " << iv.hi.get_d() << ']';
}

/// Enclosure of a^(1/q) for rational a >= 0, with endpoints on the 2^-bits grid.
inline Interval root_enclosure(const Rational& a, unsigned long q, std::size_t bits) {
    if (sgn(a) < 0) throw DomainError("root of a negative number");
    if (q == 1) return Interval::point(a);
    const Rational scale(shifted(BigInt(1), bits * q));
    const Rational scaled = a * scale;
    const BigInt f = floor(scaled);
    const BigInt c = ceil(scaled);
    BigInt lo = floor_root(f, q);
    BigInt hi = floor_root(c, q);
    if (pow(hi, q) != c) hi += 1;
    return {dyadic(lo, bits), dyadic(hi, bits)};
}

namespace detail {

// Enclosure of exp(x) for a single rational |x| <= 1/2, via the Taylor
// polynomial plus a geometric bound on the tail.
inline Interval exp_small(const Rational& x, std::size_t bits) {
    Rational sum = 1, term = 1;
    const Rational tolerance(Rational(1) / Rational(shifted(BigInt(1), bits + 2)));
    for (unsigned long n = 1;; ++n) {
        term = term * x / n;
        sum += term;
        // tail <= |term| * sum_{k>=1} (1/2)^k = |term|
        if (abs(term) < tolerance) {
            Rational tail = abs(term);
            return Interval{Rational(sum - tail), Rational(sum + tail)}.round_outward(bits + 2);
        }
    }
}

inline Interval exp_point(const Rational& x, std::size_t bits) {
    // exp(x) = exp(x / 2^r)^(2^r) with |x / 2^r| <= 1/2
    std::size_t r = 0;
    Rational y = x;
    while (abs(y) > Rational(1, 2)) {
        y /= 2;
        ++r;
    }
    const std::size_t work = bits + r + 16 + bit_length(ceil(abs(x)));
    Interval e = exp_small(y, work);
    for (std::size_t i = 0; i < r; ++i) e = (e * e).round_outward(work);
    return e;
}

} // namespace detail

/// Enclosure of exp over the interval (exp is monotone).
inline Interval exp_enclosure(const Interval& x, std::size_t bits) {
    return {detail::exp_point(x.lo, bits).lo, detail::exp_point(x.hi, bits).hi};
}

} // namespace radrat
