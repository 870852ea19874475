#pragma once

/**
 * @file numeric.hpp
 * @brief Exact integers and rationals plus the number-theoretic primitives
 * (gcd, factorization, exact k-th roots) the radical field is built on.
 *
 * BigInt and Rational are GMP's C++ classes. Rationals are kept canonical:
 * gcd(|num|, den) = 1, den >= 1, and zero is 0/1. Anything built from a raw
 * numerator/denominator pair must go through make_rational().
 */

#include "errors.hpp"
#include "limits.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace radrat {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline Rational pow(const Rational& base, unsigned long exponent) {
    return Rational(pow(BigInt(base.get_num()), exponent), pow(BigInt(base.get_den()), exponent));
}

inline std::size_t bit_length(const BigInt& n) {
    return sgn(n) == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (sgn(den) == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt floor(const Rational& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline BigInt ceil(const Rational& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/// Exact dyadic r / 2^shift.
inline Rational dyadic(const BigInt& r, std::size_t shift) {
    Rational q(r);
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), shift);
    return q;
}

inline BigInt shifted(const BigInt& n, std::size_t shift) {
    BigInt r;
    mpz_mul_2exp(r.get_mpz_t(), n.get_mpz_t(), shift);
    return r;
}

inline BigInt parse_bigint(std::string_view text) {
    BigInt n;
    std::string s(text);
    if (s.empty() || n.set_str(s, 10) != 0) throw DomainError("malformed integer '" + s + "'");
    return n;
}

/// Parses "p" or "p/q" in base 10.
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    return make_rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

inline std::string to_string(const BigInt& n) { return n.get_str(10); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Primes strictly increasing, exponents >= 1.
using PrimeFactorization = std::vector<PrimePower>;

namespace detail {

inline bool is_probable_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or nullopt once
// the iteration budget is spent.
inline std::optional<BigInt> pollard_rho(const BigInt& n, std::uint64_t budget) {
    if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
    std::uint64_t spent = 0;
    for (unsigned long c = 1; spent < budget; ++c) {
        auto step = [&](const BigInt& v) {
            BigInt next = v * v + c;
            mpz_mod(next.get_mpz_t(), next.get_mpz_t(), n.get_mpz_t());
            return next;
        };
        BigInt y = 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t batch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = step(y);
            spent += r;
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                std::uint64_t len = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < len; ++i) {
                    y = step(y);
                    BigInt diff = abs(x - y);
                    q = q * diff;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                spent += len;
                g = radrat::gcd(q, n);
            }
            r *= 2;
        } while (g == 1 && spent < budget);
        if (g == n) {
            do {
                ys = step(ys);
                g = radrat::gcd(abs(x - ys), n);
                ++spent;
            } while (g == 1 && spent < budget);
        }
        if (g != 1 && g != n) return g;
    }
    return std::nullopt;
}

inline void split_into_primes(const BigInt& n, std::vector<BigInt>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    auto factor = pollard_rho(n, limits().rho_iteration_budget);
    if (!factor)
        throw ResourceError("factorization of " + to_string(n) + " exceeded the effort budget");
    split_into_primes(*factor, primes);
    split_into_primes(n / *factor, primes);
}

} // namespace detail

/// Canonical prime factorization of n >= 2: trial division below the configured
/// bound, then Pollard rho on whatever cofactor remains.
inline PrimeFactorization factorize(const BigInt& n) {
    if (n < 2) throw DomainError("factorize requires n >= 2, got " + to_string(n));
    std::vector<BigInt> primes;
    BigInt m = n;
    const std::uint64_t bound = limits().trial_division_bound;
    for (unsigned long d = 2; d < bound; d += (d == 2 ? 1 : 2)) {
        if (BigInt(d) * d > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            primes.emplace_back(d);
            m /= d;
        }
    }
    if (m > 1) {
        if (BigInt(bound) * bound > m) primes.push_back(m);
        else detail::split_into_primes(m, primes);
    }
    std::sort(primes.begin(), primes.end());
    PrimeFactorization out;
    for (const auto& p : primes) {
        if (!out.empty() && out.back().prime == p) ++out.back().exponent;
        else out.push_back({p, 1});
    }
    return out;
}

/// r with r^k = n if such an integer exists; nullopt means n^(1/k) is irrational.
/// Binary search on the magnitude, bracketed by the bit length of n.
inline std::optional<BigInt> integer_root(const BigInt& n, unsigned long k) {
    if (n < 1 || k < 1) throw DomainError("integer_root requires n >= 1 and k >= 1");
    if (k == 1 || n == 1) return n;
    const std::size_t bits = bit_length(n);
    BigInt lo = shifted(BigInt(1), (bits - 1) / k);
    BigInt hi = shifted(BigInt(1), (bits + k - 1) / k);
    // invariant: lo^k <= n < hi^k
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (pow(mid, k) <= n) lo = mid;
        else hi = mid;
    }
    if (pow(lo, k) == n) return lo;
    return std::nullopt;
}

/// floor(n^(1/k)) for n >= 0. Used by interval evaluation where operands get large.
inline BigInt floor_root(const BigInt& n, unsigned long k) {
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

} // namespace radrat
