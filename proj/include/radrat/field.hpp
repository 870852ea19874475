#pragma once

#include "numeric.hpp"

#include <concepts>

namespace radrat {

/// Customization point describing an exact field. Specialized for Rational
/// here and for RadicalNumber in radical.hpp.
template <class T>
struct field_traits;

template <>
struct field_traits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static int sign(const Rational& x) { return sgn(x); }
    static Rational inverse(const Rational& x) {
        if (sgn(x) == 0) throw DomainError("inverse of zero");
        return Rational(1 / x);
    }
};

template <class T>
concept Field = std::regular<T> && requires(const T& a, const T& b) {
    { T(a + b) };
    { T(a - b) };
    { T(a * b) };
    { T(-a) };
    { field_traits<T>::zero() } -> std::convertible_to<T>;
    { field_traits<T>::one() } -> std::convertible_to<T>;
    { field_traits<T>::is_zero(a) } -> std::convertible_to<bool>;
    { field_traits<T>::inverse(a) } -> std::convertible_to<T>;
};

/// A field with an exact, total order compatible with its arithmetic.
template <class T>
concept OrderedField = Field<T> && requires(const T& a) {
    { field_traits<T>::sign(a) } -> std::convertible_to<int>;
};

} // namespace radrat
