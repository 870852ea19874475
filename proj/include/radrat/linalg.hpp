#pragma once

/**
 * @file linalg.hpp
 * @brief Dense exact Gaussian elimination over any Field.
 */

#include "field.hpp"

#include <optional>
#include <vector>

namespace radrat {

template <class T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

// Reduced row echelon form in place; returns the pivot column of each pivot row.
template <Field T>
std::vector<std::size_t> row_reduce(Matrix<T>& a, std::size_t columns) {
    using F = field_traits<T>;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < columns && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && F::is_zero(a[p][col])) ++p;
        if (p == a.size()) continue;
        std::swap(a[row], a[p]);
        const T inv = F::inverse(a[row][col]);
        for (auto& v : a[row]) v = T(v * inv);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || F::is_zero(a[r][col])) continue;
            const T factor = a[r][col];
            for (std::size_t c = col; c < a[r].size(); ++c) a[r][c] = T(a[r][c] - factor * a[row][c]);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

/// Some x with a*x = b (free unknowns set to zero), or nullopt if inconsistent.
template <Field T>
std::optional<std::vector<T>> solve_linear(Matrix<T> a, const std::vector<T>& b) {
    using F = field_traits<T>;
    const std::size_t columns = a.empty() ? 0 : a.front().size();
    for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
    const auto pivots = detail::row_reduce(a, columns);
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (!F::is_zero(a[r][columns])) return std::nullopt;
    std::vector<T> x(columns, F::zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][columns];
    return x;
}

template <Field T>
std::size_t rank(Matrix<T> a) {
    const std::size_t columns = a.empty() ? 0 : a.front().size();
    return detail::row_reduce(a, columns).size();
}

} // namespace radrat
