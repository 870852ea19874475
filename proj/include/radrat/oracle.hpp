#pragma once

/**
 * @file oracle.hpp
 * @brief Ground truth by brute force: integer points of a box tested by exact
 * substitution, equivalence of two systems on a box, and a seeded random
 * model generator.
 */

#include "rationalizer.hpp"

#include <optional>
#include <random>

namespace radrat {

using IntPoint = std::vector<long>;

/// Inclusive integer bounds per variable.
struct Box {
    std::vector<std::pair<long, long>> bounds;

    /// Same [lo, hi] for each of n variables.
    static Box uniform(std::size_t n, long lo, long hi) { return {std::vector<std::pair<long, long>>(n, {lo, hi})}; }

    /// Number of points, saturating at UINT64_MAX.
    std::uint64_t volume() const {
        std::uint64_t v = 1;
        for (const auto& [lo, hi] : bounds) {
            if (lo > hi) throw ContractError("box bound lo > hi");
            const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
            if (v > std::numeric_limits<std::uint64_t>::max() / width) return std::numeric_limits<std::uint64_t>::max();
            v *= width;
        }
        return v;
    }
};

namespace detail {

// One constraint with every coefficient pre-moved onto a shared basis, so
// substitution is plain same-basis field arithmetic.
struct CompiledConstraint {
    Relation relation;
    struct Group {
        RadicalNumber exponent;
        std::vector<std::pair<std::size_t, RadicalNumber>> terms;
        RadicalNumber rhs;
    };
    std::vector<Group> groups;
    bool exponents_independent = true;

    RadicalNumber group_residual(const Group& g, const IntPoint& x) const {
        RadicalNumber sum = -g.rhs;
        for (const auto& [j, a] : g.terms)
            if (x[j] != 0) sum += a.scaled(Rational(x[j]));
        return sum;
    }
};

inline CompiledConstraint compile(const Constraint& c) {
    CompiledConstraint out{c.relation, {}, true};
    const auto alphas = exp_exponents(c);
    std::vector<RadicalNumber> nonzero;
    for (const auto& a : alphas)
        if (!a.is_zero()) nonzero.push_back(a);
    out.exponents_independent = !check_q_independence(nonzero).has_value();
    for (const auto& alpha : alphas) {
        std::vector<RadicalNumber> values;
        std::vector<std::size_t> vars;
        for (const auto& [j, a] : c.terms) {
            RadicalNumber v = a.group(alpha);
            if (v.is_zero()) continue;
            vars.push_back(j);
            values.push_back(std::move(v));
        }
        values.push_back(c.rhs.group(alpha));
        auto unified = unify_bases(values).second;
        CompiledConstraint::Group g{alpha, {}, unified.back()};
        for (std::size_t k = 0; k < vars.size(); ++k) g.terms.emplace_back(vars[k], std::move(unified[k]));
        out.groups.push_back(std::move(g));
    }
    return out;
}

// sign(sum_a exp(a) r_a) by interval refinement; 0 only when every r_a is
// exactly zero, ResourceError when the precision cap is reached first.
inline int exp_sum_sign(const std::vector<std::pair<RadicalNumber, RadicalNumber>>& parts) {
    if (std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.is_zero(); })) return 0;
    for (std::size_t bits = limits().sign_start_bits; bits <= limits().precision_cap_bits; bits *= 2) {
        Interval total = Interval::point(0);
        for (const auto& [alpha, r] : parts) {
            if (r.is_zero()) continue;
            const Interval e = alpha.is_zero() ? Interval::point(1) : exp_enclosure(evaluate(alpha, bits), bits);
            total = total + e * evaluate(r, bits);
        }
        if (int s = total.certain_sign(); s != 0) return s;
    }
    throw ResourceError("could not decide the sign of an exp combination within the precision cap");
}

inline bool satisfied(const CompiledConstraint& c, const IntPoint& x) {
    if (c.groups.size() == 1 && c.groups.front().exponent.is_zero()) {
        const RadicalNumber r = c.group_residual(c.groups.front(), x);
        if (c.relation == Relation::equal) return r.is_zero();
        return relation_holds(sign(r), c.relation);
    }
    std::vector<std::pair<RadicalNumber, RadicalNumber>> parts;
    for (const auto& g : c.groups) parts.emplace_back(g.exponent, c.group_residual(g, x));
    const bool all_zero = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.is_zero(); });
    if (c.relation == Relation::equal) {
        if (all_zero) return true;
        if (c.exponents_independent) return false;
    }
    return relation_holds(exp_sum_sign(parts), c.relation);
}

} // namespace detail

/// Integer points of the box satisfying every constraint and sign bound of
/// m, in lexicographic order.
inline std::vector<IntPoint> feasible_points(const Model& m, const Box& box) {
    if (box.bounds.size() != m.variables.size())
        throw ContractError("box has " + std::to_string(box.bounds.size()) + " bounds for " +
                            std::to_string(m.variables.size()) + " variables");
    if (box.volume() > limits().enumeration_cap)
        throw ResourceError("box volume exceeds the enumeration cap of " + std::to_string(limits().enumeration_cap));

    std::vector<detail::CompiledConstraint> compiled;
    for (const auto& c : m.constraints) compiled.push_back(detail::compile(c));

    std::vector<IntPoint> out;
    const std::size_t n = m.variables.size();
    IntPoint x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = box.bounds[j].first;
    for (;;) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = !(m.variables[j].nonnegative && x[j] < 0);
        for (std::size_t i = 0; i < compiled.size() && ok; ++i) ok = detail::satisfied(compiled[i], x);
        if (ok) out.push_back(x);
        // odometer, last coordinate fastest
        std::size_t j = n;
        while (j > 0 && x[j - 1] == box.bounds[j - 1].second) {
            x[j - 1] = box.bounds[j - 1].first;
            --j;
        }
        if (j == 0) return out;
        ++x[j - 1];
    }
}

struct Equivalence {
    bool equal = true;
    /// First point, in lexicographic order, feasible for exactly one system.
    std::optional<IntPoint> counterexample;
};

inline Equivalence check_equivalence(const Model& original, const Model& rationalized, const Box& box) {
    if (original.variables.size() != rationalized.variables.size())
        throw ContractError("models have different variable spaces");
    const auto a = feasible_points(original, box);
    const auto b = feasible_points(rationalized, box);
    std::vector<IntPoint> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    if (diff.empty()) return {};
    return {false, diff.front()};
}

inline Equivalence check_equivalence(const Model& original, const RationalizedModel& rationalized, const Box& box) {
    return check_equivalence(original, rationalized.model, box);
}

/// True iff every equality of the original evaluates to exactly zero at the
/// point (all exp groups vanish separately).
inline bool substitution_zero_check(const Model& original, const std::vector<Rational>& point) {
    if (point.size() != original.variables.size()) throw ContractError("point has the wrong dimension");
    for (const auto& c : original.constraints) {
        if (c.relation != Relation::equal) continue;
        Coefficient sum = -c.rhs;
        for (const auto& [j, a] : c.terms) sum = sum + a * Coefficient(point[j]);
        if (!sum.is_zero()) return false;
    }
    return true;
}

inline bool substitution_zero_check(const Model& original, const IntPoint& point) {
    std::vector<Rational> q;
    for (long v : point) q.emplace_back(v);
    return substitution_zero_check(original, q);
}

/// Seeded random radical model: 1..4 free integer variables, 1..3 equalities
/// with coefficients r + s*rho (r, s in [-5,5]/[1,4], rho in {sqrt2, sqrt3,
/// cbrt2, cbrt5}); the rhs is computed from a random point of [-5,5]^n so the
/// model is feasible.
inline Model random_model(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vars(1, 4), rows(1, 3), num(-5, 5), den(1, 4), pick(0, 3), point(-5, 5),
        shape(0, 5);
    const std::vector<RadicalNumber> radicals{
        RadicalNumber::root_power(2, 2), RadicalNumber::root_power(3, 2), RadicalNumber::root_power(2, 3),
        RadicalNumber::root_power(5, 3)};
    auto rational = [&] { return make_rational(num(rng), den(rng)); };

    Model m;
    const int n = vars(rng);
    for (int j = 0; j < n; ++j) m.variables.push_back({"x" + std::to_string(j + 1), true, false});
    IntPoint x0;
    for (int j = 0; j < n; ++j) x0.push_back(point(rng));
    const int k = rows(rng);
    for (int i = 0; i < k; ++i) {
        Constraint c{"e" + std::to_string(i + 1), {}, Relation::equal, {}};
        RadicalNumber rhs;
        for (int j = 0; j < n; ++j) {
            // shape 0: absent, 1: rational only, 2: radical only, else both
            const int s = shape(rng);
            if (s == 0) continue;
            RadicalNumber a;
            if (s != 2) a += RadicalNumber(rational());
            if (s != 1) a += radicals[static_cast<std::size_t>(pick(rng))] * RadicalNumber(rational());
            if (a.is_zero()) continue;
            rhs += a * RadicalNumber(x0[static_cast<std::size_t>(j)]);
            c.terms.emplace(static_cast<std::size_t>(j), Coefficient(a));
        }
        c.rhs = Coefficient(rhs);
        m.constraints.push_back(std::move(c));
    }
    return m;
}

} // namespace radrat
