#pragma once

/**
 * @file model.hpp
 * @brief Integer-program data model: variables, exp-grouped coefficients,
 * constraints, and the model itself.
 */

#include "radical.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radrat {

/// A finite sum  sum_a exp(a) * v_a  with a and v_a in the radical field.
/// The a = 0 group is the plain radical part; a coefficient without exp
/// terms has only that group. Keys and values are stored minimized.
class Coefficient {
public:
    using Groups = std::map<RadicalNumber, RadicalNumber, CanonicalLess>;

    Coefficient() = default;
    Coefficient(const RadicalNumber& value) { add_group(RadicalNumber(), value); }
    Coefficient(const Rational& value) : Coefficient(RadicalNumber(value)) {}
    Coefficient(long value) : Coefficient(RadicalNumber(value)) {}

    /// exp(alpha).
    static Coefficient exp(const RadicalNumber& alpha) {
        Coefficient c;
        c.add_group(alpha, RadicalNumber(1));
        return c;
    }

    const Groups& groups() const { return groups_; }

    bool is_zero() const { return groups_.empty(); }

    /// No exp terms: at most the a = 0 group.
    bool is_pure() const { return groups_.empty() || (groups_.size() == 1 && groups_.begin()->first.is_zero()); }

    bool is_rational() const { return is_pure() && pure_value().is_rational(); }

    /// Value of the a = 0 group (zero if absent).
    RadicalNumber pure_value() const { return group(RadicalNumber()); }

    RadicalNumber group(const RadicalNumber& alpha) const {
        auto it = groups_.find(alpha);
        return it == groups_.end() ? RadicalNumber() : it->second;
    }

    Coefficient operator-() const {
        Coefficient out = *this;
        for (auto& g : out.groups_) g.second = -g.second;
        return out;
    }

    friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
        Coefficient out = a;
        for (const auto& [alpha, v] : b.groups_) out.add_group(alpha, v);
        return out;
    }

    friend Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }

    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        Coefficient out;
        for (const auto& [alpha, v] : a.groups_)
            for (const auto& [beta, w] : b.groups_) out.add_group(alpha + beta, v * w);
        return out;
    }

    /// Inverse of a single-group coefficient: (exp(a) v)^-1 = exp(-a) v^-1.
    Coefficient inverse() const {
        if (is_zero()) throw DomainError("division by zero");
        if (groups_.size() != 1) throw DomainError("cannot divide by a sum of exponential terms");
        Coefficient out;
        out.add_group(-groups_.begin()->first, invert(groups_.begin()->second));
        return out;
    }

    friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.groups_ == b.groups_; }

private:
    void add_group(const RadicalNumber& alpha, const RadicalNumber& value) {
        if (value.is_zero()) return;
        auto key = alpha.minimized();
        auto it = groups_.find(key);
        if (it == groups_.end()) {
            groups_.emplace(std::move(key), value.minimized());
            return;
        }
        auto sum = (it->second + value).minimized();
        if (sum.is_zero()) groups_.erase(it);
        else it->second = std::move(sum);
    }

    Groups groups_;
};

/// Canonical text, parseable by the model grammar: the a = 0 part first,
/// then "exp(a) * (v)" groups.
inline std::string to_string(const Coefficient& c) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& [alpha, v] : c.groups()) {
        if (!out.empty()) out += " + ";
        if (alpha.is_zero()) out += to_string(v);
        else if (v == RadicalNumber(1)) out += "exp(" + to_string(alpha) + ")";
        else out += "exp(" + to_string(alpha) + ") * (" + to_string(v) + ")";
    }
    return out;
}

struct Variable {
    std::string name;
    bool integer = false;
    /// true: x >= 0; false: free.
    bool nonnegative = false;

    bool operator==(const Variable&) const = default;
};

enum class Relation { equal, less_equal, greater_equal };

inline const char* to_string(Relation r) {
    switch (r) {
    case Relation::equal: return "=";
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    }
    return "?";
}

/// Whether lhs - rhs having the given sign satisfies the relation.
inline bool relation_holds(int sign_of_difference, Relation r) {
    switch (r) {
    case Relation::equal: return sign_of_difference == 0;
    case Relation::less_equal: return sign_of_difference <= 0;
    case Relation::greater_equal: return sign_of_difference >= 0;
    }
    return false;
}

/// Variable index -> nonzero coefficient.
using LinearTerms = std::map<std::size_t, Coefficient>;

/// sum_j terms[j] x_j  (relation)  rhs
struct Constraint {
    std::string name;
    LinearTerms terms;
    Relation relation = Relation::equal;
    Coefficient rhs;

    bool operator==(const Constraint&) const = default;

    bool is_pure() const {
        return rhs.is_pure() && std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second.is_pure(); });
    }

    bool is_rational() const {
        return rhs.is_rational() &&
               std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second.is_rational(); });
    }
};

enum class Sense { maximize, minimize };

struct Model {
    std::vector<Variable> variables;
    Sense sense = Sense::maximize;
    LinearTerms objective;
    std::vector<Constraint> constraints;

    bool operator==(const Model&) const = default;

    std::optional<std::size_t> find_variable(const std::string& name) const {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i].name == name) return i;
        return std::nullopt;
    }

    bool has_exp_terms() const {
        auto pure = [](const LinearTerms& t) {
            return std::all_of(t.begin(), t.end(), [](const auto& e) { return e.second.is_pure(); });
        };
        return !pure(objective) ||
               !std::all_of(constraints.begin(), constraints.end(), [](const Constraint& c) { return c.is_pure(); });
    }

    bool is_rational() const {
        return std::all_of(objective.begin(), objective.end(), [](const auto& e) { return e.second.is_rational(); }) &&
               std::all_of(constraints.begin(), constraints.end(), [](const Constraint& c) { return c.is_rational(); });
    }
};

} // namespace radrat
