#pragma once

/**
 * @file rationalizer.hpp
 * @brief Rewrites integer equalities with radical (and exp-radical)
 * coefficients as equivalent systems of rational equalities.
 *
 * An equality sum_j a_j x_j = b over integer x_j, with every a_j and b written
 * over one prime-root monomial basis, holds iff it holds coordinate-wise: for
 * integer x the left side's coordinate at each monomial is rational, and the
 * monomials are linearly independent over Q. Exp terms are first split into
 * one pure constraint per exponent, which is valid when the exponents are
 * linearly independent over Q.
 */

#include "linalg.hpp"
#include "model.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace radrat {

/// Exp exponents of one constraint are linearly dependent over Q.
class DependentExponentsError : public Error {
public:
    DependentExponentsError(const std::string& constraint, std::vector<RadicalNumber> exponents,
                            std::vector<Rational> witness)
        : Error(describe(constraint, exponents, witness)),
          exponents_(std::move(exponents)),
          witness_(std::move(witness)) {}

    const std::vector<RadicalNumber>& exponents() const noexcept { return exponents_; }
    /// Integer coefficients w with sum_i w_i * exponents_i = 0, not all zero.
    const std::vector<Rational>& witness() const noexcept { return witness_; }

private:
    static std::string describe(const std::string& constraint, const std::vector<RadicalNumber>& alphas,
                                const std::vector<Rational>& witness) {
        std::string out = "exp exponents of constraint '" + constraint + "' are dependent over Q:";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (sgn(witness[i]) == 0) continue;
            out += " " + std::string(sgn(witness[i]) < 0 ? "- " : "+ ") + to_string(Rational(abs(witness[i]))) +
                   "*(" + to_string(alphas[i]) + ")";
        }
        return out + " = 0";
    }

    std::vector<RadicalNumber> exponents_;
    std::vector<Rational> witness_;
};

/// Returns nullopt when the inputs are linearly independent over Q; otherwise
/// a primitive integer combination (first nonzero entry positive) that
/// vanishes. A zero input or a repeated input is dependent.
inline std::optional<std::vector<Rational>> check_q_independence(std::span<const RadicalNumber> alphas) {
    const auto [basis, unified] = unify_bases(alphas);
    // Coordinates only over monomials that occur somewhere.
    std::map<Monomial, std::size_t> row_of;
    for (const auto& a : unified)
        for (const auto& [m, c] : a.terms()) row_of.emplace(m, row_of.size());

    for (std::size_t k = 0; k < unified.size(); ++k) {
        Matrix<Rational> columns(row_of.size(), std::vector<Rational>(k));
        std::vector<Rational> target(row_of.size());
        for (std::size_t i = 0; i < k; ++i)
            for (const auto& [m, c] : unified[i].terms()) columns[row_of.at(m)][i] = c;
        for (const auto& [m, c] : unified[k].terms()) target[row_of.at(m)] = c;
        auto solution = solve_linear(columns, target);
        if (!solution) continue;

        std::vector<Rational> w(unified.size());
        for (std::size_t i = 0; i < k; ++i) w[i] = (*solution)[i];
        w[k] = -1;
        BigInt den_lcm = 1, num_gcd = 0;
        for (const auto& r : w) den_lcm = lcm(den_lcm, r.get_den());
        for (auto& r : w) {
            r *= den_lcm;
            num_gcd = gcd(num_gcd, r.get_num());
        }
        const auto first = std::find_if(w.begin(), w.end(), [](const Rational& r) { return sgn(r) != 0; });
        const int flip = sgn(*first) < 0 ? -1 : 1;
        for (auto& r : w) r = r * flip / num_gcd;
        return w;
    }
    return std::nullopt;
}

inline std::optional<std::vector<Rational>> check_q_independence(const std::vector<RadicalNumber>& alphas) {
    return check_q_independence(std::span<const RadicalNumber>(alphas));
}

namespace detail {

// Exponents occurring in a constraint, exponent 0 first, then canonical order.
inline std::vector<RadicalNumber> exp_exponents(const Constraint& c) {
    std::set<RadicalNumber, CanonicalLess> seen;
    for (const auto& [j, a] : c.terms)
        for (const auto& [alpha, v] : a.groups()) seen.insert(alpha);
    for (const auto& [alpha, v] : c.rhs.groups()) seen.insert(alpha);
    std::vector<RadicalNumber> out;
    if (seen.erase(RadicalNumber())) out.push_back(RadicalNumber());
    out.insert(out.end(), seen.begin(), seen.end());
    return out;
}

} // namespace detail

/// One pure constraint per exp exponent, exponent 0 first. A constraint with
/// no exp terms comes back unchanged. Split rows are named "{name}_g{k}".
inline std::vector<Constraint> split_exp_groups(const Constraint& c) {
    if (c.relation != Relation::equal)
        throw ContractError("exp-group splitting requires an equality; '" + c.name + "' is an inequality");
    if (c.is_pure()) return {c};
    const auto alphas = detail::exp_exponents(c);
    std::vector<RadicalNumber> nonzero;
    for (const auto& a : alphas)
        if (!a.is_zero()) nonzero.push_back(a);
    if (auto witness = check_q_independence(nonzero)) throw DependentExponentsError(c.name, nonzero, *witness);

    std::vector<Constraint> out;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        Constraint g{c.name + "_g" + std::to_string(k + 1), {}, Relation::equal, Coefficient(c.rhs.group(alphas[k]))};
        for (const auto& [j, a] : c.terms) {
            RadicalNumber v = a.group(alphas[k]);
            if (!v.is_zero()) g.terms.emplace(j, Coefficient(v));
        }
        out.push_back(std::move(g));
    }
    return out;
}

/// Coordinate rows of a pure equality, one per monomial carried by any of its
/// coefficients, in monomial order. Rows keep the raw coordinates; they are
/// named "{name}_m{k}".
inline std::vector<Constraint> rationalize_constraint(const Constraint& c, const std::vector<Variable>& variables,
                                                      RadicalBasis* basis_out = nullptr,
                                                      std::vector<Monomial>* monomials_out = nullptr) {
    if (c.relation != Relation::equal) throw ContractError("only equalities can be rationalized");
    if (!c.is_pure()) throw ContractError("constraint '" + c.name + "' still has exp terms");
    for (const auto& [j, a] : c.terms)
        if (!variables.at(j).integer)
            throw NotRationalizableError("constraint '" + c.name + "' involves continuous variable '" +
                                         variables[j].name + "'");

    std::vector<RadicalNumber> values;
    for (const auto& [j, a] : c.terms) values.push_back(a.pure_value());
    values.push_back(c.rhs.pure_value());
    const auto [basis, unified] = unify_bases(values);

    std::set<Monomial> monomials;
    for (const auto& v : unified)
        for (const auto& [m, q] : v.terms()) monomials.insert(m);

    std::vector<Constraint> rows;
    for (const auto& m : monomials) {
        Constraint row{c.name + "_m" + std::to_string(rows.size() + 1), {}, Relation::equal,
                       Coefficient(unified.back().coefficient(m))};
        std::size_t i = 0;
        for (const auto& [j, a] : c.terms) {
            const Rational d = unified[i++].coefficient(m);
            if (sgn(d) != 0) row.terms.emplace(j, Coefficient(d));
        }
        rows.push_back(std::move(row));
        if (monomials_out) monomials_out->push_back(m);
    }
    if (basis_out) *basis_out = basis;
    return rows;
}

/// Where an emitted row came from.
struct Provenance {
    std::string row;
    std::size_t source = 0;
    std::string source_name;
    RadicalNumber exponent;
    /// Exponent tuple over TransformReport::basis; empty for passed-through rows.
    Monomial monomial;
    bool passed_through = false;
};

struct TransformReport {
    RadicalBasis basis;
    std::uint64_t dimension = 1;
    std::size_t rows_in = 0;
    std::size_t rows_out = 0;
    std::size_t exp_groups = 0;
    std::size_t duplicates_removed = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> infeasible_rows;
};

struct RationalizedModel {
    Model model;
    /// Parallel to model.constraints.
    std::vector<Provenance> provenance;
};

namespace detail {

inline Monomial lift_monomial(const RadicalBasis& from, const Monomial& m, const RadicalBasis& to) {
    Monomial out(to.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        const std::size_t k = to.index_of(from[i].prime);
        out[k] = m[i] * (to[k].degree / from[i].degree);
    }
    return out;
}

// First nonzero left coefficient positive; rows without a left side get rhs > 0.
inline void normalize_sign(Constraint& row) {
    const Rational lead =
        row.terms.empty() ? row.rhs.pure_value().rational_part() : row.terms.begin()->second.pure_value().rational_part();
    if (sgn(lead) >= 0) return;
    for (auto& [j, a] : row.terms) a = -a;
    row.rhs = -row.rhs;
}

struct PendingRow {
    Constraint row;
    Provenance origin;
    RadicalBasis basis;
};

} // namespace detail

/// Equalities over integer variables become rational rows; inequalities and
/// equalities touching continuous variables pass through with a warning.
/// All-rational equalities pass through untouched.
inline std::pair<RationalizedModel, TransformReport> rationalize_model(const Model& m) {
    RationalizedModel out;
    TransformReport report;
    out.model.variables = m.variables;
    out.model.sense = m.sense;
    out.model.objective = m.objective;
    report.rows_in = m.constraints.size();

    std::vector<detail::PendingRow> pending;
    for (std::size_t s = 0; s < m.constraints.size(); ++s) {
        const Constraint& c = m.constraints[s];
        auto pass_through = [&](const std::string& why) {
            if (!why.empty()) report.warnings.push_back("constraint '" + c.name + "' passed through: " + why);
            pending.push_back({c, {c.name, s, c.name, RadicalNumber(), {}, true}, RadicalBasis()});
        };
        if (c.is_rational()) {
            pass_through("");
            continue;
        }
        if (c.relation != Relation::equal) {
            pass_through("inequalities are not rationalized (a real-valued slack breaks the argument)");
            continue;
        }
        const auto continuous = std::find_if(c.terms.begin(), c.terms.end(),
                                             [&](const auto& t) { return !m.variables[t.first].integer; });
        if (continuous != c.terms.end()) {
            pass_through("continuous variable '" + m.variables[continuous->first].name + "' in support");
            continue;
        }

        const auto alphas = detail::exp_exponents(c);
        const auto groups = split_exp_groups(c);
        if (!c.is_pure()) {
            report.exp_groups += groups.size();
            if (alphas.front().is_zero())
                report.warnings.push_back("constraint '" + c.name +
                                          "': exponent-0 group split off separately; only the nonzero exponents "
                                          "were checked for independence over Q");
        }
        for (std::size_t g = 0; g < groups.size(); ++g) {
            RadicalBasis basis;
            std::vector<Monomial> monomials;
            auto rows = rationalize_constraint(groups[g], m.variables, &basis, &monomials);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                detail::normalize_sign(rows[r]);
                pending.push_back({std::move(rows[r]), {"", s, c.name, alphas[g], monomials[r], false}, basis});
            }
        }
    }

    for (const auto& p : pending) report.basis = detail::merge_bases(report.basis, p.basis);
    report.dimension = report.basis.dimension();

    std::set<std::string> used;
    for (const auto& c : m.constraints) used.insert(c.name);
    std::map<std::size_t, std::size_t> emitted_per_source;
    std::vector<std::pair<LinearTerms, Coefficient>> seen;

    for (auto& p : pending) {
        Constraint& row = p.row;
        if (!p.origin.passed_through) {
            const auto key = std::make_pair(row.terms, row.rhs);
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
                ++report.duplicates_removed;
                continue;
            }
            seen.push_back(key);
            std::string name;
            do {
                name = p.origin.source_name + "_" + std::to_string(++emitted_per_source[p.origin.source]);
            } while (used.contains(name));
            used.insert(name);
            row.name = name;
            p.origin.monomial = detail::lift_monomial(p.basis, p.origin.monomial, report.basis);
            if (row.terms.empty()) report.infeasible_rows.push_back(row.name);
        }
        p.origin.row = row.name;
        out.model.constraints.push_back(std::move(row));
        out.provenance.push_back(std::move(p.origin));
    }
    report.rows_out = out.model.constraints.size();
    return {std::move(out), std::move(report)};
}

/// Structured report: basis, dimension, counts, warnings, infeasible rows, provenance.
inline nlohmann::ordered_json to_json(const TransformReport& report, const RationalizedModel& rm) {
    using nlohmann::ordered_json;
    ordered_json basis = ordered_json::array();
    for (const auto& f : report.basis) {
        const ordered_json prime = f.prime.fits_ulong_p() ? ordered_json(f.prime.get_ui()) : ordered_json(f.prime.get_str());
        basis.push_back({prime, f.degree});
    }
    ordered_json provenance = ordered_json::array();
    for (const auto& p : rm.provenance) {
        ordered_json entry;
        entry["row"] = p.row;
        entry["source"] = p.source_name;
        entry["source_index"] = p.source;
        if (p.passed_through) {
            entry["passed_through"] = true;
        } else {
            entry["exponent"] = to_string(p.exponent);
            entry["monomial"] = p.monomial;
        }
        provenance.push_back(std::move(entry));
    }
    ordered_json j;
    j["basis"] = std::move(basis);
    j["dimension"] = report.dimension;
    j["rows_in"] = report.rows_in;
    j["rows_out"] = report.rows_out;
    j["exp_groups"] = report.exp_groups;
    j["duplicates_removed"] = report.duplicates_removed;
    j["warnings"] = report.warnings;
    j["infeasible_rows"] = report.infeasible_rows;
    j["provenance"] = std::move(provenance);
    return j;
}

} // namespace radrat
