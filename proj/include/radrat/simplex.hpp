#pragma once

/**
 * @file simplex.hpp
 * @brief Two-phase dense-tableau simplex with Bland's rule over any exact
 * ordered field, with certificates that verify_outcome() rechecks exactly.
 *
 * The LP relaxation of a Model is brought into standard form internally:
 * free variables split as x = x+ - x-, a slack per <= row, a surplus per >=
 * row, rows with negative rhs negated, and one artificial per row.
 */

#include "model.hpp"

#include <json.hpp>

#include <variant>

namespace radrat {

struct LpOptimal {
    RadicalNumber value;
    std::vector<RadicalNumber> point;
    /// Dual multiplier per constraint; b.y equals the optimal value.
    std::vector<RadicalNumber> duals;
    /// Labels of the final basic columns, row by row.
    std::vector<std::string> basis;

    bool operator==(const LpOptimal&) const = default;
};

struct LpUnbounded {
    std::vector<RadicalNumber> point;
    /// Recession direction along which the objective improves without bound.
    std::vector<RadicalNumber> ray;

    bool operator==(const LpUnbounded&) const = default;
};

struct LpInfeasible {
    /// Optimal phase-1 value (sum of artificials), strictly positive.
    RadicalNumber phase1_value;
    /// Farkas multipliers per constraint; y.b = -phase1_value.
    std::vector<RadicalNumber> farkas;

    bool operator==(const LpInfeasible&) const = default;
};

using LpOutcome = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

enum class FieldChoice { automatic, rational, radical };

namespace detail {

template <class T>
T field_value(const RadicalNumber& x) {
    if constexpr (std::same_as<T, Rational>) {
        if (!x.is_rational()) throw ContractError("irrational coefficient in a rational-field solve");
        return x.rational_part();
    } else {
        return x;
    }
}

template <class T>
RadicalNumber radical_value(const T& x) {
    if constexpr (std::same_as<T, Rational>) return RadicalNumber(x);
    else return x.minimized();
}

template <OrderedField T>
class Tableau {
public:
    using F = field_traits<T>;

    struct Column {
        std::string label;
        std::size_t variable;  // original variable index, or npos
        int orientation;       // +1 / -1 for split variables
        bool artificial;
    };

    Tableau(const Model& m, std::vector<std::vector<T>> a, std::vector<T> b, std::vector<T> c) : model_(m) {
        const std::size_t rows = m.constraints.size();
        for (std::size_t j = 0; j < m.variables.size(); ++j) {
            const auto& v = m.variables[j];
            columns_.push_back({v.nonnegative ? v.name : v.name + "+", j, 1, false});
            if (!v.nonnegative) columns_.push_back({v.name + "-", j, -1, false});
        }
        for (std::size_t i = 0; i < rows; ++i) {
            const Relation r = m.constraints[i].relation;
            if (r == Relation::less_equal) columns_.push_back({"slack_" + m.constraints[i].name, npos, 1, false});
            if (r == Relation::greater_equal) columns_.push_back({"surplus_" + m.constraints[i].name, npos, -1, false});
        }
        first_artificial_ = columns_.size();
        for (std::size_t i = 0; i < rows; ++i) columns_.push_back({"art_" + m.constraints[i].name, npos, 1, true});

        const std::size_t n = columns_.size();
        t_.assign(rows, std::vector<T>(n + 1, F::zero()));
        flip_.assign(rows, 1);
        std::size_t slack = m.variables.size();
        for (const auto& v : m.variables)
            if (!v.nonnegative) ++slack;
        for (std::size_t i = 0; i < rows; ++i) {
            std::size_t col = 0;
            for (std::size_t j = 0; j < m.variables.size(); ++j) {
                t_[i][col++] = a[i][j];
                if (!m.variables[j].nonnegative) t_[i][col++] = T(-a[i][j]);
            }
            if (m.constraints[i].relation == Relation::less_equal) t_[i][slack++] = F::one();
            if (m.constraints[i].relation == Relation::greater_equal) t_[i][slack++] = T(-F::one());
            t_[i][first_artificial_ + i] = F::one();
            t_[i][n] = b[i];
            if (F::sign(b[i]) < 0) {
                flip_[i] = -1;
                for (std::size_t k = 0; k < n + 1; ++k)
                    if (k != first_artificial_ + i) t_[i][k] = T(-t_[i][k]);
            }
            basis_.push_back(first_artificial_ + i);
        }
        // Phase-2 cost in maximize form.
        sense_ = m.sense == Sense::maximize ? 1 : -1;
        cost_.assign(n, F::zero());
        for (std::size_t k = 0; k < first_artificial_; ++k)
            if (columns_[k].variable != npos)
                cost_[k] = sense_ * columns_[k].orientation > 0 ? c[columns_[k].variable] : T(-c[columns_[k].variable]);
    }

    LpOutcome solve() {
        const std::size_t n = columns_.size();
        std::vector<T> phase1(n, F::zero());
        for (std::size_t k = first_artificial_; k < n; ++k) phase1[k] = T(-F::one());
        run(phase1, true);
        const T infeasibility = T(-objective(phase1));
        if (F::sign(infeasibility) > 0) {
            std::vector<RadicalNumber> y;
            for (const auto& v : duals(phase1)) y.push_back(radical_value(v));
            return LpInfeasible{radical_value(infeasibility), std::move(y)};
        }
        drive_out_artificials();
        if (auto entering = run(cost_, false)) {
            std::vector<T> ray(n, F::zero());
            ray[*entering] = F::one();
            for (std::size_t r = 0; r < basis_.size(); ++r) ray[basis_[r]] = T(-t_[r][*entering]);
            return LpUnbounded{original_point(current_solution()), original_point(ray)};
        }
        LpOptimal out;
        const T value = objective(cost_);
        out.value = radical_value(T(sense_ > 0 ? value : T(-value)));
        out.point = original_point(current_solution());
        for (const auto& v : duals(cost_)) out.duals.push_back(radical_value(T(sense_ > 0 ? v : T(-v))));
        for (auto k : basis_) out.basis.push_back(columns_[k].label);
        return out;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    T reduced_cost(const std::vector<T>& d, std::size_t j) const {
        T r = d[j];
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (!F::is_zero(t_[i][j]) && !F::is_zero(d[basis_[i]])) r = T(r - d[basis_[i]] * t_[i][j]);
        return r;
    }

    T objective(const std::vector<T>& d) const {
        T v = F::zero();
        for (std::size_t i = 0; i < basis_.size(); ++i) v = T(v + d[basis_[i]] * t_[i].back());
        return v;
    }

    // y^T = d_B B^-1, read off the artificial columns, then un-negated per row.
    std::vector<T> duals(const std::vector<T>& d) const {
        std::vector<T> y(basis_.size(), F::zero());
        for (std::size_t i = 0; i < y.size(); ++i) {
            for (std::size_t r = 0; r < basis_.size(); ++r) y[i] = T(y[i] + d[basis_[r]] * t_[r][first_artificial_ + i]);
            if (flip_[i] < 0) y[i] = T(-y[i]);
        }
        return y;
    }

    void pivot(std::size_t row, std::size_t col) {
        const T inv = F::inverse(t_[row][col]);
        for (auto& v : t_[row]) v = T(v * inv);
        for (std::size_t r = 0; r < t_.size(); ++r) {
            if (r == row || F::is_zero(t_[r][col])) continue;
            const T factor = t_[r][col];
            for (std::size_t k = 0; k < t_[r].size(); ++k)
                if (!F::is_zero(t_[row][k])) t_[r][k] = T(t_[r][k] - factor * t_[row][k]);
        }
        basis_[row] = col;
    }

    // Maximizes d; returns the entering column when unbounded. Bland's rule:
    // lowest-index improving column, ties in the ratio test by lowest basic index.
    std::optional<std::size_t> run(const std::vector<T>& d, bool allow_artificial) {
        const std::size_t limit = allow_artificial ? columns_.size() : first_artificial_;
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < limit && !entering; ++j) {
                if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
                if (F::sign(reduced_cost(d, j)) > 0) entering = j;
            }
            if (!entering) return std::nullopt;
            std::optional<std::size_t> leave;
            T best = F::zero();
            for (std::size_t r = 0; r < t_.size(); ++r) {
                if (F::sign(t_[r][*entering]) <= 0) continue;
                const T ratio = T(t_[r].back() * F::inverse(t_[r][*entering]));
                if (!leave) {
                    leave = r;
                    best = ratio;
                    continue;
                }
                const int cmp = F::sign(T(ratio - best));
                if (cmp < 0 || (cmp == 0 && basis_[r] < basis_[*leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (!leave) return entering;
            pivot(*leave, *entering);
        }
    }

    // Basic artificials sit at zero after a feasible phase 1; pivot them out
    // where the row allows, otherwise the row is redundant and stays inert.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            if (!columns_[basis_[r]].artificial) continue;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (!F::is_zero(t_[r][j])) {
                    pivot(r, j);
                    break;
                }
            }
        }
    }

    std::vector<T> current_solution() const {
        std::vector<T> x(columns_.size(), F::zero());
        for (std::size_t r = 0; r < basis_.size(); ++r) x[basis_[r]] = t_[r].back();
        return x;
    }

    std::vector<RadicalNumber> original_point(const std::vector<T>& x) const {
        std::vector<T> out(model_.variables.size(), F::zero());
        for (std::size_t k = 0; k < first_artificial_; ++k)
            if (columns_[k].variable != npos)
                out[columns_[k].variable] =
                    columns_[k].orientation > 0 ? T(out[columns_[k].variable] + x[k]) : T(out[columns_[k].variable] - x[k]);
        std::vector<RadicalNumber> r;
        for (const auto& v : out) r.push_back(radical_value(v));
        return r;
    }

    const Model& model_;
    std::vector<Column> columns_;
    std::size_t first_artificial_ = 0;
    Matrix<T> t_;
    std::vector<std::size_t> basis_;
    std::vector<int> flip_;
    std::vector<T> cost_;
    int sense_ = 1;
};

template <OrderedField T>
LpOutcome solve_in(const Model& m) {
    std::vector<RadicalNumber> values;
    for (const auto& c : m.constraints) {
        for (const auto& [j, a] : c.terms) values.push_back(a.pure_value());
        values.push_back(c.rhs.pure_value());
    }
    for (const auto& [j, a] : m.objective) values.push_back(a.pure_value());
    // One common basis up front: checks the cap once and keeps pivots rebase-free.
    auto unified = unify_bases(values).second;
    std::size_t next = 0;
    const std::size_t n = m.variables.size();
    std::vector<std::vector<T>> a(m.constraints.size(), std::vector<T>(n, field_traits<T>::zero()));
    std::vector<T> b(m.constraints.size()), c(n, field_traits<T>::zero());
    for (std::size_t i = 0; i < m.constraints.size(); ++i) {
        for (const auto& [j, coef] : m.constraints[i].terms) a[i][j] = field_value<T>(unified[next++]);
        b[i] = field_value<T>(unified[next++]);
    }
    for (const auto& [j, coef] : m.objective) c[j] = field_value<T>(unified[next++]);
    return Tableau<T>(m, std::move(a), std::move(b), std::move(c)).solve();
}

} // namespace detail

/// Exact LP relaxation (integrality dropped). `automatic` picks the radical
/// field iff an irrational coefficient is present.
inline LpOutcome solve_lpr(const Model& m, FieldChoice field = FieldChoice::automatic) {
    if (m.has_exp_terms()) throw ContractError("the LP relaxation cannot be solved with exp() coefficients");
    if (field == FieldChoice::automatic) field = m.is_rational() ? FieldChoice::rational : FieldChoice::radical;
    if (field == FieldChoice::rational) {
        if (!m.is_rational())
            throw ContractError("model has irrational coefficients; rationalize it or use the radical field");
        return detail::solve_in<Rational>(m);
    }
    return detail::solve_in<RadicalNumber>(m);
}

namespace detail {

inline RadicalNumber row_value(const LinearTerms& terms, const std::vector<RadicalNumber>& x) {
    RadicalNumber sum;
    for (const auto& [j, a] : terms) sum = sum + a.pure_value() * x[j];
    return sum;
}

inline bool primal_feasible(const Model& m, const std::vector<RadicalNumber>& x) {
    if (x.size() != m.variables.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (m.variables[j].nonnegative && sign(x[j]) < 0) return false;
    for (const auto& c : m.constraints)
        if (!relation_holds(sign(row_value(c.terms, x) - c.rhs.pure_value()), c.relation)) return false;
    return true;
}

// (y^T A)_j per variable.
inline std::vector<RadicalNumber> transpose_product(const Model& m, const std::vector<RadicalNumber>& y) {
    std::vector<RadicalNumber> out(m.variables.size());
    for (std::size_t i = 0; i < m.constraints.size(); ++i)
        for (const auto& [j, a] : m.constraints[i].terms) out[j] = out[j] + a.pure_value() * y[i];
    return out;
}

inline RadicalNumber rhs_product(const Model& m, const std::vector<RadicalNumber>& y) {
    RadicalNumber sum;
    for (std::size_t i = 0; i < m.constraints.size(); ++i) sum = sum + m.constraints[i].rhs.pure_value() * y[i];
    return sum;
}

// Sign pattern of multipliers by row relation, scaled by s (+1 for y >= 0 on <= rows).
inline bool multiplier_signs_ok(const Model& m, const std::vector<RadicalNumber>& y, int s) {
    for (std::size_t i = 0; i < m.constraints.size(); ++i) {
        const int sy = s * sign(y[i]);
        if (m.constraints[i].relation == Relation::less_equal && sy < 0) return false;
        if (m.constraints[i].relation == Relation::greater_equal && sy > 0) return false;
    }
    return true;
}

inline bool verify(const Model& m, const LpOptimal& o) {
    if (!primal_feasible(m, o.point) || o.duals.size() != m.constraints.size()) return false;
    if (row_value(m.objective, o.point) != o.value) return false;
    const int s = m.sense == Sense::maximize ? 1 : -1;
    if (!multiplier_signs_ok(m, o.duals, s)) return false;
    const auto yA = transpose_product(m, o.duals);
    for (std::size_t j = 0; j < m.variables.size(); ++j) {
        const auto it = m.objective.find(j);
        const RadicalNumber cj = it == m.objective.end() ? RadicalNumber() : it->second.pure_value();
        const int reduced = s * sign(yA[j] - cj);
        if (m.variables[j].nonnegative ? reduced < 0 : reduced != 0) return false;
    }
    return rhs_product(m, o.duals) == o.value;
}

inline bool verify(const Model& m, const LpUnbounded& o) {
    if (!primal_feasible(m, o.point) || o.ray.size() != m.variables.size()) return false;
    for (std::size_t j = 0; j < o.ray.size(); ++j)
        if (m.variables[j].nonnegative && sign(o.ray[j]) < 0) return false;
    for (const auto& c : m.constraints)
        if (!relation_holds(sign(row_value(c.terms, o.ray)), c.relation)) return false;
    const int s = m.sense == Sense::maximize ? 1 : -1;
    return s * sign(row_value(m.objective, o.ray)) > 0;
}

inline bool verify(const Model& m, const LpInfeasible& o) {
    if (o.farkas.size() != m.constraints.size() || sign(o.phase1_value) <= 0) return false;
    if (!multiplier_signs_ok(m, o.farkas, 1)) return false;
    const auto yA = transpose_product(m, o.farkas);
    for (std::size_t j = 0; j < m.variables.size(); ++j) {
        const int sj = sign(yA[j]);
        if (m.variables[j].nonnegative ? sj < 0 : sj != 0) return false;
    }
    return rhs_product(m, o.farkas) == -o.phase1_value;
}

} // namespace detail

/// Rechecks the outcome's certificate by exact substitution into the model.
inline bool verify_outcome(const Model& m, const LpOutcome& o) {
    if (m.has_exp_terms()) return false;
    try {
        return std::visit([&](const auto& v) { return detail::verify(m, v); }, o);
    } catch (const Error&) {
        return false;
    }
}

inline const char* status_name(const LpOutcome& o) {
    return std::visit(
        [](const auto& v) -> const char* {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::same_as<V, LpOptimal>) return "optimal";
            else if constexpr (std::same_as<V, LpUnbounded>) return "unbounded";
            else return "infeasible";
        },
        o);
}

inline nlohmann::ordered_json to_json(const Model& m, const LpOutcome& o) {
    using nlohmann::ordered_json;
    auto by_variable = [&](const std::vector<RadicalNumber>& x) {
        ordered_json j = ordered_json::object();
        for (std::size_t k = 0; k < x.size(); ++k) j[m.variables[k].name] = to_string(x[k]);
        return j;
    };
    auto by_row = [&](const std::vector<RadicalNumber>& y) {
        ordered_json j = ordered_json::object();
        for (std::size_t k = 0; k < y.size(); ++k) j[m.constraints[k].name] = to_string(y[k]);
        return j;
    };
    ordered_json j;
    j["status"] = status_name(o);
    if (const auto* opt = std::get_if<LpOptimal>(&o)) {
        j["value"] = to_string(opt->value);
        j["point"] = by_variable(opt->point);
        j["duals"] = by_row(opt->duals);
        j["basis"] = opt->basis;
    } else if (const auto* unb = std::get_if<LpUnbounded>(&o)) {
        j["point"] = by_variable(unb->point);
        j["ray"] = by_variable(unb->ray);
    } else {
        const auto& inf = std::get<LpInfeasible>(o);
        j["phase1_value"] = to_string(inf.phase1_value);
        j["farkas"] = by_row(inf.farkas);
    }
    j["verified"] = verify_outcome(m, o);
    return j;
}

} // namespace radrat
