#include "radrat/model_io.hpp"
#include "radrat/rationalizer.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace radrat;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RadicalNumber rad(unsigned long degree, long radicand) { return canonicalize(Expr::root(degree, radicand)); }

// Row as text "lhs = rhs" with the model's names; order-insensitive comparisons use sets of these.
std::multiset<std::string> row_texts(const Model& m) {
    std::multiset<std::string> out;
    for (const auto& c : m.constraints) {
        const std::string text = write_model(Model{m.variables, m.sense, {}, {c}});
        const auto colon = text.rfind(": ");
        out.insert(text.substr(colon + 2, text.size() - colon - 4));
    }
    return out;
}

// Exact value of sum_j a_j x_j - b with exp groups kept apart (independent oracle:
// plain Coefficient arithmetic, no rationalizer code).
Coefficient residual(const Constraint& c, const std::vector<long>& x) {
    Coefficient sum;
    for (const auto& [j, a] : c.terms) sum = sum + a * Coefficient(x[j]);
    return sum - c.rhs;
}

} // namespace

TEST(QIndependence, Examples) {
    EXPECT_EQ(check_q_independence(std::vector<RadicalNumber>{rad(2, 2), rad(2, 3)}), std::nullopt);
    EXPECT_EQ(check_q_independence(std::vector<RadicalNumber>{rad(2, 2), rad(2, 2) * RadicalNumber(2)}),
              (std::vector<Rational>{2, -1}));
    EXPECT_EQ(check_q_independence(std::vector<RadicalNumber>{RadicalNumber(1) + rad(2, 2), rad(2, 2)}),
              std::nullopt);
    EXPECT_EQ(check_q_independence(std::vector<RadicalNumber>{}), std::nullopt);
    EXPECT_EQ(check_q_independence(std::vector<RadicalNumber>{RadicalNumber()}), (std::vector<Rational>{1}));
    // 1/2 + sqrt2, 3, 2 sqrt2 - 1/3 : 6a - 4/3*... exact witness checked by substitution below
    const std::vector<RadicalNumber> xs{RadicalNumber(make_rational(1, 2)) + rad(2, 2), RadicalNumber(3),
                                        RadicalNumber(2) * rad(2, 2) - RadicalNumber(make_rational(1, 3))};
    const auto w = check_q_independence(xs);
    ASSERT_TRUE(w);
    RadicalNumber combo;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ((*w)[i].get_den(), 1);
        combo = combo + xs[i] * RadicalNumber((*w)[i]);
    }
    EXPECT_TRUE(combo.is_zero());
}

TEST(QIndependence, AgreesWithRankOracle) {
    // Independent exactly when the coordinate matrix has full rank.
    std::mt19937_64 rng(5);
    const std::vector<RadicalNumber> atoms{RadicalNumber(1), rad(2, 2), rad(2, 3), rad(3, 2), rad(3, 4)};
    std::uniform_int_distribution<int> coef(-2, 2), count(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<RadicalNumber> xs(count(rng));
        for (auto& x : xs)
            for (const auto& a : atoms) x = x + a * RadicalNumber(coef(rng));
        const auto [basis, unified] = unify_bases(xs);
        Matrix<Rational> coords;
        std::set<Monomial> monos;
        for (const auto& u : unified)
            for (const auto& [m, c] : u.terms()) monos.insert(m);
        for (const auto& u : unified) {
            std::vector<Rational> row;
            for (const auto& m : monos) row.push_back(u.coefficient(m));
            coords.push_back(row);
        }
        const bool independent = monos.empty() ? xs.empty() : rank(coords) == xs.size();
        const auto w = check_q_independence(xs);
        EXPECT_EQ(!w.has_value(), independent);
        if (w) {
            RadicalNumber combo;
            for (std::size_t i = 0; i < xs.size(); ++i) combo = combo + xs[i] * RadicalNumber((*w)[i]);
            EXPECT_TRUE(combo.is_zero());
        }
    }
}

TEST(SplitExpGroups, TwoIndependentExponents) {
    const Model m = parse_model(read_file(RADRAT_MODELS_DIR "/exp_split.mod"));
    const auto groups = split_exp_groups(m.constraints[0]);
    ASSERT_EQ(groups.size(), 2u);
    EXPECT_EQ(groups[0].terms, (LinearTerms{{0, Coefficient(1)}}));
    EXPECT_EQ(groups[0].rhs, Coefficient(1));
    EXPECT_EQ(groups[1].terms, (LinearTerms{{1, Coefficient(1)}}));
    EXPECT_EQ(groups[1].rhs, Coefficient(2));

    // oracle: (1,2) zeroes the original exactly, and the 100-digit evaluation of each
    // exp group at a nearby point is far from zero
    EXPECT_TRUE(residual(m.constraints[0], {1, 2}).is_zero());
    const Coefficient off = residual(m.constraints[0], {2, 2});
    EXPECT_FALSE(off.is_zero());
    Interval total = Interval::point(0);
    for (const auto& [alpha, v] : off.groups())
        total = total + exp_enclosure(evaluate(alpha, 340), 340) * evaluate(v, 340);
    EXPECT_FALSE(total.contains_zero());
}

TEST(SplitExpGroups, PureConstraintUnchanged) {
    const Model m = parse_model("var x integer; s.t. c: root(2,2)*x = 0;");
    const auto groups = split_exp_groups(m.constraints[0]);
    ASSERT_EQ(groups.size(), 1u);
    EXPECT_EQ(groups[0], m.constraints[0]);
}

TEST(SplitExpGroups, DependentExponentsCarryWitness) {
    const Model m =
        parse_model("var x1 integer; var x2 integer; s.t. c: exp(root(2,2))*x1 + exp(2*root(2,2))*x2 = 0;");
    try {
        split_exp_groups(m.constraints[0]);
        FAIL();
    } catch (const DependentExponentsError& e) {
        EXPECT_EQ(e.witness(), (std::vector<Rational>{2, -1}));
        ASSERT_EQ(e.exponents().size(), 2u);
        EXPECT_EQ(e.exponents()[0], rad(2, 2));
        EXPECT_NE(std::string(e.what()).find("+ 2*((2)^(1/2)) - 1*(2 * (2)^(1/2)) = 0"), std::string::npos)
            << e.what();
    }
}

TEST(SplitExpGroups, ZeroGroupKeptSeparately) {
    const Model m = parse_model("var x integer; var y integer; s.t. c: x + exp(root(2,3))*y = 4 + exp(root(2,3));");
    const auto groups = split_exp_groups(m.constraints[0]);
    ASSERT_EQ(groups.size(), 2u);
    EXPECT_EQ(groups[0].terms, (LinearTerms{{0, Coefficient(1)}}));
    EXPECT_EQ(groups[0].rhs, Coefficient(4));
    EXPECT_EQ(groups[1].rhs, Coefficient(1));
}

TEST(SplitExpGroups, InequalityIsContractError) {
    const Model m = parse_model("var x integer; s.t. c: exp(1)*x <= 0;");
    EXPECT_THROW(split_exp_groups(m.constraints[0]), ContractError);
}

TEST(RationalizeConstraint, ExampleOneRow) {
    const Model m = parse_model("var x1 integer; var x2 integer; var x3 integer; s.t. c: x3 - root(2,2)*x1 + "
                                "root(2,2)*x2 = 0;");
    const auto rows = rationalize_constraint(m.constraints[0], m.variables);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].terms, (LinearTerms{{2, Coefficient(1)}}));
    EXPECT_EQ(rows[1].terms, (LinearTerms{{0, Coefficient(-1)}, {1, Coefficient(1)}}));
    EXPECT_TRUE(rows[0].rhs.is_zero());
    EXPECT_TRUE(rows[1].rhs.is_zero());
}

TEST(RationalizeConstraint, MixedCoefficients) {
    const Model m = parse_model("var x1 integer; var x2 integer; s.t. c: (1 + root(2,2))*x1 + (3 - 2*root(2,2))*x2 = 5;");
    const auto rows = rationalize_constraint(m.constraints[0], m.variables);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].terms, (LinearTerms{{0, Coefficient(1)}, {1, Coefficient(3)}}));
    EXPECT_EQ(rows[0].rhs, Coefficient(5));
    EXPECT_EQ(rows[1].terms, (LinearTerms{{0, Coefficient(1)}, {1, Coefficient(-2)}}));
    EXPECT_TRUE(rows[1].rhs.is_zero());
    // oracle: x = (2, 1) satisfies the original exactly
    EXPECT_TRUE(residual(m.constraints[0], {2, 1}).is_zero());
}

TEST(RationalizeConstraint, InfeasibleRow) {
    const Model m = parse_model(read_file(RADRAT_MODELS_DIR "/sqrt2_infeasible.mod"));
    const auto rows = rationalize_constraint(m.constraints[0], m.variables);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].terms.empty());
    EXPECT_EQ(rows[0].rhs, Coefficient(1));
    EXPECT_EQ(rows[1].terms, (LinearTerms{{0, Coefficient(1)}}));
}

TEST(RationalizeConstraint, ContinuousSupportRejected) {
    const Model m = parse_model("var x; s.t. c: root(2,2)*x = 1;");
    EXPECT_THROW(rationalize_constraint(m.constraints[0], m.variables), NotRationalizableError);
}

TEST(RationalizeModel, ExampleOne) {
    const Model m = parse_model(read_file(RADRAT_MODELS_DIR "/example1.mod"));
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(row_texts(rm.model), (std::multiset<std::string>{"x3 = 0", "x1 - x2 = 0", "x2 + x4 = 1"}));
    EXPECT_TRUE(rm.model.is_rational());
    EXPECT_EQ(rm.model.objective, m.objective);
    EXPECT_EQ(report.rows_in, 2u);
    EXPECT_EQ(report.rows_out, 3u);
    EXPECT_TRUE(report.warnings.empty());
    EXPECT_TRUE(report.infeasible_rows.empty());
    EXPECT_EQ(report.basis, (RadicalBasis{{{2, 2}}}));
    EXPECT_EQ(report.dimension, 2u);
    ASSERT_EQ(rm.provenance.size(), 3u);
    EXPECT_EQ(rm.provenance[0].row, "c1_1");
    EXPECT_EQ(rm.provenance[0].monomial, (Monomial{0}));
    EXPECT_EQ(rm.provenance[1].monomial, (Monomial{1}));
    EXPECT_TRUE(rm.provenance[2].passed_through);
    EXPECT_EQ(rm.provenance[2].row, "c2");

    const auto j = to_json(report, rm);
    EXPECT_EQ(j["basis"].dump(), "[[2,2]]");
    EXPECT_EQ(j["rows_out"], 3);
    EXPECT_EQ(j["provenance"][1]["monomial"].dump(), "[1]");
}

TEST(RationalizeModel, RationalModelIsIdentity) {
    const Model m = parse_model("var x integer; var y; max x + y; s.t. a: x + 2*y = 3; s.t. b: 1/2*x - y <= 7;");
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(rm.model, m);
    EXPECT_TRUE(report.warnings.empty());
}

TEST(RationalizeModel, InequalityPassesThroughWithWarning) {
    const Model m = parse_model("var x1 >= 0 integer; var x2 >= 0 integer; s.t. c: -root(2,2)*(x1 - x2) <= 1;");
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(rm.model.constraints, m.constraints);
    ASSERT_EQ(report.warnings.size(), 1u);
    EXPECT_NE(report.warnings[0].find("inequalit"), std::string::npos);
}

TEST(RationalizeModel, ContinuousSupportPassesThroughWithWarning) {
    const Model m = parse_model("var x; var y integer; s.t. c: root(2,2)*x + y = 1;");
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(rm.model.constraints, m.constraints);
    ASSERT_EQ(report.warnings.size(), 1u);
    EXPECT_NE(report.warnings[0].find("continuous variable 'x'"), std::string::npos);
}

TEST(RationalizeModel, ExpSplitEndToEnd) {
    const Model m = parse_model(read_file(RADRAT_MODELS_DIR "/exp_split.mod"));
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(row_texts(rm.model), (std::multiset<std::string>{"x1 = 1", "x2 = 2"}));
    EXPECT_EQ(report.exp_groups, 2u);
    EXPECT_EQ(to_string(rm.provenance[0].exponent), "(2)^(1/2)");
    EXPECT_EQ(to_string(rm.provenance[1].exponent), "(3)^(1/2)");
}

TEST(RationalizeModel, InfeasibleRowFlagged) {
    const Model m = parse_model(read_file(RADRAT_MODELS_DIR "/sqrt2_infeasible.mod"));
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(row_texts(rm.model), (std::multiset<std::string>{"0 = 1", "x1 = 0"}));
    EXPECT_EQ(report.infeasible_rows, (std::vector<std::string>{"c_1"}));
}

TEST(RationalizeModel, DuplicatesRemovedAndNamesUnique) {
    const Model m = parse_model("var x integer; var y integer;"
                                "s.t. c: root(2,2)*x - root(2,2)*y = 0;"
                                "s.t. d: root(2,3)*y - root(2,3)*x = 0;"
                                "s.t. c_1: x + y >= 0;");
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(row_texts(rm.model), (std::multiset<std::string>{"x - y = 0", "x + y >= 0"}));
    EXPECT_EQ(report.duplicates_removed, 1u);
    EXPECT_EQ(rm.model.constraints[0].name, "c_2");
}

TEST(RationalizeModel, ReportBasisUnionAndProvenanceLift) {
    const Model m = parse_model("var x integer; var y integer;"
                                "s.t. a: root(2,2)*x = 0;"
                                "s.t. b: root(4,2)*(x + y) + root(3,3)*y = 0;");
    const auto [rm, report] = rationalize_model(m);
    EXPECT_EQ(report.basis, (RadicalBasis{{{2, 4}, {3, 3}}}));
    EXPECT_EQ(report.dimension, 12u);
    ASSERT_EQ(rm.provenance.size(), 3u);
    EXPECT_EQ(rm.provenance[0].monomial, (Monomial{2, 0})); // sqrt2 = 2^(2/4)
    EXPECT_EQ(rm.provenance[1].monomial, (Monomial{0, 1}));
    EXPECT_EQ(rm.provenance[2].monomial, (Monomial{1, 0}));
    EXPECT_EQ(row_texts(rm.model), (std::multiset<std::string>{"x = 0", "y = 0", "x + y = 0"}));
}

// Property: every emitted row is rational, each source monomial yields one row,
// and points satisfying a source's rows zero the source exactly.
TEST(RationalizeModel, RandomRedundancyAndCompleteness) {
    std::mt19937_64 rng(2024);
    const std::vector<RadicalNumber> atoms{RadicalNumber(1), rad(2, 2), rad(2, 3), rad(3, 2), rad(3, 5)};
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3), pick(0, 4), val(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        Model m;
        for (int j = 0; j < 3; ++j) m.variables.push_back({"x" + std::to_string(j + 1), true, false});
        std::vector<long> x0{val(rng), val(rng), val(rng)};
        Constraint c{"c", {}, Relation::equal, {}};
        Coefficient lhs_at_x0;
        for (std::size_t j = 0; j < 3; ++j) {
            RadicalNumber a;
            for (int t = 0; t < 2; ++t) a = a + atoms[pick(rng)] * RadicalNumber(make_rational(num(rng), den(rng)));
            if (a.is_zero()) continue;
            c.terms[j] = Coefficient(a);
            lhs_at_x0 = lhs_at_x0 + Coefficient(a) * Coefficient(x0[j]);
        }
        c.rhs = lhs_at_x0;
        m.constraints.push_back(c);
        const auto [rm, report] = rationalize_model(m);
        std::set<Monomial> monos;
        std::vector<RadicalNumber> values;
        for (const auto& [j, a] : c.terms) values.push_back(a.pure_value());
        values.push_back(c.rhs.pure_value());
        for (const auto& v : unify_bases(values).second)
            for (const auto& [mono, q] : v.terms()) monos.insert(mono);
        if (c.is_rational()) continue;
        EXPECT_EQ(rm.model.constraints.size() + report.duplicates_removed, monos.size());
        for (const auto& row : rm.model.constraints) EXPECT_TRUE(row.is_rational());
        // x0 satisfies every emitted row (equivalence on a known solution)
        for (const auto& row : rm.model.constraints) EXPECT_TRUE(residual(row, x0).is_zero());
        EXPECT_TRUE(residual(c, x0).is_zero());
    }
}
