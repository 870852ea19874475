#pragma once

/**
 * @file model_io.hpp
 * @brief Native model text format (parse/write) and CPLEX-style LP export.
 *
 * Grammar (whitespace-insensitive, '#' starts a line comment):
 *
 *     model      := statement*
 *     statement  := vardecl | objective | constraint
 *     vardecl    := "var" IDENT [">=" "0"] ["integer"] ";"
 *     objective  := ("max" | "min") expr ";"
 *     constraint := ["s.t."] [IDENT ":"] expr ("=" | "<=" | ">=") expr ";"
 *
 * Expressions use + - * / with the usual precedence, unary minus, parentheses,
 * integer literals, variables, root(k, n) = n^(1/k), exp(expr), and
 * base^exponent where the exponent is INT, -INT, or (INT/INT). Every
 * expression must reduce to a linear form in the variables.
 */

#include "errors.hpp"
#include "model.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace radrat {

namespace detail {

struct Token {
    enum class Kind { identifier, integer, symbol, end };
    Kind kind;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const SourcePos pos{line_, column_};
            if (at_end()) {
                out.push_back({Token::Kind::end, "", pos});
                return out;
            }
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
                out.push_back({Token::Kind::integer, digits, pos});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                if (text_.substr(offset_, 4) == "s.t.") {
                    for (int i = 0; i < 4; ++i) advance();
                    out.push_back({Token::Kind::symbol, "s.t.", pos});
                    continue;
                }
                std::string ident;
                while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    ident += advance();
                out.push_back({Token::Kind::identifier, ident, pos});
            } else if ((c == '<' || c == '>') && offset_ + 1 < text_.size() && text_[offset_ + 1] == '=') {
                std::string op{advance(), advance()};
                out.push_back({Token::Kind::symbol, op, pos});
            } else if (std::string_view("+-*/^(),;:=").find(c) != std::string_view::npos) {
                out.push_back({Token::Kind::symbol, std::string(1, advance()), pos});
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", pos.line, pos.column);
            }
        }
    }

private:
    bool at_end() const { return offset_ >= text_.size(); }
    char peek() const { return text_[offset_]; }

    char advance() {
        const char c = text_[offset_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

inline const std::set<std::string, std::less<>> keywords{"var", "max", "min", "root", "exp", "integer"};

class ExprParser {
public:
    explicit ExprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Expr expression() { return sum(); }

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
    }

    bool peek_symbol(std::string_view s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::symbol && peek(ahead).text == s;
    }

    bool peek_word(std::string_view s) const {
        return peek().kind == Token::Kind::identifier && peek().text == s;
    }

    const Token& next() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw ParseError(message, at.pos.line, at.pos.column);
    }

    [[noreturn]] void fail_expected(const std::string& what) const {
        const Token& t = peek();
        fail("expected " + what + ", found " + (t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'"), t);
    }

    void expect_symbol(std::string_view s) {
        if (!peek_symbol(s)) fail_expected("'" + std::string(s) + "'");
        next();
    }

    BigInt expect_integer() {
        if (peek().kind != Token::Kind::integer) fail_expected("integer");
        return parse_bigint(next().text);
    }

    std::string expect_identifier() {
        if (peek().kind != Token::Kind::identifier || keywords.contains(peek().text)) fail_expected("identifier");
        return next().text;
    }

private:
    Expr sum() {
        Expr e = product();
        while (peek_symbol("+") || peek_symbol("-")) {
            const Token& op = next();
            Expr rhs = product();
            e = Expr::binary(op.text == "+" ? Expr::Kind::add : Expr::Kind::subtract, e, rhs, op.pos);
        }
        return e;
    }

    Expr product() {
        Expr e = unary();
        while (peek_symbol("*") || peek_symbol("/")) {
            const Token& op = next();
            Expr rhs = unary();
            e = Expr::binary(op.text == "*" ? Expr::Kind::multiply : Expr::Kind::divide, e, rhs, op.pos);
        }
        return e;
    }

    Expr unary() {
        if (peek_symbol("-")) {
            const Token& op = next();
            return Expr::unary(Expr::Kind::negate, unary(), op.pos);
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!peek_symbol("^")) return base;
        const Token& op = next();
        Rational exponent;
        if (peek_symbol("(")) {
            next();
            const bool negative = peek_symbol("-") && (next(), true);
            BigInt num = expect_integer(), den = 1;
            if (peek_symbol("/")) {
                next();
                den = expect_integer();
                if (den == 0) fail("zero denominator in exponent", op);
            }
            expect_symbol(")");
            exponent = make_rational(negative ? BigInt(-num) : num, den);
        } else {
            const bool negative = peek_symbol("-") && (next(), true);
            const BigInt num = expect_integer();
            exponent = Rational(negative ? BigInt(-num) : num);
        }
        return Expr::power(base, exponent, op.pos);
    }

    Expr primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::integer) {
            next();
            return Expr::number(Rational(parse_bigint(t.text)), t.pos);
        }
        if (peek_symbol("(")) {
            next();
            Expr e = sum();
            expect_symbol(")");
            return e;
        }
        if (peek_word("root")) {
            next();
            expect_symbol("(");
            const BigInt degree = expect_integer();
            expect_symbol(",");
            const BigInt radicand = expect_integer();
            expect_symbol(")");
            if (!degree.fits_ulong_p()) fail("root degree too large", t);
            return Expr::root(degree.get_ui(), radicand, t.pos);
        }
        if (peek_word("exp")) {
            next();
            expect_symbol("(");
            Expr arg = sum();
            expect_symbol(")");
            return Expr::exp(arg, t.pos);
        }
        if (t.kind == Token::Kind::identifier && !keywords.contains(t.text)) {
            next();
            return Expr::variable(t.text, t.pos);
        }
        fail_expected("expression");
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

struct LinearForm {
    LinearTerms terms;
    Coefficient constant;

    bool is_constant() const { return terms.empty(); }
};

inline void add_into(LinearTerms& into, const LinearTerms& from, const Coefficient& scale) {
    for (const auto& [j, c] : from) {
        Coefficient sum = into[j] + c * scale;
        if (sum.is_zero()) into.erase(j);
        else into[j] = std::move(sum);
    }
}

inline LinearForm scale(const LinearForm& f, const Coefficient& s) {
    LinearForm out;
    add_into(out.terms, f.terms, s);
    out.constant = f.constant * s;
    return out;
}

inline LinearForm combine(const LinearForm& a, const LinearForm& b, long sign) {
    LinearForm out = a;
    add_into(out.terms, b.terms, Coefficient(sign));
    out.constant = sign > 0 ? a.constant + b.constant : a.constant - b.constant;
    return out;
}

inline ParseError error_at(const Expr& e, const std::string& message) {
    return ParseError(message, e.pos().line, e.pos().column);
}

inline LinearForm linearize(const Expr& e, const Model& model) {
    using K = Expr::Kind;
    try {
        switch (e.kind()) {
        case K::number: return {{}, Coefficient(e.value())};
        case K::variable: {
            auto j = model.find_variable(e.name());
            if (!j) throw error_at(e, "undeclared variable '" + e.name() + "'");
            return {{{*j, Coefficient(1)}}, {}};
        }
        case K::root: return {{}, Coefficient(canonicalize(e))};
        case K::power: {
            const LinearForm base = linearize(e.lhs(), model);
            if (!base.is_constant()) throw error_at(e, "nonlinear term: variable raised to a power");
            if (!base.constant.is_rational() || sgn(base.constant.pure_value().rational_part()) <= 0)
                throw error_at(e, "power base must be a positive rational");
            return {{}, Coefficient(canonicalize(Expr::power(Expr::number(base.constant.pure_value().rational_part()),
                                                             e.value())))};
        }
        case K::exp: {
            const LinearForm arg = linearize(e.lhs(), model);
            if (!arg.is_constant()) throw error_at(e, "nonlinear term: variable inside exp()");
            if (!arg.constant.is_pure()) throw error_at(e, "nested exp() is not supported");
            return {{}, Coefficient::exp(arg.constant.pure_value())};
        }
        case K::negate: return scale(linearize(e.lhs(), model), Coefficient(-1));
        case K::add: return combine(linearize(e.lhs(), model), linearize(e.rhs(), model), 1);
        case K::subtract: return combine(linearize(e.lhs(), model), linearize(e.rhs(), model), -1);
        case K::multiply: {
            const LinearForm a = linearize(e.lhs(), model);
            const LinearForm b = linearize(e.rhs(), model);
            if (!a.is_constant() && !b.is_constant()) throw error_at(e, "nonlinear term: product of variables");
            return a.is_constant() ? scale(b, a.constant) : scale(a, b.constant);
        }
        case K::divide: {
            const LinearForm a = linearize(e.lhs(), model);
            const LinearForm b = linearize(e.rhs(), model);
            if (!b.is_constant()) throw error_at(e, "nonlinear term: division by a variable");
            if (b.constant.is_zero()) throw error_at(e, "division by zero");
            return scale(a, b.constant.inverse());
        }
        }
    } catch (const DomainError& err) {
        throw error_at(e, err.what());
    } catch (const ContractError& err) {
        throw error_at(e, err.what());
    }
    throw error_at(e, "unknown expression node");
}

} // namespace detail

/// Parses a standalone coefficient expression (no variables are declared).
inline RadicalExpr parse_expression(std::string_view text) {
    detail::ExprParser p(detail::Lexer(text).tokenize());
    Expr e = p.expression();
    if (p.peek().kind != detail::Token::Kind::end) p.fail_expected("end of expression");
    return e;
}

inline Model parse_model(std::string_view text) {
    using detail::Token;
    detail::ExprParser p(detail::Lexer(text).tokenize());
    Model model;
    bool have_objective = false;
    std::set<std::string> constraint_names;
    std::size_t unnamed = 0;

    while (p.peek().kind != Token::Kind::end) {
        const Token start = p.peek();
        if (p.peek_word("var")) {
            p.next();
            const Token name_token = p.peek();
            Variable v{p.expect_identifier(), false, false};
            if (p.peek_symbol(">=")) {
                p.next();
                if (p.expect_integer() != 0) p.fail("only '>= 0' lower bounds are supported", name_token);
                v.nonnegative = true;
            }
            if (p.peek_word("integer")) {
                p.next();
                v.integer = true;
            }
            p.expect_symbol(";");
            if (model.find_variable(v.name)) p.fail("duplicate variable '" + v.name + "'", name_token);
            model.variables.push_back(std::move(v));
            continue;
        }
        if (p.peek_word("max") || p.peek_word("min")) {
            p.next();
            if (have_objective) p.fail("more than one objective", start);
            have_objective = true;
            model.sense = start.text == "max" ? Sense::maximize : Sense::minimize;
            const Expr e = p.expression();
            p.expect_symbol(";");
            auto form = detail::linearize(e, model);
            if (!form.constant.is_zero()) p.fail("constant term in objective", start);
            model.objective = std::move(form.terms);
            continue;
        }
        if (p.peek_symbol("s.t.")) p.next();
        Constraint c;
        if (p.peek().kind == Token::Kind::identifier && p.peek_symbol(":", 1)) {
            const Token name_token = p.peek();
            c.name = p.expect_identifier();
            p.next();
            if (constraint_names.contains(c.name)) p.fail("duplicate constraint name '" + c.name + "'", name_token);
        }
        const Expr lhs = p.expression();
        if (p.peek_symbol("=")) c.relation = Relation::equal;
        else if (p.peek_symbol("<=")) c.relation = Relation::less_equal;
        else if (p.peek_symbol(">=")) c.relation = Relation::greater_equal;
        else p.fail_expected("'=', '<=' or '>='");
        p.next();
        const Expr rhs = p.expression();
        p.expect_symbol(";");
        auto form = detail::combine(detail::linearize(lhs, model), detail::linearize(rhs, model), -1);
        c.terms = std::move(form.terms);
        c.rhs = -form.constant;
        if (c.name.empty()) {
            do {
                c.name = "c" + std::to_string(++unnamed);
            } while (constraint_names.contains(c.name));
        }
        constraint_names.insert(c.name);
        model.constraints.push_back(std::move(c));
    }
    return model;
}

namespace detail {

inline std::string linear_text(const LinearTerms& terms, const std::vector<Variable>& vars) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [j, c] : terms) {
        const std::string& name = vars[j].name;
        if (c.is_rational()) {
            const Rational v = c.pure_value().rational_part();
            const bool negative = sgn(v) < 0;
            const std::string body = abs(v) == 1 ? name : to_string(Rational(abs(v))) + "*" + name;
            if (out.empty()) out = (negative ? "-" : "") + body;
            else out += (negative ? " - " : " + ") + body;
        } else {
            if (!out.empty()) out += " + ";
            out += "(" + to_string(c) + ")*" + name;
        }
    }
    return out;
}

} // namespace detail

/// Deterministic text that parse_model() maps back to an equal Model.
inline std::string write_model(const Model& m) {
    std::ostringstream os;
    for (const auto& v : m.variables) {
        os << "var " << v.name;
        if (v.nonnegative) os << " >= 0";
        if (v.integer) os << " integer";
        os << ";\n";
    }
    if (!m.objective.empty() || m.sense == Sense::minimize)
        os << (m.sense == Sense::maximize ? "max " : "min ") << detail::linear_text(m.objective, m.variables)
           << ";\n";
    for (const auto& c : m.constraints)
        os << "s.t. " << c.name << ": " << detail::linear_text(c.terms, m.variables) << " " << to_string(c.relation)
           << " " << to_string(c.rhs) << ";\n";
    return os.str();
}

namespace detail {

inline BigInt pow10(long e) { return pow(BigInt(10), static_cast<unsigned long>(e)); }

inline Rational pow10_rational(long e) {
    return e >= 0 ? Rational(pow10(e)) : Rational(BigInt(1), pow10(-e));
}

// floor(log10(v)) for rational v > 0.
inline long decimal_exponent(const Rational& v) {
    long e = static_cast<long>(bit_length(floor(v)) * 0.30103) - 1;
    while (pow10_rational(e) > v) --e;
    while (pow10_rational(e + 1) <= v) ++e;
    return e;
}

// digits = N (exactly `significant` digits) times 10^(scale)
inline std::string place_decimal_point(const BigInt& n, long scale, bool negative) {
    std::string digits = to_string(n);
    std::string out;
    if (scale >= 0) {
        out = digits + std::string(static_cast<std::size_t>(scale), '0');
    } else {
        const std::size_t frac = static_cast<std::size_t>(-scale);
        if (digits.size() <= frac) digits = std::string(frac - digits.size() + 1, '0') + digits;
        out = digits.substr(0, digits.size() - frac) + "." + digits.substr(digits.size() - frac);
    }
    return (negative ? "-" : "") + out;
}

// Round-half-up of |v| to `significant` digits, from an exact rational.
inline std::pair<BigInt, long> round_significant(const Rational& magnitude, unsigned significant) {
    const long e = decimal_exponent(magnitude);
    const long scale = e - static_cast<long>(significant) + 1;
    BigInt n = floor(Rational(magnitude / pow10_rational(scale) + Rational(1, 2)));
    if (n == pow10(significant)) return {pow10(significant - 1), scale + 1};
    return {n, scale};
}

} // namespace detail

/// Decimal text of a rational: exact when the expansion terminates, else
/// rounded to `significant` digits with `lossy` set.
inline std::string decimal_text(const Rational& r, unsigned significant, bool& lossy) {
    if (sgn(r) == 0) return "0";
    BigInt den = r.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), BigInt(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), BigInt(5).get_mpz_t());
    const bool negative = sgn(r) < 0;
    if (den == 1) {
        const long places = static_cast<long>(std::max(twos, fives));
        const BigInt n = abs(r.get_num()) * detail::pow10(places) / r.get_den();
        return detail::place_decimal_point(n, -places, negative);
    }
    lossy = true;
    const auto [n, scale] = detail::round_significant(abs(r), significant);
    return detail::place_decimal_point(n, scale, negative);
}

/// Decimal text of a radical value; irrational values are always rounded.
inline std::string decimal_text(const RadicalNumber& x, unsigned significant, bool& lossy) {
    if (x.is_rational()) return decimal_text(x.rational_part(), significant, lossy);
    lossy = true;
    const bool negative = sign(x) < 0;
    for (std::size_t bits = 64 + 4 * significant;; bits *= 2) {
        if (bits > limits().precision_cap_bits)
            throw ResourceError("decimal rounding exceeded the precision cap");
        const Interval iv = evaluate(negative ? -x : x, bits);
        if (sgn(iv.lo) <= 0) continue;
        const auto lo = detail::round_significant(iv.lo, significant);
        const auto hi = detail::round_significant(iv.hi, significant);
        if (lo == hi) return detail::place_decimal_point(lo.first, lo.second, negative);
    }
}

/// CPLEX-style LP text. Coefficients with exp terms cannot be exported.
inline std::string export_lp(const Model& m, unsigned significant = 15) {
    if (m.has_exp_terms()) throw ContractError("LP export does not support exp() coefficients");
    if (significant < 1) throw ContractError("LP export precision must be at least 1 digit");
    std::size_t rounded = 0;
    auto number = [&](const Coefficient& c) {
        bool lossy = false;
        std::string s = decimal_text(c.pure_value(), significant, lossy);
        if (lossy) ++rounded;
        return s;
    };
    auto linear = [&](const LinearTerms& terms) {
        std::string out;
        for (const auto& [j, c] : terms) {
            std::string v = number(c);
            const bool negative = v.front() == '-';
            if (negative) v.erase(0, 1);
            const std::string body = (v == "1" ? "" : v + " ") + m.variables[j].name;
            if (out.empty()) out = (negative ? "- " : "") + body;
            else out += (negative ? " - " : " + ") + body;
        }
        if (out.empty()) out = m.variables.empty() ? "0" : "0 " + m.variables.front().name;
        return out;
    };

    std::ostringstream body;
    body << (m.sense == Sense::maximize ? "Maximize\n" : "Minimize\n");
    body << " obj: " << (m.objective.empty() ? std::string() : linear(m.objective)) << "\n";
    body << "Subject To\n";
    for (const auto& c : m.constraints) {
        body << " " << c.name << ": " << linear(c.terms) << " " << to_string(c.relation) << " " << number(c.rhs)
             << "\n";
    }
    std::vector<std::string> free_vars, general;
    for (const auto& v : m.variables) {
        if (!v.nonnegative) free_vars.push_back(v.name);
        if (v.integer) general.push_back(v.name);
    }
    if (!free_vars.empty()) {
        body << "Bounds\n";
        for (const auto& v : free_vars) body << " " << v << " free\n";
    }
    if (!general.empty()) {
        body << "General\n";
        for (const auto& v : general) body << " " << v;
        body << "\n";
    }
    body << "End\n";

    std::ostringstream os;
    os << "\\ exported by radrat\n";
    if (rounded > 0)
        os << "\\ WARNING: lossy export, " << rounded << " coefficient(s) rounded to " << significant
           << " significant digits\n";
    os << body.str();
    return os.str();
}

} // namespace radrat
