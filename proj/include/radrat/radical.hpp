#pragma once

/**
 * @file radical.hpp
 * @brief Exact arithmetic in Q[p_1^(1/q_1), ..., p_m^(1/q_m)] for distinct primes p_i.
 *
 * An element is stored in canonical coordinates: a sparse map from exponent
 * tuples (k_1, ..., k_m), 0 <= k_i < q_i, to rational coefficients. Because
 * the monomials prod p_i^(k_i/q_i) are linearly independent over Q (distinct
 * prime radicands, exponents below the root degree), two elements are equal
 * iff their coordinates agree over a common basis, and an element is zero iff
 * its map is empty. Zero tests are therefore exact and cheap.
 *
 * Operands with different bases are moved onto the union basis (per-prime lcm
 * of the degrees) before combining. Printing and ordering use the minimized
 * basis, which is unique for a given value.
 */

#include "expr.hpp"
#include "field.hpp"
#include "interval.hpp"
#include "linalg.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace radrat {

/// The generator p^(1/q).
struct RootFactor {
    BigInt prime;
    std::uint32_t degree = 1;

    bool operator==(const RootFactor&) const = default;
};

/// Ordered list of root factors, primes strictly increasing, degrees >= 2.
class RadicalBasis {
public:
    RadicalBasis() = default;

    explicit RadicalBasis(std::vector<RootFactor> factors) : factors_(std::move(factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].degree < 2) throw DomainError("root degree must be at least 2");
            if (i > 0 && !(factors_[i - 1].prime < factors_[i].prime))
                throw DomainError("basis primes must be strictly increasing");
        }
    }

    std::size_t size() const { return factors_.size(); }
    bool empty() const { return factors_.empty(); }
    const RootFactor& operator[](std::size_t i) const { return factors_[i]; }
    auto begin() const { return factors_.begin(); }
    auto end() const { return factors_.end(); }
    const std::vector<RootFactor>& factors() const { return factors_; }

    /// prod q_i, saturating at UINT64_MAX.
    std::uint64_t dimension() const {
        std::uint64_t d = 1;
        for (const auto& f : factors_) {
            if (d > std::numeric_limits<std::uint64_t>::max() / f.degree)
                return std::numeric_limits<std::uint64_t>::max();
            d *= f.degree;
        }
        return d;
    }

    /// Index of the factor for `prime`, or size() if absent.
    std::size_t index_of(const BigInt& prime) const {
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (factors_[i].prime == prime) return i;
        return factors_.size();
    }

    bool operator==(const RadicalBasis&) const = default;

private:
    std::vector<RootFactor> factors_;
};

/// Exponent tuple aligned with a RadicalBasis.
using Monomial = std::vector<std::uint32_t>;

namespace detail {

inline void check_dimension(const RadicalBasis& basis) {
    if (basis.dimension() > limits().dimension_cap)
        throw ResourceError("radical basis dimension " +
                            (basis.dimension() == std::numeric_limits<std::uint64_t>::max()
                                 ? std::string("(overflow)")
                                 : std::to_string(basis.dimension())) +
                            " exceeds the cap of " + std::to_string(limits().dimension_cap));
}

// Per-prime lcm of degrees; no cap check.
inline RadicalBasis merge_bases(const RadicalBasis& a, const RadicalBasis& b) {
    std::vector<RootFactor> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].prime < b[j].prime)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].prime < a[i].prime) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].prime, std::lcm(a[i].degree, b[j].degree)});
            ++i;
            ++j;
        }
    }
    return RadicalBasis(std::move(out));
}

} // namespace detail

/// Union basis with the configured dimension cap enforced.
inline RadicalBasis union_basis(const RadicalBasis& a, const RadicalBasis& b) {
    if (a == b) return a;
    RadicalBasis u = detail::merge_bases(a, b);
    detail::check_dimension(u);
    return u;
}

class RadicalNumber {
public:
    using Terms = std::map<Monomial, Rational>;

    RadicalNumber() = default;
    RadicalNumber(const Rational& r) {
        if (sgn(r) != 0) terms_.emplace(Monomial{}, r);
    }
    RadicalNumber(long v) : RadicalNumber(Rational(v)) {}

    /// Builds an element from coordinates; zero coefficients are dropped and
    /// exponents must already satisfy 0 <= k_i < q_i.
    static RadicalNumber from_terms(RadicalBasis basis, const Terms& terms) {
        RadicalNumber x;
        for (const auto& [m, c] : terms) {
            if (m.size() != basis.size()) throw DomainError("monomial does not match basis");
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] >= basis[i].degree) throw DomainError("monomial exponent out of range");
            if (sgn(c) != 0) x.terms_[m] += c;
        }
        std::erase_if(x.terms_, [](const auto& t) { return sgn(t.second) == 0; });
        x.basis_ = std::move(basis);
        return x;
    }

    /// p^(exponent/degree) with 0 <= exponent < degree, degree >= 2.
    static RadicalNumber root_power(const BigInt& prime, std::uint32_t degree, std::uint32_t exponent = 1) {
        RadicalBasis b({{prime, degree}});
        return from_terms(b, {{Monomial{exponent}, Rational(1)}});
    }

    const RadicalBasis& basis() const { return basis_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && is_unit_monomial(terms_.begin()->first));
    }

    /// Coefficient of the all-zeros monomial.
    Rational rational_part() const { return coefficient(Monomial(basis_.size(), 0)); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Same value expressed over `target`, which must refine this basis
    /// (every prime present, each degree a multiple of ours).
    RadicalNumber rebased(const RadicalBasis& target) const {
        if (target == basis_) return *this;
        std::vector<std::size_t> position(basis_.size());
        std::vector<std::uint32_t> stretch(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            position[i] = target.index_of(basis_[i].prime);
            if (position[i] == target.size() || target[position[i]].degree % basis_[i].degree != 0)
                throw ContractError("rebase target does not refine the source basis");
            stretch[i] = target[position[i]].degree / basis_[i].degree;
        }
        RadicalNumber out;
        out.basis_ = target;
        for (const auto& [m, c] : terms_) {
            Monomial n(target.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) n[position[i]] = m[i] * stretch[i];
            out.terms_.emplace(std::move(n), c);
        }
        return out;
    }

    /// Same value over the smallest basis that holds it.
    RadicalNumber minimized() const {
        std::vector<RootFactor> factors;
        std::vector<std::size_t> kept;
        std::vector<std::uint32_t> divisor;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            std::uint32_t g = basis_[i].degree;
            for (const auto& t : terms_) g = std::gcd(g, t.first[i]);
            if (g == basis_[i].degree) continue;
            factors.push_back({basis_[i].prime, basis_[i].degree / g});
            kept.push_back(i);
            divisor.push_back(g);
        }
        if (factors.size() == basis_.size() &&
            std::all_of(divisor.begin(), divisor.end(), [](std::uint32_t g) { return g == 1; }))
            return *this;
        RadicalNumber out;
        out.basis_ = RadicalBasis(std::move(factors));
        for (const auto& [m, c] : terms_) {
            Monomial n(kept.size());
            for (std::size_t j = 0; j < kept.size(); ++j) n[j] = m[kept[j]] / divisor[j];
            out.terms_.emplace(std::move(n), c);
        }
        return out;
    }

    RadicalNumber scaled(const Rational& factor) const {
        if (sgn(factor) == 0) return {};
        RadicalNumber out = *this;
        for (auto& t : out.terms_) t.second *= factor;
        return out;
    }

    RadicalNumber operator-() const { return scaled(Rational(-1)); }

    friend RadicalNumber operator+(const RadicalNumber& a, const RadicalNumber& b) {
        if (a.basis_ != b.basis_) {
            auto u = union_basis(a.basis_, b.basis_);
            return a.rebased(u) + b.rebased(u);
        }
        RadicalNumber out = a;
        for (const auto& [m, c] : b.terms_) {
            auto [it, inserted] = out.terms_.emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (sgn(it->second) == 0) out.terms_.erase(it);
            }
        }
        return out;
    }

    friend RadicalNumber operator-(const RadicalNumber& a, const RadicalNumber& b) { return a + (-b); }

    friend RadicalNumber operator*(const RadicalNumber& a, const RadicalNumber& b) {
        if (a.basis_ != b.basis_) {
            if (a.is_rational()) return b.scaled(a.rational_part_any());
            if (b.is_rational()) return a.scaled(b.rational_part_any());
            auto u = union_basis(a.basis_, b.basis_);
            return a.rebased(u) * b.rebased(u);
        }
        const auto& basis = a.basis_;
        RadicalNumber out;
        out.basis_ = basis;
        Monomial m(basis.size());
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Rational c = ca * cb;
                for (std::size_t i = 0; i < m.size(); ++i) {
                    m[i] = ma[i] + mb[i];
                    if (m[i] >= basis[i].degree) {
                        m[i] -= basis[i].degree;
                        c *= basis[i].prime;
                    }
                }
                auto [it, inserted] = out.terms_.emplace(m, c);
                if (!inserted) it->second += c;
            }
        }
        std::erase_if(out.terms_, [](const auto& t) { return sgn(t.second) == 0; });
        return out;
    }

    friend RadicalNumber operator/(const RadicalNumber& a, const RadicalNumber& b);

    RadicalNumber& operator+=(const RadicalNumber& o) { return *this = *this + o; }
    RadicalNumber& operator-=(const RadicalNumber& o) { return *this = *this - o; }
    RadicalNumber& operator*=(const RadicalNumber& o) { return *this = *this * o; }

    /// Value equality (bases may differ).
    friend bool operator==(const RadicalNumber& a, const RadicalNumber& b) {
        if (a.basis_ == b.basis_) return a.terms_ == b.terms_;
        if (a.is_rational() && b.is_rational()) return a.rational_part_any() == b.rational_part_any();
        const auto ma = a.minimized();
        const auto mb = b.minimized();
        return ma.basis_ == mb.basis_ && ma.terms_ == mb.terms_;
    }

private:
    static bool is_unit_monomial(const Monomial& m) {
        return std::all_of(m.begin(), m.end(), [](std::uint32_t k) { return k == 0; });
    }

    // Rational value of an element already known to be rational.
    Rational rational_part_any() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

    RadicalBasis basis_;
    Terms terms_;
};

/// Three-way comparison of canonical (minimized) forms; a total order used for
/// map keys, unrelated to the numeric order.
inline int canonical_compare(const RadicalNumber& x, const RadicalNumber& y) {
    const auto a = x.minimized();
    const auto b = y.minimized();
    const auto& fa = a.basis().factors();
    const auto& fb = b.basis().factors();
    for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i) {
        if (int c = cmp(fa[i].prime, fb[i].prime); c != 0) return c < 0 ? -1 : 1;
        if (fa[i].degree != fb[i].degree) return fa[i].degree < fb[i].degree ? -1 : 1;
    }
    if (fa.size() != fb.size()) return fa.size() < fb.size() ? -1 : 1;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = cmp(ia->second, ib->second); c != 0) return c < 0 ? -1 : 1;
    }
    if (ia != a.terms().end()) return 1;
    if (ib != b.terms().end()) return -1;
    return 0;
}

struct CanonicalLess {
    bool operator()(const RadicalNumber& a, const RadicalNumber& b) const { return canonical_compare(a, b) < 0; }
};

inline bool is_zero(const RadicalNumber& x) { return x.is_zero(); }
inline bool is_rational(const RadicalNumber& x) { return x.is_rational(); }

/// Moves every input onto one common basis (per-prime lcm of degrees).
inline std::pair<RadicalBasis, std::vector<RadicalNumber>> unify_bases(std::span<const RadicalNumber> xs) {
    RadicalBasis u;
    for (const auto& x : xs) u = detail::merge_bases(u, x.basis());
    detail::check_dimension(u);
    std::vector<RadicalNumber> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.rebased(u));
    return {u, std::move(out)};
}

namespace detail {

inline std::uint32_t smallest_prime_factor(std::uint32_t n) {
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

// adj(A) e_0 and det(A) for a square matrix over a commutative Q-algebra,
// division-free except for the integer divisions of Faddeev-LeVerrier.
template <class T>
std::pair<std::vector<T>, T> adjugate_column_and_det(const Matrix<T>& a) {
    const std::size_t n = a.size();
    auto multiply = [n](const Matrix<T>& x, const Matrix<T>& y) {
        Matrix<T> z(n, std::vector<T>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (x[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
            }
        return z;
    };
    Matrix<T> m(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
    T c;
    for (std::size_t k = 1;; ++k) {
        Matrix<T> am = multiply(a, m);
        T trace;
        for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
        c = trace.scaled(Rational(-1, static_cast<long>(k)));
        if (k == n) break;
        m = std::move(am);
        for (std::size_t i = 0; i < n; ++i) m[i][i] += c;
    }
    // A * M_n = -c_0 I, det A = (-1)^n c_0, adj A = (-1)^(n+1) M_n
    const Rational s = (n % 2 == 0) ? Rational(-1) : Rational(1);
    std::vector<T> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = m[i][0].scaled(s);
    return {column, c.scaled(Rational(-s))};
}

// Inverse by descending a tower of pure radical extensions: F = F'(phi) with
// phi^l = s in F'. The adjugate of the multiplication-by-x matrix over F'
// gives x * y' = det in F', and det is inverted one level down.
inline RadicalNumber tower_inverse(const RadicalNumber& input) {
    const RadicalNumber x = input.minimized();
    if (x.is_rational()) return RadicalNumber(Rational(1 / x.rational_part()));
    const RadicalBasis& basis = x.basis();
    const std::size_t i = basis.size() - 1;
    const std::uint32_t q = basis[i].degree;
    const std::uint32_t l = smallest_prime_factor(q);
    const std::uint32_t q_sub = q / l;
    const bool dropped = q_sub == 1;

    std::vector<RootFactor> sub_factors = basis.factors();
    if (dropped) sub_factors.pop_back();
    else sub_factors.back().degree = q_sub;
    const RadicalBasis sub_basis(sub_factors);

    std::vector<RadicalNumber::Terms> parts(l);
    for (const auto& [m, c] : x.terms()) {
        Monomial n = m;
        if (dropped) n.pop_back();
        else n[i] = m[i] / l;
        parts[m[i] % l].emplace(std::move(n), c);
    }
    std::vector<RadicalNumber> xs;
    for (const auto& p : parts) xs.push_back(RadicalNumber::from_terms(sub_basis, p));

    RadicalNumber s = dropped ? RadicalNumber(Rational(basis[i].prime))
                              : [&] {
                                    Monomial g(sub_basis.size(), 0);
                                    g[i] = 1;
                                    return RadicalNumber::from_terms(sub_basis, {{g, Rational(1)}});
                                }();

    std::vector<RadicalNumber> cofactor;
    RadicalNumber det;
    if (l == 2) {
        cofactor = {xs[0], -xs[1]};
        det = xs[0] * xs[0] - s * xs[1] * xs[1];
    } else if (l == 3) {
        cofactor = {xs[0] * xs[0] - s * xs[1] * xs[2], s * xs[2] * xs[2] - xs[0] * xs[1],
                    xs[1] * xs[1] - xs[0] * xs[2]};
        det = xs[0] * cofactor[0] + s * (xs[2] * cofactor[1] + xs[1] * cofactor[2]);
    } else {
        Matrix<RadicalNumber> mult(l, std::vector<RadicalNumber>(l));
        for (std::uint32_t r = 0; r < l; ++r)
            for (std::uint32_t c = 0; c < l; ++c) mult[r][c] = r >= c ? xs[r - c] : s * xs[r + l - c];
        std::tie(cofactor, det) = adjugate_column_and_det(mult);
    }

    const RadicalNumber det_inverse = tower_inverse(det);
    RadicalNumber::Terms lifted;
    for (std::uint32_t j = 0; j < l; ++j) {
        const RadicalNumber on_sub = (cofactor[j] * det_inverse).rebased(sub_basis);
        for (const auto& [m, c] : on_sub.terms()) {
            Monomial n = m;
            if (dropped) n.push_back(j);
            else n[i] = m[i] * l + j;
            lifted.emplace(std::move(n), c);
        }
    }
    return RadicalNumber::from_terms(basis, lifted);
}

} // namespace detail

/// Multiplicative inverse, exact.
inline RadicalNumber invert(const RadicalNumber& x) {
    if (x.is_zero()) throw DomainError("inverse of zero");
    detail::check_dimension(x.basis());
    return detail::tower_inverse(x);
}

/// Inverse through the dense multiplication-by-x matrix over Q (dimension
/// prod q_i). Independent of invert(); intended for small bases.
inline RadicalNumber invert_by_linear_system(const RadicalNumber& input) {
    if (input.is_zero()) throw DomainError("inverse of zero");
    const RadicalNumber x = input.minimized();
    const RadicalBasis& basis = x.basis();
    detail::check_dimension(basis);
    const std::size_t dim = static_cast<std::size_t>(basis.dimension());
    std::vector<Monomial> monomials;
    Monomial m(basis.size(), 0);
    for (std::size_t n = 0; n < dim; ++n) {
        monomials.push_back(m);
        for (std::size_t i = basis.size(); i-- > 0;) {
            if (++m[i] < basis[i].degree) break;
            m[i] = 0;
        }
    }
    Matrix<Rational> a(dim, std::vector<Rational>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const auto product = x * RadicalNumber::from_terms(basis, {{monomials[col], Rational(1)}});
        for (std::size_t row = 0; row < dim; ++row) a[row][col] = product.coefficient(monomials[row]);
    }
    std::vector<Rational> e0(dim, Rational(0));
    e0[0] = 1;
    const auto y = solve_linear(std::move(a), e0);
    if (!y) throw DomainError("multiplication map is singular");
    RadicalNumber::Terms terms;
    for (std::size_t n = 0; n < dim; ++n) terms.emplace(monomials[n], (*y)[n]);
    return RadicalNumber::from_terms(basis, terms);
}

inline RadicalNumber operator/(const RadicalNumber& a, const RadicalNumber& b) {
    if (b.is_rational()) {
        if (b.is_zero()) throw DomainError("division by zero");
        return a.scaled(Rational(1 / b.rational_part()));
    }
    return a * invert(b);
}

/// Enclosure of prod p_i^(k_i/q_i) on the 2^-bits grid.
inline Interval monomial_enclosure(const RadicalBasis& basis, const Monomial& m, std::size_t bits) {
    std::uint32_t common = 1;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) common = std::lcm(common, basis[i].degree);
    if (common == 1) return Interval::point(Rational(1));
    BigInt radicand = 1;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) radicand *= pow(basis[i].prime, m[i] * (common / basis[i].degree));
    return root_enclosure(Rational(radicand), common, bits);
}

/// Interval guaranteed to contain x, of width at most 2^(1 - precision_bits).
inline Interval evaluate(const RadicalNumber& x, std::size_t precision_bits) {
    if (precision_bits < 16) throw ContractError("evaluate requires at least 16 bits of precision");
    if (x.is_rational()) return Interval::point(x.rational_part());
    Rational magnitude = 0;
    for (const auto& t : x.terms()) magnitude += abs(t.second);
    const std::size_t bits =
        precision_bits + bit_length(ceil(magnitude)) + bit_length(BigInt(x.terms().size())) + 2;
    Interval sum = Interval::point(Rational(0));
    for (const auto& [m, c] : x.terms()) sum = sum + c * monomial_enclosure(x.basis(), m, bits);
    return sum;
}

/// Exact sign: zero is decided on coordinates, nonzero values by interval
/// refinement from the configured start precision, doubling up to the cap.
inline int sign(const RadicalNumber& x) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return sgn(x.rational_part());
    for (std::size_t bits = limits().sign_start_bits; bits <= limits().precision_cap_bits; bits *= 2) {
        if (int s = evaluate(x, bits).certain_sign(); s != 0) return s;
    }
    throw ResourceError("sign determination exceeded the precision cap of " +
                        std::to_string(limits().precision_cap_bits) + " bits");
}

template <>
struct field_traits<RadicalNumber> {
    static RadicalNumber zero() { return {}; }
    static RadicalNumber one() { return RadicalNumber(1); }
    static bool is_zero(const RadicalNumber& x) { return x.is_zero(); }
    static int sign(const RadicalNumber& x) { return radrat::sign(x); }
    static RadicalNumber inverse(const RadicalNumber& x) { return invert(x); }
};

/// Canonical text: terms in monomial order, "c * (p)^(k/q) * ..." with the
/// coefficient omitted when it is 1. Parses back through the model grammar.
inline std::string to_string(const RadicalNumber& value) {
    const RadicalNumber x = value.minimized();
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        const bool negative = sgn(c) < 0;
        const Rational magnitude = abs(c);
        std::string factors;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            const std::uint32_t g = std::gcd(m[i], x.basis()[i].degree);
            if (!factors.empty()) factors += " * ";
            factors += "(" + to_string(x.basis()[i].prime) + ")^(" + std::to_string(m[i] / g) + "/" +
                       std::to_string(x.basis()[i].degree / g) + ")";
        }
        std::string body;
        if (factors.empty()) body = to_string(magnitude);
        else if (magnitude == 1) body = factors;
        else body = to_string(magnitude) + " * " + factors;
        if (first) out += (negative ? "-" : "") + body;
        else out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const RadicalNumber& x) { return os << to_string(x); }

namespace detail {

// n^(u/v) for integer n >= 1, u >= 0, v >= 1, as a single canonical term.
inline RadicalNumber integer_power(const BigInt& n, unsigned long u, unsigned long v) {
    if (n < 1) throw DomainError("radicand must be at least 1, got " + to_string(n));
    if (u == 0 || n == 1) return RadicalNumber(1);
    Rational coefficient = 1;
    std::vector<RootFactor> factors;
    Monomial m;
    for (const auto& [p, e] : factorize(n)) {
        const unsigned long total = e * u;
        const unsigned long g = std::gcd(total, v);
        const unsigned long num = total / g, den = v / g;
        coefficient *= pow(p, num / den);
        if (num % den != 0) {
            if (den > std::numeric_limits<std::uint32_t>::max())
                throw ResourceError("root degree too large");
            factors.push_back({p, static_cast<std::uint32_t>(den)});
            m.push_back(static_cast<std::uint32_t>(num % den));
        }
    }
    RadicalBasis basis(std::move(factors));
    check_dimension(basis);
    return RadicalNumber::from_terms(std::move(basis), {{m, coefficient}});
}

// a^e for rational a > 0 and rational e.
inline RadicalNumber rational_power(const Rational& a, const Rational& e) {
    if (sgn(a) <= 0) throw DomainError("power base must be a positive rational");
    const BigInt& num = e.get_num();
    const BigInt& den = e.get_den();
    const BigInt magnitude = abs(num);
    if (!magnitude.fits_ulong_p() || !den.fits_ulong_p()) throw ResourceError("exponent too large");
    const unsigned long u = magnitude.get_ui(), v = den.get_ui();
    RadicalNumber r = integer_power(a.get_num(), u, v) / integer_power(a.get_den(), u, v);
    return sgn(num) < 0 ? invert(r) : r;
}

} // namespace detail

/// Canonical form of a radical expression: radicands factored into primes,
/// exponents of each prime over their least common denominator, integer
/// powers folded into coefficients, over the minimal basis.
inline RadicalNumber canonicalize(const RadicalExpr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
    case K::number: return RadicalNumber(e.value());
    case K::root:
        if (e.degree() < 2) throw DomainError("root degree must be at least 2");
        return detail::integer_power(e.radicand(), 1, e.degree()).minimized();
    case K::power: {
        const RadicalNumber base = canonicalize(e.lhs());
        if (!base.is_rational()) throw DomainError("power base must be a positive rational");
        return detail::rational_power(base.rational_part(), e.value()).minimized();
    }
    case K::negate: return -canonicalize(e.lhs());
    case K::add: return (canonicalize(e.lhs()) + canonicalize(e.rhs())).minimized();
    case K::subtract: return (canonicalize(e.lhs()) - canonicalize(e.rhs())).minimized();
    case K::multiply: return (canonicalize(e.lhs()) * canonicalize(e.rhs())).minimized();
    case K::divide: {
        const RadicalNumber d = canonicalize(e.rhs());
        if (d.is_zero()) throw DomainError("division by zero");
        return (canonicalize(e.lhs()) / d).minimized();
    }
    case K::variable: throw ContractError("variable '" + e.name() + "' in a radical expression");
    case K::exp: throw ContractError("exp() in a radical expression");
    }
    throw ContractError("unknown expression node");
}

/// Direct interval evaluation of an expression tree, without canonicalizing.
inline Interval evaluate_expr(const RadicalExpr& e, std::size_t bits) {
    using K = Expr::Kind;
    const std::size_t grid = bits + 8;
    switch (e.kind()) {
    case K::number: return Interval::point(e.value());
    case K::root: return root_enclosure(Rational(e.radicand()), e.degree(), grid);
    case K::power: {
        const Interval base = evaluate_expr(e.lhs(), bits);
        if (sgn(base.lo) <= 0) throw DomainError("power base enclosure is not positive");
        const Rational& ex = e.value();
        const unsigned long u = BigInt(abs(ex.get_num())).get_ui(), v = ex.get_den().get_ui();
        Interval r{root_enclosure(pow(base.lo, u), v, grid).lo, root_enclosure(pow(base.hi, u), v, grid).hi};
        return sgn(ex) < 0 ? Interval::point(Rational(1)) / r : r;
    }
    case K::negate: return -evaluate_expr(e.lhs(), bits);
    case K::add: return evaluate_expr(e.lhs(), bits) + evaluate_expr(e.rhs(), bits);
    case K::subtract: return evaluate_expr(e.lhs(), bits) - evaluate_expr(e.rhs(), bits);
    case K::multiply: return (evaluate_expr(e.lhs(), bits) * evaluate_expr(e.rhs(), bits)).round_outward(grid);
    case K::divide: return (evaluate_expr(e.lhs(), bits) / evaluate_expr(e.rhs(), bits)).round_outward(grid);
    case K::variable:
    case K::exp: throw ContractError("not a radical expression");
    }
    throw ContractError("unknown expression node");
}

} // namespace radrat
