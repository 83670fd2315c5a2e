#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcop/logreal.hpp"
#include "wcop/multi_index.hpp"
#include "wcop/polynomial.hpp"
#include "wcop/rational.hpp"

namespace wcop {

struct Group;

/// Closed-form expression in d real variables.
///
/// Held in a canonical normal form: a sum of groups
///     num(x) / prod p_i(x)^{m_i} * prod sqrt(r_j(x)) * exp(a(x))
/// where num, p_i, r_j are polynomials, every radicand is positive on R^d and
/// a is again an Expr. Groups are keyed by (a, {r_j}); within a group the
/// denominator exponents are minimal. Two Exprs are equal iff they are equal
/// as functions for all inputs the grammar can produce (up to coincidences
/// between distinct radicands).
class Expr {
public:
    explicit Expr(std::size_t dim = 1);
    static Expr constant(std::size_t dim, const Rational& c);
    static Expr variable(std::size_t dim, std::size_t axis);
    static Expr from_polynomial(const Polynomial& p);
    /// sqrt(p); throws PositivityError unless p > 0 on R^d can be certified.
    static Expr sqrt_poly(const Polynomial& p);
    static Expr exp(const Expr& arg);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Group>& groups() const noexcept;
    bool is_zero() const noexcept;
    bool is_exp_free() const noexcept;
    /// No exp and no radicals anywhere.
    bool is_polynomial() const noexcept;
    std::optional<Polynomial> as_polynomial() const;
    /// Size measure used by the iterate caps.
    std::size_t node_count() const noexcept;

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator*(const Rational& c) const;
    Expr pow(unsigned k) const;

    Expr differentiate(std::size_t axis) const;
    Expr derivative(const MultiIndex& alpha) const;
    /// Substitute inner[i] for x_{i+1}; throws GrammarClosureError when a
    /// radicand stops being a polynomial.
    Expr compose(const std::vector<Expr>& inner) const;

    LogReal eval_logreal(const std::vector<LogReal>& x) const;
    LogReal eval_logreal(const std::vector<double>& x) const;
    double evaluate(const std::vector<double>& x) const;

    std::string to_string() const;

    bool operator==(const Expr& o) const;
    friend int compare(const Expr& a, const Expr& b);

    /// Canonicalizing constructor from arbitrary groups.
    static Expr from_groups(std::size_t dim, std::vector<Group> groups);

private:
    std::size_t dim_;
    std::shared_ptr<const std::vector<Group>> groups_;
};

int compare(const Expr& a, const Expr& b);

/// One group of the normal form.
struct Group {
    Polynomial num;
    /// (base, m) pairs, sorted by base, m >= 1.
    std::vector<std::pair<Polynomial, unsigned>> dens;
    /// Square-root radicands, sorted, distinct.
    std::vector<Polynomial> roots;
    Expr exparg;
};

/// Parse the expression grammar. Variables are x1..xd; `x` is an alias of x1.
/// Throws SyntaxError or PositivityError.
Expr parse_expr(const std::string& text, std::size_t dim);

/// Comma-separated list of exactly `dim` expressions (a symbol phi).
std::vector<Expr> parse_expr_list(const std::string& text, std::size_t dim);

std::vector<Expr> identity_map(std::size_t dim);

/// Exact division; nullopt when p does not divide n.
std::optional<Polynomial> exact_divide(const Polynomial& n, const Polynomial& p);

}  // namespace wcop
