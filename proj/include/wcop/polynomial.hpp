#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wcop/multi_index.hpp"
#include "wcop/rational.hpp"

namespace wcop {

/// Total degree; std::nullopt stands for the zero polynomial (degree -inf).
using Degree = std::optional<unsigned>;

/// Exact sparse polynomial over the rationals in d variables.
/// No zero coefficient is ever stored.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rational>;

    explicit Polynomial(std::size_t dim = 1) : dim_(dim) {}
    static Polynomial constant(std::size_t dim, const Rational& c);
    static Polynomial variable(std::size_t dim, std::size_t axis);
    /// Univariate polynomial from ascending coefficients.
    static Polynomial from_coefficients(const std::vector<Rational>& ascending);

    std::size_t dim() const noexcept { return dim_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    Degree degree() const;
    /// Degree in a single variable.
    Degree degree_in(std::size_t axis) const;
    Rational coefficient(const MultiIndex& m) const;
    Rational constant_term() const;

    /// Axes that occur with positive exponent.
    std::vector<std::size_t> used_axes() const;

    void add_term(const MultiIndex& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(unsigned k) const;

    Polynomial derivative(std::size_t axis) const;
    Polynomial derivative(const MultiIndex& alpha) const;
    /// Substitute polynomials for the variables (inner.size() == dim()).
    Polynomial compose(const std::vector<Polynomial>& inner) const;

    Rational evaluate(const std::vector<Rational>& x) const;
    double evaluate(const std::vector<double>& x) const;

    /// Ascending coefficients in `axis`; every other variable must be absent.
    std::vector<Rational> univariate_coefficients(std::size_t axis = 0) const;

    std::string to_string() const;

    bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    friend int compare(const Polynomial& a, const Polynomial& b);

private:
    std::size_t dim_;
    TermMap terms_;
};

int compare(const Polynomial& a, const Polynomial& b);

std::string variable_name(std::size_t dim, std::size_t axis);

}  // namespace wcop
