#pragma once

#include <random>
#include <string>

#include "wcop/expr.hpp"
#include "wcop/polynomial.hpp"

namespace wcop::test {

inline Polynomial poly(const std::string& text, std::size_t dim = 1) {
    auto p = parse_expr(text, dim).as_polynomial();
    if (!p) throw std::invalid_argument("not a polynomial: " + text);
    return *p;
}

inline Expr ex(const std::string& text, std::size_t dim = 1) { return parse_expr(text, dim); }

/// Random polynomial with small integer coefficients and total degree <= deg.
inline Polynomial random_poly(std::mt19937& rng, std::size_t dim, unsigned deg, bool allow_zero = false) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::bernoulli_distribution keep(0.6);
    for (;;) {
        Polynomial p(dim);
        for (const auto& m : indices_up_to_order(dim, deg))
            if (keep(rng)) p.add_term(m, coef(rng));
        if (allow_zero || !p.is_zero()) return p;
    }
}

/// Random polynomial whose total degree is exactly deg.
inline Polynomial random_poly_exact(std::mt19937& rng, std::size_t dim, unsigned deg) {
    std::uniform_int_distribution<int> coef(1, 4);
    Polynomial p = random_poly(rng, dim, deg, true);
    MultiIndex lead(dim);
    lead[0] = deg;
    p.add_term(lead, coef(rng));
    if (p.degree() != Degree(deg)) return random_poly_exact(rng, dim, deg);
    return p;
}

}  // namespace wcop::test
