#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wcop/polynomial.hpp"
#include "wcop/rational.hpp"

namespace wcop {

/// Rational number or one of the two infinities.
struct ExtendedRational {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rational value = 0;

    static ExtendedRational neg_inf() { return {Kind::NegInf, 0}; }
    static ExtendedRational pos_inf() { return {Kind::PosInf, 0}; }
    static ExtendedRational finite(const Rational& v) { return {Kind::Finite, v}; }
};

/// Open-closed rational interval (lo, hi] holding exactly one root.
struct RootInterval {
    Rational lo;
    Rational hi;
};

struct RootCertificate {
    Polynomial polynomial;
    std::size_t count = 0;
    std::vector<RootInterval> intervals;
};

/// Dense univariate helpers over the rationals (ascending coefficients).
namespace upoly {

using Coeffs = std::vector<Rational>;

void trim(Coeffs& p);
Coeffs derivative(const Coeffs& p);
Coeffs remainder(Coeffs a, const Coeffs& b);
Coeffs gcd(Coeffs a, Coeffs b);
Coeffs quotient(Coeffs a, const Coeffs& b);
/// Positive rescaling to a primitive integer polynomial.
Coeffs primitive(const Coeffs& p);
Coeffs square_free(const Coeffs& p);
int sign_at(const Coeffs& p, const Rational& x);
int sign_at(const Coeffs& p, const ExtendedRational& x);
/// 1 + max |a_i / a_n|; every real root lies strictly inside (-B, B).
Rational cauchy_bound(const Coeffs& p);

}  // namespace upoly

/// Univariate coefficients of p; p may live in several variables as long as
/// it depends on at most one of them.
std::vector<Rational> univariate_view(const Polynomial& p);

/// Sturm chain of the square-free part of p.
std::vector<upoly::Coeffs> sturm_sequence(const Polynomial& p);

/// Number of distinct real roots in (a, b].
std::size_t sturm_count(const Polynomial& p, const ExtendedRational& a, const ExtendedRational& b);

/// Distinct real roots with pairwise disjoint isolating intervals.
RootCertificate isolate_real_roots(const Polynomial& p);

/// Whether phi(x) - x has a real root; the certificate isolates the roots of phi(x) - x.
std::pair<bool, RootCertificate> has_fixed_point(const Polynomial& phi);

/// p(x) > 0 for every real x.
bool is_positive_on_reals(const Polynomial& p);

/// p has at least one real root.
bool has_real_root(const Polynomial& p);

/// p has a real root of odd multiplicity, i.e. p takes both signs.
bool has_sign_change(const Polynomial& p);

/// The polynomial map x -> phi(x) is one-to-one on R.
bool is_injective(const Polynomial& phi);

}  // namespace wcop
