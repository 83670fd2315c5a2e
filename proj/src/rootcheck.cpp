#include "wcop/rootcheck.hpp"

#include <cassert>

#include "wcop/errors.hpp"

namespace wcop {

namespace upoly {

void trim(Coeffs& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Coeffs derivative(const Coeffs& p) {
    Coeffs d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
    trim(d);
    return d;
}

Coeffs remainder(Coeffs a, const Coeffs& b) {
    trim(a);
    if (b.empty()) throw ZeroPolynomial("division by the zero polynomial");
    while (a.size() >= b.size()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

Coeffs quotient(Coeffs a, const Coeffs& b) {
    trim(a);
    if (b.empty()) throw ZeroPolynomial("division by the zero polynomial");
    if (a.size() < b.size()) return {};
    Coeffs q(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return q;
}

Coeffs primitive(const Coeffs& p) {
    if (p.empty()) return p;
    Integer den_lcm = 1;
    for (const auto& c : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer num_gcd = 0;
    for (const auto& c : p) {
        Integer scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    Coeffs out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c * factor);
    return out;
}

Coeffs gcd(Coeffs a, Coeffs b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = primitive(remainder(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

Coeffs square_free(const Coeffs& p) {
    Coeffs q = p;
    trim(q);
    if (q.size() <= 2) return primitive(q);
    Coeffs g = gcd(q, derivative(q));
    return primitive(quotient(q, g));
}

int sign_at(const Coeffs& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return sgn(v);
}

int sign_at(const Coeffs& p, const ExtendedRational& x) {
    if (p.empty()) return 0;
    switch (x.kind) {
        case ExtendedRational::Kind::Finite:
            return sign_at(p, x.value);
        case ExtendedRational::Kind::PosInf:
            return sgn(p.back());
        case ExtendedRational::Kind::NegInf: {
            int s = sgn(p.back());
            return (p.size() - 1) % 2 == 0 ? s : -s;
        }
    }
    return 0;
}

Rational cauchy_bound(const Coeffs& p) {
    Rational m = 0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        Rational r = abs(p[k] / p.back());
        if (r > m) m = r;
    }
    return m + 1;
}

}  // namespace upoly

std::vector<Rational> univariate_view(const Polynomial& p) {
    auto axes = p.used_axes();
    if (axes.size() > 1) throw DimensionMismatch("polynomial is not univariate");
    return p.univariate_coefficients(axes.empty() ? 0 : axes.front());
}

std::vector<upoly::Coeffs> sturm_sequence(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("Sturm sequence of the zero polynomial");
    upoly::Coeffs f = upoly::square_free(univariate_view(p));
    std::vector<upoly::Coeffs> seq{f};
    upoly::Coeffs g = upoly::primitive(upoly::derivative(f));
    while (!g.empty()) {
        seq.push_back(g);
        upoly::Coeffs r = upoly::remainder(seq[seq.size() - 2], g);
        for (auto& c : r) c = -c;
        g = upoly::primitive(r);
    }
    return seq;
}

namespace {

std::size_t sign_variations(const std::vector<upoly::Coeffs>& seq, const ExtendedRational& x) {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& q : seq) {
        int s = upoly::sign_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

bool less(const ExtendedRational& a, const ExtendedRational& b) {
    using K = ExtendedRational::Kind;
    if (a.kind == K::NegInf) return b.kind != K::NegInf;
    if (a.kind == K::PosInf) return false;
    if (b.kind == K::PosInf) return true;
    if (b.kind == K::NegInf) return false;
    return a.value < b.value;
}

std::size_t count_with(const std::vector<upoly::Coeffs>& seq, const ExtendedRational& a,
                       const ExtendedRational& b) {
    std::size_t va = sign_variations(seq, a);
    std::size_t vb = sign_variations(seq, b);
    return va - vb;
}

}  // namespace

std::size_t sturm_count(const Polynomial& p, const ExtendedRational& a, const ExtendedRational& b) {
    if (!less(a, b)) throw InvalidRange("sturm_count needs a < b");
    return count_with(sturm_sequence(p), a, b);
}

RootCertificate isolate_real_roots(const Polynomial& p) {
    auto seq = sturm_sequence(p);
    RootCertificate cert{p, 0, {}};
    const auto& f = seq.front();
    if (f.size() <= 1) return cert;
    Rational bound = upoly::cauchy_bound(f);
    struct Pending {
        Rational lo, hi;
        std::size_t count;
    };
    std::vector<Pending> stack;
    std::size_t total = count_with(seq, ExtendedRational::finite(-bound), ExtendedRational::finite(bound));
    if (total) stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
        Pending cur = stack.back();
        stack.pop_back();
        if (cur.count == 1) {
            cert.intervals.push_back({cur.lo, cur.hi});
            continue;
        }
        Rational mid = (cur.lo + cur.hi) / 2;
        std::size_t left = count_with(seq, ExtendedRational::finite(cur.lo), ExtendedRational::finite(mid));
        std::size_t right = cur.count - left;
        // push right first so intervals come out in increasing order
        if (right) stack.push_back({mid, cur.hi, right});
        if (left) stack.push_back({cur.lo, mid, left});
    }
    cert.count = cert.intervals.size();
    assert(cert.count == total);
    return cert;
}

std::pair<bool, RootCertificate> has_fixed_point(const Polynomial& phi) {
    auto coeffs = univariate_view(phi);
    Polynomial shifted = Polynomial::from_coefficients(coeffs) - Polynomial::variable(1, 0);
    if (shifted.is_zero()) {
        // phi is the identity: every point is fixed
        RootCertificate cert{shifted, 0, {}};
        return {true, cert};
    }
    RootCertificate cert = isolate_real_roots(shifted);
    bool fixed = cert.count > 0;
    Degree deg = phi.degree();
    if (!fixed && deg && *deg >= 2 && *deg % 2 != 0)
        throw InternalInconsistency("odd degree polynomial without fixed point");
    return {fixed, cert};
}

bool has_real_root(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("real roots of the zero polynomial");
    return sturm_count(p, ExtendedRational::neg_inf(), ExtendedRational::pos_inf()) > 0;
}

bool is_positive_on_reals(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("positivity of the zero polynomial");
    if (has_real_root(p)) return false;
    auto coeffs = univariate_view(p);
    return upoly::sign_at(coeffs, Rational(0)) > 0;
}

bool has_sign_change(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("sign changes of the zero polynomial");
    // Yun's square-free factorisation; odd-multiplicity factors carry the sign changes
    using namespace upoly;
    Coeffs f = univariate_view(p);
    if (f.size() <= 1) return false;
    Coeffs df = derivative(f);
    Coeffs a = gcd(f, df);
    Coeffs b = quotient(f, a);
    Coeffs c = quotient(df, a);
    Coeffs bd = derivative(b);
    Coeffs d = c;
    for (std::size_t i = 0; i < std::max(d.size(), bd.size()); ++i) {
        if (i >= d.size()) d.push_back(0);
        if (i < bd.size()) d[i] -= bd[i];
    }
    trim(d);
    for (unsigned mult = 1; b.size() > 1; ++mult) {
        Coeffs factor = gcd(b, d);
        if (mult % 2 == 1 && factor.size() > 1 && has_real_root(Polynomial::from_coefficients(factor))) return true;
        b = quotient(b, factor);
        c = quotient(d, factor);
        bd = derivative(b);
        d = c;
        for (std::size_t i = 0; i < std::max(d.size(), bd.size()); ++i) {
            if (i >= d.size()) d.push_back(0);
            if (i < bd.size()) d[i] -= bd[i];
        }
        trim(d);
    }
    return false;
}

bool is_injective(const Polynomial& phi) {
    auto d = phi.derivative(0);
    if (d.is_zero()) return false;
    return !has_sign_change(d);
}

}  // namespace wcop
