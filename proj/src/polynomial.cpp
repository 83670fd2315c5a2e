#include "wcop/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "wcop/errors.hpp"

namespace wcop {

Polynomial Polynomial::constant(std::size_t dim, const Rational& c) {
    Polynomial p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw DimensionMismatch("variable axis out of range");
    Polynomial p(dim);
    p.add_term(MultiIndex::unit(dim, axis), Rational(1));
    return p;
}

Polynomial Polynomial::from_coefficients(const std::vector<Rational>& ascending) {
    Polynomial p(1);
    for (std::size_t k = 0; k < ascending.size(); ++k)
        p.add_term(MultiIndex{static_cast<unsigned>(k)}, ascending[k]);
    return p;
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

Degree Polynomial::degree() const {
    if (terms_.empty()) return std::nullopt;
    // graded order: the last key has the largest total degree
    return terms_.rbegin()->first.order();
}

Degree Polynomial::degree_in(std::size_t axis) const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[axis]);
    return d;
}

Rational Polynomial::coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(MultiIndex(dim_)); }

std::vector<std::size_t> Polynomial::used_axes() const {
    std::vector<std::size_t> axes;
    for (std::size_t i = 0; i < dim_; ++i)
        for (const auto& [m, c] : terms_)
            if (m[i] > 0) {
                axes.push_back(i);
                break;
            }
    return axes;
}

void Polynomial::add_term(const MultiIndex& m, const Rational& c) {
    if (m.dim() != dim_) throw DimensionMismatch("monomial dimension does not match polynomial");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("polynomial dimensions differ");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("polynomial dimensions differ");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(*this);
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r(*this);
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch("polynomial dimensions differ");
    Polynomial r(dim_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma + mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (sgn(c) == 0) return Polynomial(dim_);
    Polynomial r(*this);
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(dim_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t axis) const {
    if (axis >= dim_) throw DimensionMismatch("derivative axis out of range");
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) {
        if (m[axis] == 0) continue;
        MultiIndex lowered = m;
        --lowered[axis];
        r.add_term(lowered, c * m[axis]);
    }
    return r;
}

Polynomial Polynomial::derivative(const MultiIndex& alpha) const {
    if (alpha.dim() != dim_) throw DimensionMismatch("derivative order dimension mismatch");
    Polynomial r(*this);
    for (std::size_t i = 0; i < dim_; ++i)
        for (unsigned k = 0; k < alpha[i]; ++k) r = r.derivative(i);
    return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& inner) const {
    if (inner.size() != dim_) throw DimensionMismatch("composition needs one inner polynomial per variable");
    std::size_t out_dim = inner.empty() ? 1 : inner.front().dim();
    for (const auto& q : inner)
        if (q.dim() != out_dim) throw DimensionMismatch("inner polynomials differ in dimension");
    // cache powers of each inner polynomial
    std::vector<std::vector<Polynomial>> powers(dim_);
    for (std::size_t i = 0; i < dim_; ++i) powers[i].push_back(constant(out_dim, 1));
    auto power_of = [&](std::size_t i, unsigned k) -> const Polynomial& {
        while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * inner[i]);
        return powers[i][k];
    };
    Polynomial r(out_dim);
    for (const auto& [m, c] : terms_) {
        Polynomial term = constant(out_dim, c);
        for (std::size_t i = 0; i < dim_; ++i)
            if (m[i]) term = term * power_of(i, m[i]);
        r += term;
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
    if (x.size() != dim_) throw DimensionMismatch("evaluation point dimension mismatch");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < dim_; ++i)
            if (m[i]) t *= rational_pow(x[i], m[i]);
        sum += t;
    }
    return sum;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
    if (x.size() != dim_) throw DimensionMismatch("evaluation point dimension mismatch");
    double sum = 0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (std::size_t i = 0; i < dim_; ++i)
            if (m[i]) t *= std::pow(x[i], static_cast<double>(m[i]));
        sum += t;
    }
    return sum;
}

std::vector<Rational> Polynomial::univariate_coefficients(std::size_t axis) const {
    std::vector<Rational> out;
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < dim_; ++i)
            if (i != axis && m[i] != 0)
                throw DimensionMismatch("polynomial depends on more than one variable");
        if (out.size() <= m[axis]) out.resize(m[axis] + 1, Rational(0));
        out[m[axis]] = c;
    }
    return out;
}

std::string variable_name(std::size_t dim, std::size_t axis) {
    return dim == 1 ? std::string("x") : "x" + std::to_string(axis + 1);
}

namespace {

std::string monomial_string(const MultiIndex& m) {
    std::string s;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += variable_name(m.dim(), i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

}  // namespace

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = abs(c);
        std::string mono = monomial_string(m);
        if (first) {
            if (sgn(c) < 0) s += "-";
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            s += mag.get_str();
        } else {
            if (mag != 1) s += mag.get_str() + "*";
            s += mono;
        }
    }
    return s;
}

int compare(const Polynomial& a, const Polynomial& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = cmp(ia->second, ib->second); c != 0) return c < 0 ? -1 : 1;
    }
    if (ia == a.terms_.end() && ib == b.terms_.end()) return 0;
    return ia == a.terms_.end() ? -1 : 1;
}

}  // namespace wcop
