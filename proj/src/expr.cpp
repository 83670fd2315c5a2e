#include "wcop/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "wcop/errors.hpp"
#include "wcop/rootcheck.hpp"

namespace wcop {

namespace {

const std::vector<Group>& empty_groups() {
    static const std::vector<Group> empty;
    return empty;
}

int compare_polys(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (int c = compare(a[i], b[i]); c != 0) return c;
    return 0;
}

int compare_key(const Group& a, const Group& b) {
    if (int c = compare(a.exparg, b.exparg); c != 0) return c;
    return compare_polys(a.roots, b.roots);
}

int compare_full(const Group& a, const Group& b) {
    if (int c = compare_key(a, b); c != 0) return c;
    if (a.dens.size() != b.dens.size()) return a.dens.size() < b.dens.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.dens.size(); ++i) {
        if (int c = compare(a.dens[i].first, b.dens[i].first); c != 0) return c;
        if (a.dens[i].second != b.dens[i].second) return a.dens[i].second < b.dens[i].second ? -1 : 1;
    }
    return compare(a.num, b.num);
}

// p = content * primitive, content > 0, primitive has integer coefficients
// and a positive leading coefficient (graded-largest monomial).
std::pair<Rational, Polynomial> split_content(const Polynomial& p) {
    Integer den_lcm = 1;
    Integer num_gcd = 0;
    for (const auto& [m, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : p.terms()) {
        Integer scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(p.terms().rbegin()->second) < 0) content = -content;
    Polynomial prim = p * Rational(1 / content);
    return {content, prim};
}

// n = s^2 * r with r free of small square factors.
std::pair<Integer, Integer> split_square(Integer n) {
    Integer s = 1;
    Integer r = 1;
    for (unsigned long f = 2; f < 20000 && f * f <= n; ++f) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), f)) {
            n /= f;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) s *= f;
        if (e % 2 == 1) r *= f;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Integer root;
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        s *= root;
    } else {
        r *= n;
    }
    return {s, r};
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    return Rational(a, b);
}

// Univariate q with q^2 == p and q(0) > 0, if one exists.
std::optional<Polynomial> poly_sqrt(const Polynomial& p) {
    auto axes = p.used_axes();
    if (axes.size() != 1) return std::nullopt;
    std::size_t axis = axes.front();
    auto c = p.univariate_coefficients(axis);
    std::size_t deg = c.size() - 1;
    if (deg % 2 != 0) return std::nullopt;
    std::size_t n = deg / 2;
    auto lead = rational_sqrt(c[deg]);
    if (!lead) return std::nullopt;
    std::vector<Rational> q(n + 1, 0);
    q[n] = *lead;
    for (long idx = static_cast<long>(n) - 1; idx >= 0; --idx) {
        // the coefficient of x^(idx+n) in q^2 fixes q_idx
        long k = idx + static_cast<long>(n);
        Rational acc = c[k];
        for (long i = idx + 1; i <= static_cast<long>(n); ++i) {
            long j = k - i;
            if (j > idx && j <= static_cast<long>(n)) acc -= q[i] * q[j];
        }
        q[idx] = acc / (2 * q[n]);
    }
    Polynomial qp(p.dim());
    for (std::size_t i = 0; i <= n; ++i) {
        MultiIndex m(p.dim());
        m[axis] = static_cast<unsigned>(i);
        qp.add_term(m, q[i]);
    }
    if (!(qp * qp == p)) return std::nullopt;
    if (sgn(qp.constant_term()) < 0) qp = -qp;
    return qp;
}

void reduce(Group& g) {
    for (auto& [base, m] : g.dens) {
        while (m > 0) {
            auto q = exact_divide(g.num, base);
            if (!q) break;
            g.num = std::move(*q);
            --m;
        }
    }
    std::erase_if(g.dens, [](const auto& d) { return d.second == 0; });
}

// Multiply g by 1/q^m, keeping denominator bases primitive.
void add_den(Group& g, const Polynomial& q, unsigned m) {
    if (m == 0) return;
    auto [content, prim] = split_content(q);
    g.num = g.num * rational_pow(Rational(1 / content), m);
    if (prim.is_constant()) return;  // prim == 1
    auto it = std::lower_bound(g.dens.begin(), g.dens.end(), prim,
                               [](const auto& d, const Polynomial& b) { return compare(d.first, b) < 0; });
    if (it != g.dens.end() && it->first == prim) {
        it->second += m;
    } else {
        g.dens.insert(it, {prim, m});
    }
}

struct PolyLess {
    bool operator()(const Polynomial& a, const Polynomial& b) const { return compare(a, b) < 0; }
};

Group plain_group(const Polynomial& num) {
    return Group{num, {}, {}, Expr(num.dim())};
}

Group multiply_groups(const Group& a, const Group& b) {
    Group out = plain_group(a.num * b.num);
    out.exparg = a.exparg + b.exparg;
    // roots: symmetric difference, shared radicands move into the numerator
    std::size_t i = 0, j = 0;
    while (i < a.roots.size() || j < b.roots.size()) {
        int c = i == a.roots.size() ? 1 : (j == b.roots.size() ? -1 : compare(a.roots[i], b.roots[j]));
        if (c < 0) {
            out.roots.push_back(a.roots[i++]);
        } else if (c > 0) {
            out.roots.push_back(b.roots[j++]);
        } else {
            out.num = out.num * a.roots[i];
            ++i;
            ++j;
        }
    }
    out.dens = a.dens;
    for (const auto& [base, m] : b.dens) add_den(out, base, m);
    reduce(out);
    return out;
}

// a and b have the same key; returns their sum.
Group add_same_key(const Group& a, const Group& b) {
    Group out = plain_group(Polynomial(a.num.dim()));
    out.exparg = a.exparg;
    out.roots = a.roots;
    std::map<Polynomial, std::pair<unsigned, unsigned>, PolyLess> bases;
    for (const auto& [p, m] : a.dens) bases[p].first = m;
    for (const auto& [p, m] : b.dens) bases[p].second = m;
    Polynomial na = a.num, nb = b.num;
    for (const auto& [p, ms] : bases) {
        unsigned top = std::max(ms.first, ms.second);
        if (top > ms.first) na = na * p.pow(top - ms.first);
        if (top > ms.second) nb = nb * p.pow(top - ms.second);
        out.dens.emplace_back(p, top);
    }
    out.num = na + nb;
    reduce(out);
    return out;
}

}  // namespace

Expr::Expr(std::size_t dim) : dim_(dim) {}

const std::vector<Group>& Expr::groups() const noexcept { return groups_ ? *groups_ : empty_groups(); }

bool Expr::is_zero() const noexcept { return !groups_ || groups_->empty(); }

Expr Expr::from_groups(std::size_t dim, std::vector<Group> groups) {
    std::erase_if(groups, [](const Group& g) { return g.num.is_zero(); });
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return compare_key(a, b) < 0; });
    std::vector<Group> merged;
    for (auto& g : groups) {
        if (!merged.empty() && compare_key(merged.back(), g) == 0) {
            merged.back() = add_same_key(merged.back(), g);
        } else {
            merged.push_back(std::move(g));
        }
    }
    std::erase_if(merged, [](const Group& g) { return g.num.is_zero(); });
    Expr e(dim);
    if (!merged.empty()) e.groups_ = std::make_shared<const std::vector<Group>>(std::move(merged));
    return e;
}

Expr Expr::constant(std::size_t dim, const Rational& c) { return from_polynomial(Polynomial::constant(dim, c)); }

Expr Expr::variable(std::size_t dim, std::size_t axis) { return from_polynomial(Polynomial::variable(dim, axis)); }

Expr Expr::from_polynomial(const Polynomial& p) { return from_groups(p.dim(), {plain_group(p)}); }

namespace {

// sqrt(p) for p known to be positive, in canonical form.
Expr make_root(const Polynomial& p) {
    std::size_t dim = p.dim();
    if (p.is_zero()) return Expr(dim);
    auto [content, prim] = split_content(p);
    if (sgn(content) < 0) throw PositivityError("radicand " + p.to_string() + " is negative");
    // sqrt(a/b) = sqrt(a*b)/b
    Integer ab = content.get_num() * content.get_den();
    auto [s, r] = split_square(ab);
    Rational factor(s, content.get_den());
    factor.canonicalize();
    Group g = plain_group(Polynomial::constant(dim, factor));
    if (!prim.is_constant()) {
        if (auto q = poly_sqrt(prim)) {
            g.num = g.num * *q;
        } else {
            g.roots.push_back(prim * Rational(r));
            r = 1;
        }
    }
    if (r != 1) g.roots.push_back(Polynomial::constant(dim, Rational(r)));
    return Expr::from_groups(dim, {g});
}

}  // namespace

Expr Expr::sqrt_poly(const Polynomial& p) {
    if (p.is_zero()) throw PositivityError("sqrt of the zero polynomial");
    if (p.is_constant()) {
        if (sgn(p.constant_term()) <= 0) throw PositivityError("sqrt of a nonpositive constant");
        return make_root(p);
    }
    if (p.used_axes().size() > 1) throw PositivityError("cannot certify positivity of multivariate radicand " + p.to_string());
    if (!is_positive_on_reals(p)) throw PositivityError("radicand " + p.to_string() + " is not positive on the real line");
    return make_root(p);
}

Expr Expr::exp(const Expr& arg) {
    std::size_t dim = arg.dim();
    Group g = plain_group(Polynomial::constant(dim, 1));
    g.exparg = arg;
    return from_groups(dim, {g});
}

bool Expr::is_exp_free() const noexcept {
    return std::all_of(groups().begin(), groups().end(), [](const Group& g) { return g.exparg.is_zero(); });
}

bool Expr::is_polynomial() const noexcept {
    if (is_zero()) return true;
    const auto& gs = groups();
    return gs.size() == 1 && gs[0].dens.empty() && gs[0].roots.empty() && gs[0].exparg.is_zero();
}

std::optional<Polynomial> Expr::as_polynomial() const {
    if (!is_polynomial()) return std::nullopt;
    if (is_zero()) return Polynomial(dim_);
    return groups()[0].num;
}

std::size_t Expr::node_count() const noexcept {
    std::size_t n = 0;
    for (const auto& g : groups()) {
        n += 1 + g.num.terms().size() + g.roots.size() + g.dens.size();
        for (const auto& r : g.roots) n += r.terms().size();
        for (const auto& d : g.dens) n += d.first.terms().size();
        n += g.exparg.node_count();
    }
    return n;
}

Expr Expr::operator-() const { return *this * Rational(-1); }

Expr Expr::operator+(const Expr& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("adding expressions of different dimension");
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    std::vector<Group> all(groups().begin(), groups().end());
    all.insert(all.end(), o.groups().begin(), o.groups().end());
    return from_groups(dim_, std::move(all));
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("multiplying expressions of different dimension");
    std::vector<Group> all;
    all.reserve(groups().size() * o.groups().size());
    for (const auto& a : groups())
        for (const auto& b : o.groups()) all.push_back(multiply_groups(a, b));
    return from_groups(dim_, std::move(all));
}

Expr Expr::operator*(const Rational& c) const {
    if (sgn(c) == 0) return Expr(dim_);
    std::vector<Group> all(groups().begin(), groups().end());
    for (auto& g : all) g.num = g.num * c;
    return from_groups(dim_, std::move(all));
}

Expr Expr::pow(unsigned k) const {
    Expr result = constant(dim_, 1);
    Expr base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Expr Expr::differentiate(std::size_t axis) const {
    if (axis >= dim_) throw DimensionMismatch("differentiation axis out of range");
    std::vector<Group> out;
    Expr acc(dim_);
    for (const auto& g : groups()) {
        Group d = g;
        d.num = g.num.derivative(axis);
        out.push_back(std::move(d));
        for (const auto& r : g.roots) {
            Group h = plain_group(r.derivative(axis) * Rational(1, 2));
            if (h.num.is_zero()) continue;
            add_den(h, r, 1);
            out.push_back(multiply_groups(g, h));
        }
        for (const auto& [p, m] : g.dens) {
            Group h = plain_group(p.derivative(axis) * Rational(-static_cast<long>(m)));
            if (h.num.is_zero()) continue;
            add_den(h, p, 1);
            out.push_back(multiply_groups(g, h));
        }
        if (!g.exparg.is_zero()) {
            Expr da = g.exparg.differentiate(axis);
            for (const auto& h : da.groups()) out.push_back(multiply_groups(g, h));
        }
    }
    return from_groups(dim_, std::move(out));
}

Expr Expr::derivative(const MultiIndex& alpha) const {
    if (alpha.dim() != dim_) throw DimensionMismatch("derivative order has wrong dimension");
    Expr e = *this;
    for (std::size_t axis = 0; axis < dim_; ++axis)
        for (unsigned k = 0; k < alpha[axis]; ++k) e = e.differentiate(axis);
    return e;
}

namespace {

Expr substitute(const Polynomial& p, const std::vector<Expr>& inner, std::vector<std::vector<Expr>>& powers) {
    std::size_t dim = inner.front().dim();
    Expr sum(dim);
    for (const auto& [m, c] : p.terms()) {
        Expr term = Expr::constant(dim, c);
        for (std::size_t i = 0; i < m.dim(); ++i) {
            if (m[i] == 0) continue;
            auto& cache = powers[i];
            if (cache.empty()) cache.push_back(Expr::constant(dim, 1));
            while (cache.size() <= m[i]) cache.push_back(cache.back() * inner[i]);
            term = term * cache[m[i]];
        }
        sum = sum + term;
    }
    return sum;
}

}  // namespace

Expr Expr::compose(const std::vector<Expr>& inner) const {
    if (inner.size() != dim_) throw DimensionMismatch("composition needs one inner expression per variable");
    if (inner.empty()) return *this;
    std::size_t out_dim = inner.front().dim();
    for (const auto& e : inner)
        if (e.dim() != out_dim) throw DimensionMismatch("inner expressions differ in dimension");
    std::vector<std::vector<Expr>> powers(dim_);
    auto poly_of = [&](const Polynomial& p) {
        auto q = substitute(p, inner, powers).as_polynomial();
        if (!q) throw GrammarClosureError("composite radicand " + p.to_string() + " is not a polynomial");
        return *q;
    };
    Expr sum(out_dim);
    for (const auto& g : groups()) {
        Expr term = substitute(g.num, inner, powers);
        for (const auto& r : g.roots) term = term * make_root(poly_of(r));
        if (!g.dens.empty()) {
            Group h = plain_group(Polynomial::constant(out_dim, 1));
            for (const auto& [p, m] : g.dens) add_den(h, poly_of(p), m);
            term = term * from_groups(out_dim, {h});
        }
        if (!g.exparg.is_zero()) term = term * Expr::exp(g.exparg.compose(inner));
        sum = sum + term;
    }
    return sum;
}

namespace {

LogReal rational_logreal(const Rational& c) {
    if (sgn(c) == 0) return LogReal::zero();
    return LogReal(sgn(c), LevelIndex::from_double(log_abs(c)));
}

LogReal eval_poly(const Polynomial& p, const std::vector<LogReal>& x) {
    LogReal pos, neg;
    for (const auto& [m, c] : p.terms()) {
        LogReal t = rational_logreal(c);
        for (std::size_t i = 0; i < m.dim(); ++i)
            if (m[i] > 0) t = t * x[i].pow(static_cast<double>(m[i]));
        if (t.sign() > 0) {
            pos = pos + t;
        } else {
            neg = neg + t;
        }
    }
    return pos + neg;
}

}  // namespace

LogReal Expr::eval_logreal(const std::vector<LogReal>& x) const {
    if (x.size() != dim_) throw DimensionMismatch("evaluation point has wrong dimension");
    LogReal pos, neg;
    for (const auto& g : groups()) {
        LogReal v = eval_poly(g.num, x);
        if (v.sign() == 0) continue;
        for (const auto& r : g.roots) v = v * eval_poly(r, x).abs().pow(0.5);
        for (const auto& [p, m] : g.dens) v = v / eval_poly(p, x).pow(static_cast<double>(m));
        if (!g.exparg.is_zero()) v = v * g.exparg.eval_logreal(x).exp();
        if (v.sign() > 0) {
            pos = pos + v;
        } else {
            neg = neg + v;
        }
    }
    return pos + neg;
}

LogReal Expr::eval_logreal(const std::vector<double>& x) const {
    std::vector<LogReal> lx;
    lx.reserve(x.size());
    for (double v : x) lx.push_back(LogReal::from_double(v));
    return eval_logreal(lx);
}

double Expr::evaluate(const std::vector<double>& x) const { return eval_logreal(x).to_double(); }

namespace {

bool needs_parens(const Polynomial& p) { return p.terms().size() > 1; }

// Body of a group without its sign; `negative` tells the caller to print " - ".
std::string group_body(const Group& g, bool& negative) {
    std::vector<std::string> factors;
    negative = false;
    bool alone = g.roots.empty() && g.dens.empty() && g.exparg.is_zero();
    if (needs_parens(g.num) && alone) return g.num.to_string();
    if (needs_parens(g.num)) {
        factors.push_back("(" + g.num.to_string() + ")");
    } else {
        const auto& [m, c] = *g.num.terms().begin();
        negative = sgn(c) < 0;
        Rational ac = abs(c);
        Polynomial mono(g.num.dim());
        mono.add_term(m, 1);
        if (ac != 1) factors.push_back(to_string(ac));
        if (!m.is_zero()) factors.push_back(mono.to_string());
    }
    std::size_t i = 0, j = 0;
    while (i < g.roots.size() || j < g.dens.size()) {
        int c = i == g.roots.size() ? 1 : (j == g.dens.size() ? -1 : compare(g.roots[i], g.dens[j].first));
        long k = 0;
        const Polynomial* base = nullptr;
        if (c <= 0) {
            base = &g.roots[i++];
            k += 1;
        }
        if (c >= 0) {
            base = &g.dens[j].first;
            k -= 2 * static_cast<long>(g.dens[j++].second);
        }
        std::string s = "sqrt(" + base->to_string() + ")";
        if (k != 1) s += "^" + std::to_string(k);
        factors.push_back(s);
    }
    if (!g.exparg.is_zero()) factors.push_back("exp(" + g.exparg.to_string() + ")");
    if (factors.empty()) return "1";
    std::string out = factors.front();
    for (std::size_t f = 1; f < factors.size(); ++f) out += "*" + factors[f];
    return out;
}

}  // namespace

std::string Expr::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& g : groups()) {
        bool negative = false;
        std::string body = group_body(g, negative);
        if (first) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
        first = false;
    }
    return out;
}

int compare(const Expr& a, const Expr& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    const auto& ga = a.groups();
    const auto& gb = b.groups();
    if (ga.size() != gb.size()) return ga.size() < gb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ga.size(); ++i)
        if (int c = compare_full(ga[i], gb[i]); c != 0) return c;
    return 0;
}

bool Expr::operator==(const Expr& o) const { return compare(*this, o) == 0; }

std::optional<Polynomial> exact_divide(const Polynomial& n, const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
    if (n.dim() != p.dim()) throw DimensionMismatch("dividing polynomials of different dimension");
    const auto& [lm, lc] = *p.terms().rbegin();
    Polynomial rest = n;
    Polynomial quotient(n.dim());
    while (!rest.is_zero()) {
        const auto& [m, c] = *rest.terms().rbegin();
        if (!lm.fits_in(m)) return std::nullopt;
        Polynomial step(n.dim());
        step.add_term(m - lm, c / lc);
        quotient += step;
        rest -= step * p;
    }
    return quotient;
}

std::vector<Expr> identity_map(std::size_t dim) {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(Expr::variable(dim, i));
    return out;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, std::size_t dim) : s_(text), dim_(dim) {}

    Expr parse_all() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    std::size_t dim_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool accept_word(const char* w) {
        skip();
        std::size_t n = std::char_traits<char>::length(w);
        if (s_.compare(pos_, n, w) != 0) return false;
        std::size_t end = pos_ + n;
        if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
        pos_ = end;
        return true;
    }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Integer(s_.substr(start, pos_ - start));
    }

    Expr expr() {
        Expr e(dim_);
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        e = term();
        if (negate) e = -e;
        for (;;) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        while (accept('*')) e = e * factor();
        return e;
    }

    Expr factor() {
        std::optional<Polynomial> radicand;
        Expr base = atom(radicand);
        if (!accept('^')) return base;
        skip();
        std::size_t at = pos_;
        if (accept('-')) {
            if (!radicand) {
                pos_ = at;
                fail("negative exponent is only allowed on sqrt(...)");
            }
            Integer k = integer();
            if (!k.fits_uint_p()) fail("exponent too large");
            unsigned kk = static_cast<unsigned>(k.get_ui());
            if (kk == 0) return Expr::constant(dim_, 1);
            Group h = plain_group(Polynomial::constant(dim_, 1));
            add_den(h, *radicand, (kk + 1) / 2);
            Expr inv = Expr::from_groups(dim_, {h});
            return kk % 2 == 1 ? inv * base : inv;
        }
        Integer k = integer();
        if (!k.fits_uint_p() || k > 100000) fail("exponent too large");
        return base.pow(static_cast<unsigned>(k.get_ui()));
    }

    Expr atom(std::optional<Polynomial>& radicand) {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Integer den = 1;
            if (accept('/')) {
                den = integer();
                if (den == 0) fail("zero denominator");
            }
            Rational q(num, den);
            q.canonicalize();
            return Expr::constant(dim_, q);
        }
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (accept_word("exp")) {
            expect('(');
            Expr e = expr();
            expect(')');
            return Expr::exp(e);
        }
        if (accept_word("sqrt")) {
            expect('(');
            std::size_t at = pos_;
            Expr e = expr();
            auto p = e.as_polynomial();
            if (!p) throw SyntaxError("sqrt argument must be a polynomial", at);
            expect(')');
            radicand = *p;
            return Expr::sqrt_poly(*p);
        }
        if (c == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) fail("unknown identifier");
            if (start == pos_) return Expr::variable(dim_, 0);
            unsigned long idx = std::stoul(s_.substr(start, pos_ - start));
            if (idx < 1 || idx > dim_) {
                pos_ = start - 1;
                fail("variable index out of range 1.." + std::to_string(dim_));
            }
            return Expr::variable(dim_, idx - 1);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

Expr parse_expr(const std::string& text, std::size_t dim) {
    if (dim == 0) throw DimensionMismatch("dimension must be at least 1");
    return Parser(text, dim).parse_all();
}

std::vector<Expr> parse_expr_list(const std::string& text, std::size_t dim) {
    std::vector<Expr> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            std::string piece = text.substr(start, i - start);
            try {
                out.push_back(parse_expr(piece, dim));
            } catch (const SyntaxError& e) {
                throw SyntaxError(e.message(), start + e.position());
            }
            start = i + 1;
        } else if (text[i] == '(') {
            ++depth;
        } else if (text[i] == ')') {
            --depth;
        }
    }
    if (out.size() != dim)
        throw DimensionMismatch("expected " + std::to_string(dim) + " component(s), got " + std::to_string(out.size()));
    return out;
}

}  // namespace wcop
