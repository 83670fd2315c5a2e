#include "wcop/faadibruno.hpp"

#include <map>
#include <mutex>

#include "wcop/errors.hpp"

namespace wcop {

bool mi_prec(const MultiIndex& a, const MultiIndex& b) { return precedes(a, b); }

namespace {

void grow(const std::vector<MultiIndex>& cands, std::size_t start, const MultiIndex& rem_beta,
          const MultiIndex& rem_lambda, std::vector<MultiIndex>& ks, std::vector<MultiIndex>& ells,
          std::vector<IndexTuple>& out, unsigned total) {
    if (rem_lambda.is_zero()) {
        if (!rem_beta.is_zero()) return;
        IndexTuple t;
        std::size_t pad = total - ks.size();
        t.ks.assign(pad, MultiIndex(rem_beta.dim()));
        t.ells.assign(pad, MultiIndex(rem_beta.dim()));
        t.ks.insert(t.ks.end(), ks.begin(), ks.end());
        t.ells.insert(t.ells.end(), ells.begin(), ells.end());
        out.push_back(std::move(t));
        return;
    }
    if (rem_beta.is_zero()) return;
    auto k_choices = indices_below(rem_lambda);
    for (std::size_t i = start; i < cands.size(); ++i) {
        const MultiIndex& ell = cands[i];
        if (!ell.fits_in(rem_beta)) continue;
        for (const auto& k : k_choices) {
            if (k.is_zero()) continue;
            MultiIndex used = ell.scaled(k.order());
            if (!used.fits_in(rem_beta)) continue;
            ks.push_back(k);
            ells.push_back(ell);
            grow(cands, i + 1, rem_beta - used, rem_lambda - k, ks, ells, out, total);
            ks.pop_back();
            ells.pop_back();
        }
    }
}

std::vector<IndexTuple> compute_p(const MultiIndex& beta, const MultiIndex& lambda) {
    std::vector<IndexTuple> out;
    if (beta.is_zero() && lambda.is_zero()) {
        out.emplace_back();
        return out;
    }
    std::vector<MultiIndex> cands;
    for (const auto& ell : indices_below(beta))
        if (!ell.is_zero()) cands.push_back(ell);
    std::vector<MultiIndex> ks, ells;
    grow(cands, 0, beta, lambda, ks, ells, out, beta.order());
    if (!out.empty() && lambda.order() > beta.order())
        throw InternalInconsistency("index set nonempty with |lambda| > |beta|");
    return out;
}

std::mutex p_mutex;
std::map<std::pair<MultiIndex, MultiIndex>, std::vector<IndexTuple>> p_memo;

std::mutex bell_mutex;
std::map<std::pair<unsigned, unsigned>, Polynomial> bell_memo;

// integer solutions of sum i_r = lambda, sum r*i_r = beta, r = 1..n
void bell_terms(unsigned r, unsigned n, unsigned rem_count, unsigned rem_weight, MultiIndex& exps, unsigned beta,
                Polynomial& out) {
    if (r > n) {
        if (rem_count != 0 || rem_weight != 0) return;
        Rational c(factorial(beta));
        for (unsigned s = 1; s <= n; ++s) {
            unsigned i = exps[s - 1];
            c /= Rational(factorial(i));
            c /= Rational(rational_pow(Rational(factorial(s)), i));
        }
        out.add_term(exps, c);
        return;
    }
    for (unsigned i = 0; i <= rem_count && i * r <= rem_weight; ++i) {
        exps[r - 1] = i;
        bell_terms(r + 1, n, rem_count - i, rem_weight - i * r, exps, beta, out);
    }
    exps[r - 1] = 0;
}

class DerivativeCache {
public:
    explicit DerivativeCache(const std::vector<Expr>& phi) : phi_(phi) {}

    const Expr& get(std::size_t component, const MultiIndex& ell) {
        auto key = std::make_pair(component, ell);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, phi_[component].derivative(ell)).first->second;
    }

private:
    const std::vector<Expr>& phi_;
    std::map<std::pair<std::size_t, MultiIndex>, Expr> cache_;
};

// sum over p(beta, lambda) of the weighted derivative products
Expr chain_sum(DerivativeCache& dphi, std::size_t dim, const MultiIndex& beta, const MultiIndex& lambda) {
    Expr sum(dim);
    for (const auto& t : enumerate_p(beta, lambda)) {
        Expr term = Expr::constant(dim, tuple_coefficient(beta, t));
        for (std::size_t j = 0; j < t.ks.size(); ++j) {
            const auto& k = t.ks[j];
            if (k.is_zero()) continue;
            for (std::size_t i = 0; i < k.dim(); ++i)
                if (k[i] > 0) term = term * dphi.get(i, t.ells[j]).pow(k[i]);
        }
        sum = sum + term;
    }
    return sum;
}

void check_dims(const Expr& psi, const std::vector<Expr>& phi, const MultiIndex& a, const MultiIndex& b) {
    std::size_t d = psi.dim();
    if (phi.size() != d || a.dim() != d || b.dim() != d) throw DimensionMismatch("dimensions of psi, phi and indices disagree");
    for (const auto& e : phi)
        if (e.dim() != d) throw DimensionMismatch("phi components have wrong dimension");
}

}  // namespace

const std::vector<IndexTuple>& enumerate_p(const MultiIndex& beta, const MultiIndex& lambda) {
    if (beta.dim() != lambda.dim()) throw DimensionMismatch("beta and lambda differ in dimension");
    auto key = std::make_pair(beta, lambda);
    {
        std::lock_guard lock(p_mutex);
        auto it = p_memo.find(key);
        if (it != p_memo.end()) return it->second;
    }
    auto computed = compute_p(beta, lambda);
    std::lock_guard lock(p_mutex);
    return p_memo.emplace(key, std::move(computed)).first->second;
}

Rational tuple_coefficient(const MultiIndex& beta, const IndexTuple& t) {
    Rational c(beta.factorial());
    for (std::size_t j = 0; j < t.ks.size(); ++j) {
        c /= Rational(t.ks[j].factorial());
        c /= Rational(rational_pow(Rational(t.ells[j].factorial()), t.ks[j].order()));
    }
    return c;
}

const Polynomial& bell(unsigned beta, unsigned lambda) {
    if (lambda > beta) throw InvalidRange("Bell polynomial needs lambda <= beta");
    auto key = std::make_pair(beta, lambda);
    {
        std::lock_guard lock(bell_mutex);
        auto it = bell_memo.find(key);
        if (it != bell_memo.end()) return it->second;
    }
    unsigned n = beta - lambda + 1;
    Polynomial p(n);
    if (beta == 0) {
        p = Polynomial::constant(n, 1);
    } else if (lambda > 0) {
        MultiIndex exps(n);
        bell_terms(1, n, lambda, beta, exps, beta, p);
    }
    std::lock_guard lock(bell_mutex);
    return bell_memo.emplace(key, std::move(p)).first->second;
}

Expr assemble_F(const Expr& psi, const std::vector<Expr>& phi, const MultiIndex& alpha, const MultiIndex& lambda,
                const FdbOptions& opts) {
    check_dims(psi, phi, alpha, lambda);
    if (alpha.order() > opts.alpha_max)
        throw CapExceeded("|alpha| = " + std::to_string(alpha.order()) + " exceeds alpha_max = " + std::to_string(opts.alpha_max));
    std::size_t d = psi.dim();
    Expr sum(d);
    if (lambda.order() > alpha.order()) return sum;
    bool use_bell = opts.path == FdbOptions::Path::Bell || (opts.path == FdbOptions::Path::Auto && d == 1);
    if (use_bell) {
        if (d != 1) throw DimensionMismatch("the Bell-polynomial path is one-dimensional");
        unsigned a = alpha[0], l = lambda[0];
        std::vector<Expr> dphi{phi[0]};
        for (unsigned b = l; b <= a; ++b) {
            const Polynomial& B = bell(b, l);
            if (B.is_zero()) continue;
            while (dphi.size() < b - l + 2) dphi.push_back(dphi.back().differentiate(0));
            std::vector<Expr> args(dphi.begin() + 1, dphi.begin() + (b - l + 2));
            Expr term = psi.derivative(MultiIndex{a - b}) * Expr::from_polynomial(B).compose(args);
            sum = sum + term * Rational(binomial(a, b));
        }
        return sum;
    }
    DerivativeCache dphi(phi);
    for (const auto& beta : indices_below(alpha)) {
        if (beta.order() < lambda.order()) continue;
        Expr inner = chain_sum(dphi, d, beta, lambda);
        if (inner.is_zero()) continue;
        sum = sum + psi.derivative(alpha - beta) * inner * Rational(multi_binomial(alpha, beta));
    }
    return sum;
}

Expr fdb_derivative(const Expr& f, const std::vector<Expr>& phi, const MultiIndex& beta, const FdbOptions& opts) {
    if (phi.size() != f.dim()) throw DimensionMismatch("phi must have one component per variable of f");
    std::size_t d = phi.empty() ? 1 : phi.front().dim();
    if (beta.dim() != d) throw DimensionMismatch("beta has wrong dimension");
    if (beta.order() > opts.alpha_max)
        throw CapExceeded("|beta| = " + std::to_string(beta.order()) + " exceeds alpha_max = " + std::to_string(opts.alpha_max));
    if (f.dim() != d) throw DimensionMismatch("f and phi dimensions differ");
    DerivativeCache dphi(phi);
    Expr sum(d);
    for (const auto& lambda : indices_up_to_order(d, beta.order())) {
        Expr inner = chain_sum(dphi, d, beta, lambda);
        if (inner.is_zero()) continue;
        sum = sum + f.derivative(lambda).compose(phi) * inner;
    }
    return sum;
}

}  // namespace wcop
