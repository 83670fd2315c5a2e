#include "wcop/iterates.hpp"

#include "wcop/errors.hpp"

namespace wcop {

namespace {

// base^n, saturating at limit + 1
unsigned long long capped_pow(unsigned long long base, unsigned n, unsigned long long limit) {
    unsigned long long r = 1;
    for (unsigned i = 0; i < n; ++i) {
        r *= base;
        if (r > limit) return limit + 1;
    }
    return r;
}

}  // namespace

IterateCache::IterateCache(std::vector<Expr> phi, IterateCaps caps) : phi_(std::move(phi)), caps_(caps) {
    if (phi_.empty()) throw DimensionMismatch("symbol needs at least one component");
    for (const auto& e : phi_)
        if (e.dim() != phi_.size()) throw DimensionMismatch("symbol components must map R^d to R^d");
    if (phi_.size() == 1) {
        if (auto p = phi_[0].as_polynomial()) poly_degree_ = p->is_zero() ? 0 : *p->degree();
    }
    iterates_.push_back(identity_map(phi_.size()));
}

void IterateCache::check_caps(const std::vector<Expr>& e, unsigned n) const {
    std::size_t nodes = 0;
    for (const auto& c : e) nodes += c.node_count();
    if (nodes > caps_.node_cap)
        throw CapExceeded("iterate " + std::to_string(n) + " has " + std::to_string(nodes) + " nodes, cap is " +
                          std::to_string(caps_.node_cap));
    for (const auto& c : e)
        if (auto p = c.as_polynomial(); p && p->degree() && *p->degree() > caps_.degree_cap)
            throw CapExceeded("iterate " + std::to_string(n) + " exceeds the degree cap");
}

std::vector<Expr> IterateCache::iterate_locked(unsigned n) {
    if (poly_degree_ && capped_pow(*poly_degree_, n, caps_.degree_cap) > caps_.degree_cap)
        throw CapExceeded("degree " + std::to_string(*poly_degree_) + "^" + std::to_string(n) + " exceeds the degree cap " +
                          std::to_string(caps_.degree_cap));
    while (iterates_.size() <= n) {
        unsigned k = static_cast<unsigned>(iterates_.size());
        std::vector<Expr> next;
        for (const auto& c : phi_) next.push_back(c.compose(iterates_.back()));
        check_caps(next, k);
        if (poly_degree_) {
            auto p = next[0].as_polynomial();
            unsigned long long expected = capped_pow(*poly_degree_, k, caps_.degree_cap);
            unsigned actual = p && p->degree() ? *p->degree() : 0;
            if (!p || actual != expected) throw InternalInconsistency("deg phi_n != (deg phi)^n");
        }
        iterates_.push_back(std::move(next));
    }
    return iterates_[n];
}

std::vector<Expr> IterateCache::iterate_symbol(unsigned n) {
    std::lock_guard lock(mutex_);
    return iterate_locked(n);
}

Expr IterateCache::weight_product(const Expr& psi, unsigned n) {
    if (n == 0) throw InvalidRange("weight products start at n = 1");
    if (psi.dim() != dim()) throw DimensionMismatch("weight has wrong dimension");
    std::lock_guard lock(mutex_);
    auto psi_poly = psi.as_polynomial();
    std::optional<unsigned long long> expected;
    // a constant symbol may hit a zero of psi, so only check nonconstant ones
    if (poly_degree_ && *poly_degree_ > 0 && psi_poly && !psi_poly->is_zero()) {
        unsigned long long geometric = 0;
        for (unsigned j = 0; j < n; ++j) geometric += capped_pow(*poly_degree_, j, caps_.degree_cap);
        expected = geometric * *psi_poly->degree();
        if (*expected > caps_.degree_cap) throw CapExceeded("weight product exceeds the degree cap");
    }
    auto& list = weights_[psi];
    if (list.empty()) list.push_back(psi);
    while (list.size() < n) {
        unsigned k = static_cast<unsigned>(list.size());
        auto inner = iterate_locked(k);
        Expr next = list.back() * psi.compose(inner);
        check_caps({next}, k + 1);
        list.push_back(std::move(next));
    }
    Expr w = list[n - 1];
    if (expected) {
        auto p = w.as_polynomial();
        if (!p || !p->degree() || *p->degree() != *expected) throw InternalInconsistency("unexpected degree of the weight product");
    }
    return w;
}

std::vector<LogReal> IterateCache::iterate_point(const std::vector<LogReal>& x, unsigned n) const {
    std::vector<LogReal> cur = x;
    for (unsigned k = 0; k < n; ++k) {
        std::vector<LogReal> next;
        next.reserve(phi_.size());
        for (const auto& c : phi_) next.push_back(c.eval_logreal(cur));
        cur = std::move(next);
    }
    return cur;
}

LogReal IterateCache::weight_point(const Expr& psi, const std::vector<LogReal>& x, unsigned n) const {
    if (n == 0) throw InvalidRange("weight products start at n = 1");
    LogReal w = LogReal::one();
    std::vector<LogReal> cur = x;
    for (unsigned k = 0; k < n; ++k) {
        w = w * psi.eval_logreal(cur);
        if (k + 1 < n) cur = iterate_point(cur, 1);
    }
    return w;
}

std::vector<Expr> iterate_symbol(IterateCache& cache, unsigned n) { return cache.iterate_symbol(n); }

Expr weight_product(IterateCache& cache, const Expr& psi, unsigned n) { return cache.weight_product(psi, n); }

}  // namespace wcop
