#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "wcop/expr.hpp"
#include "wcop/logreal.hpp"

namespace wcop {

struct IterateCaps {
    unsigned degree_cap = 4096;
    std::size_t node_cap = 1'000'000;
};

/// Iterates phi_n = phi o ... o phi and weights psi^{n} = prod_{j<n} psi o phi_j.
/// Thread safe; entries are computed on demand and kept.
class IterateCache {
public:
    explicit IterateCache(std::vector<Expr> phi, IterateCaps caps = {});

    std::size_t dim() const noexcept { return phi_.size(); }
    const std::vector<Expr>& phi() const noexcept { return phi_; }
    const IterateCaps& caps() const noexcept { return caps_; }

    /// phi_n; throws CapExceeded or GrammarClosureError.
    std::vector<Expr> iterate_symbol(unsigned n);
    /// psi^{n}, n >= 1.
    Expr weight_product(const Expr& psi, unsigned n);

    /// phi_n(x) by repeated numeric evaluation.
    std::vector<LogReal> iterate_point(const std::vector<LogReal>& x, unsigned n) const;
    /// psi^{n}(x) by repeated numeric evaluation.
    LogReal weight_point(const Expr& psi, const std::vector<LogReal>& x, unsigned n) const;

private:
    struct ExprLess {
        bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
    };

    std::vector<Expr> phi_;
    IterateCaps caps_;
    std::optional<unsigned> poly_degree_;  // set when d = 1 and phi is a polynomial
    mutable std::mutex mutex_;
    std::vector<std::vector<Expr>> iterates_;
    std::map<Expr, std::vector<Expr>, ExprLess> weights_;

    std::vector<Expr> iterate_locked(unsigned n);
    void check_caps(const std::vector<Expr>& e, unsigned n) const;
};

std::vector<Expr> iterate_symbol(IterateCache& cache, unsigned n);
Expr weight_product(IterateCache& cache, const Expr& psi, unsigned n);

}  // namespace wcop
