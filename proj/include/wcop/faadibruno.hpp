#pragma once

#include <vector>

#include "wcop/expr.hpp"
#include "wcop/multi_index.hpp"
#include "wcop/polynomial.hpp"

namespace wcop {

/// One element (k_1..k_n; l_1..l_n) of the chain-rule index set, n = |beta|.
/// Leading entries with k_j = l_j = 0 are padding; the remaining l_j are
/// nonzero and strictly increasing in the graded order.
struct IndexTuple {
    std::vector<MultiIndex> ks;
    std::vector<MultiIndex> ells;

    bool operator==(const IndexTuple&) const = default;
};

/// Strict graded order: by |.|, then lexicographically.
bool mi_prec(const MultiIndex& a, const MultiIndex& b);

/// All index tuples for (beta, lambda). The pair (0, 0) yields a single empty
/// tuple; (beta, 0) with beta != 0 yields none. Results are memoised.
const std::vector<IndexTuple>& enumerate_p(const MultiIndex& beta, const MultiIndex& lambda);

/// Weight beta! / prod_j (k_j! (l_j!)^{|k_j|}) of a tuple.
Rational tuple_coefficient(const MultiIndex& beta, const IndexTuple& t);

/// Partial Bell polynomial B_{beta,lambda} in the variables x_1..x_{beta-lambda+1}.
/// Throws InvalidRange unless lambda <= beta.
const Polynomial& bell(unsigned beta, unsigned lambda);

struct FdbOptions {
    enum class Path { Auto, Multivariate, Bell };
    Path path = Path::Auto;
    unsigned alpha_max = 6;
};

/// F_{alpha,lambda}: coefficient of f^(lambda)(phi(x)) in the alpha-th
/// derivative of psi * (f o phi).
Expr assemble_F(const Expr& psi, const std::vector<Expr>& phi, const MultiIndex& alpha, const MultiIndex& lambda,
                const FdbOptions& opts = {});

/// beta-th derivative of f o phi through the chain-rule sum.
Expr fdb_derivative(const Expr& f, const std::vector<Expr>& phi, const MultiIndex& beta, const FdbOptions& opts = {});

}  // namespace wcop
