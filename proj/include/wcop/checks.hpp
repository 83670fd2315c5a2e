#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wcop/expr.hpp"
#include "wcop/growth.hpp"
#include "wcop/iterates.hpp"
#include "wcop/multi_index.hpp"
#include "wcop/rational.hpp"

namespace wcop {

/// Targeted probes of the supremum conditions behind the operator properties.
/// Holds/Fails come only from exact polynomial reasoning; everything resting
/// on the grid is tagged Likely*.
enum class ProbeTag { Holds, Fails, LikelyHolds, LikelyFails, Unknown };

std::string to_string(ProbeTag tag);

struct ProbeOptions {
    unsigned alpha_max = 4;
    std::vector<Rational> ps = {1, 2, 4};
    /// Candidate q values are k/2 for k = 0..2*q_max.
    Rational q_max = 16;
    unsigned n_min = 1;
    unsigned n_max = 8;
    GridConfig grid;
    IterateCaps caps;
    /// Restrict to one derivative order / one lambda when set.
    std::optional<MultiIndex> alpha;
    std::optional<MultiIndex> lambda;
};

struct ProbeRow {
    MultiIndex alpha;
    std::optional<MultiIndex> lambda;
    Rational p = 0;
    std::optional<unsigned> n;
    /// Smallest admissible q found, if any.
    std::optional<Rational> q;
    GrowthTag tag = GrowthTag::Unknown;
    /// log of the grid supremum at q = q_max (iterate probes).
    std::optional<double> log_sup;
    std::vector<BandSample> bands;
};

struct ProbeResult {
    std::string criterion;
    ProbeTag tag = ProbeTag::Unknown;
    /// m-topologizability flavour of the top-* probes.
    std::optional<ProbeTag> m_tag;
    std::vector<ProbeRow> rows;
    std::vector<std::string> notes;
};

/// sup_x (1+|x|)^p / (1+|phi|)^q |F_{alpha,lambda}| < inf for every alpha, lambda, p and some q.
ProbeResult probe_acts(const Expr& psi, const std::vector<Expr>& phi, const ProbeOptions& opts = {});

/// Uniform-in-n version over the iterates: condition (a) uses the weights
/// psi^{n}, condition (b) the derivatives of phi_n with p = 0.
/// `uniform` selects sup over n (power boundedness) or per-n finiteness with
/// one q (topologizability, with the M^n test reported in m_tag).
enum class IterateCondition { Weights, Symbol };
enum class IterateMode { PowerBounded, Topologizable };

ProbeResult probe_iterates(const Expr& psi, const std::vector<Expr>& phi, IterateCondition cond, IterateMode mode,
                           const ProbeOptions& opts = {});

/// The same suprema at one fixed q, one row per (alpha, lambda or n, p).
/// criterion is one of acts, pb-a, pb-b, top-a, top-b. For the iterate
/// criteria the summary is at best LikelyHolds since only n_min..n_max are seen.
ProbeResult probe_at_q(const Expr& psi, const std::vector<Expr>& phi, const std::string& criterion, const Rational& q,
                       const ProbeOptions& opts = {});

ProbeResult probe_small_decay(const Expr& psi, const std::vector<Expr>& phi, const ProbeOptions& opts = {});

/// Log-space test of (phi^{n})^{(alpha)}(x) <= phi_1(x) phi_n(x)^{2+alpha} for
/// phi = psi = exp on a uniform grid.
struct ExpIneqRow {
    unsigned alpha = 0;
    unsigned n = 0;
    std::size_t points = 0;
    std::size_t violations = 0;
    /// Largest log(lhs) - log(rhs) seen.
    double max_margin = 0.0;
};

struct ExpIneqOptions {
    std::vector<unsigned> alphas = {0, 1, 2};
    unsigned n_min = 1;
    unsigned n_max = 8;
    Rational x_min = -20;
    Rational x_max = 5;
    Rational step = Rational(1, 4);
    double tolerance = 1e-9;
};

struct ExpIneqResult {
    std::vector<ExpIneqRow> rows;
    /// Smallest n from which every n up to n_max passes, per alpha.
    std::map<unsigned, std::optional<unsigned>> n_alpha;
    bool all_hold_from_n_alpha = false;
};

ExpIneqResult check_exp_inequality(const ExpIneqOptions& opts = {});

}  // namespace wcop
