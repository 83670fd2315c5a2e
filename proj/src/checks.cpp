#include "wcop/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wcop/errors.hpp"
#include "wcop/faadibruno.hpp"

namespace wcop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Rational> q_candidates(const Rational& q_max) {
    std::vector<Rational> qs;
    for (Rational q = 0; q <= q_max; q += Rational(1, 2)) qs.push_back(q);
    return qs;
}

std::vector<MultiIndex> alphas_for(const ProbeOptions& opts, std::size_t dim, bool skip_zero) {
    if (opts.alpha) {
        if (opts.alpha->dim() != dim) throw DimensionMismatch("alpha has the wrong dimension");
        return {*opts.alpha};
    }
    std::vector<MultiIndex> out;
    for (auto& a : indices_up_to_order(dim, opts.alpha_max))
        if (!(skip_zero && a.is_zero())) out.push_back(a);
    return out;
}

// Smallest admissible q for one numerator, exact when everything is a
// univariate polynomial, else from the grid profile.
struct QSearch {
    std::optional<Rational> q;
    GrowthTag tag = GrowthTag::Unknown;
    std::vector<BandSample> bands;
};

QSearch search_q(const Expr& num, const std::vector<Expr>& phi, const Rational& p, const ProbeOptions& opts,
                 const GrowthProfile* profile) {
    QSearch out;
    if (num.dim() == 1) {
        auto g = num.as_polynomial();
        auto f = phi[0].as_polynomial();
        if (g && f) {
            out.q = exists_q(*g, *f, p);
            out.tag = out.q ? GrowthTag::Finite : GrowthTag::Infinite;
            return out;
        }
    }
    bool all_infinite = true;
    GrowthVerdict last;
    for (const auto& q : q_candidates(opts.q_max)) {
        last = profile->verdict(p, q);
        if (last.tag == GrowthTag::LikelyFinite) {
            out.q = q;
            out.tag = GrowthTag::LikelyFinite;
            out.bands = std::move(last.evidence);
            return out;
        }
        if (last.tag != GrowthTag::LikelyInfinite) all_infinite = false;
    }
    out.tag = all_infinite ? GrowthTag::LikelyInfinite : GrowthTag::Unknown;
    out.bands = std::move(last.evidence);
    return out;
}

bool row_ok(GrowthTag t) { return t == GrowthTag::Finite || t == GrowthTag::LikelyFinite; }

// Combine per-group tags: an exact failure dominates, then likely failure.
ProbeTag combine(const std::vector<ProbeTag>& tags) {
    auto has = [&](ProbeTag t) { return std::find(tags.begin(), tags.end(), t) != tags.end(); };
    if (has(ProbeTag::Fails)) return ProbeTag::Fails;
    if (has(ProbeTag::LikelyFails)) return ProbeTag::LikelyFails;
    if (has(ProbeTag::Unknown)) return ProbeTag::Unknown;
    if (has(ProbeTag::LikelyHolds)) return ProbeTag::LikelyHolds;
    return ProbeTag::Holds;
}

std::string describe(const MultiIndex& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.dim(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

// Tail behaviour of a sequence of log values: bounded, growing or unclear.
enum class Tail { Bounded, Growing, Unclear };

Tail tail_of(const std::vector<LevelIndex>& seq, const GridConfig& cfg) {
    std::size_t k = static_cast<std::size_t>(cfg.bands_checked);
    if (seq.size() < k + 1) return Tail::Unclear;
    bool bounded = true, growing = true;
    for (std::size_t i = seq.size() - k; i < seq.size(); ++i) {
        double inc = (seq[i] - seq[i - 1]).to_double();
        if (std::isnan(inc)) return Tail::Unclear;
        if (inc > cfg.stable_increase) bounded = false;
        if (!(inc > cfg.diverge_increase)) growing = false;
    }
    if (bounded) return Tail::Bounded;
    return growing ? Tail::Growing : Tail::Unclear;
}

// Second differences: an M^n bound keeps the increments from growing.
Tail tail_of_increments(const std::vector<LevelIndex>& seq, const GridConfig& cfg) {
    std::vector<LevelIndex> inc;
    for (std::size_t i = 1; i < seq.size(); ++i) inc.push_back(seq[i] - seq[i - 1]);
    return tail_of(inc, cfg);
}

// Bounded and visibly settling: increments stay small and either stop
// rising or are clearly negative.
bool settles(const std::vector<LevelIndex>& seq, const GridConfig& cfg) {
    if (tail_of(seq, cfg) != Tail::Bounded) return false;
    std::size_t k = static_cast<std::size_t>(cfg.bands_checked);
    std::vector<double> inc;
    for (std::size_t i = seq.size() - k; i < seq.size(); ++i) inc.push_back((seq[i] - seq[i - 1]).to_double());
    bool decaying = std::all_of(inc.begin(), inc.end(), [&](double d) { return d < -cfg.diverge_increase; });
    bool flattening = true;
    for (std::size_t i = 1; i < inc.size(); ++i)
        if (inc[i] > inc[i - 1] + 1e-9 && inc[i] < -1e-9) flattening = false;
    return decaying || flattening;
}

// Some single grid point whose value climbs by a steady amount per step, the
// signature of a fixed or periodic point; accelerating climbs are transients.
bool pointwise_growth(const std::vector<std::vector<std::optional<LevelIndex>>>& per_n, const GridConfig& cfg) {
    std::size_t k = static_cast<std::size_t>(cfg.bands_checked);
    if (per_n.size() < k + 1) return false;
    std::size_t npts = per_n.back().size();
    for (std::size_t i = 0; i < npts; ++i) {
        std::vector<double> inc;
        for (std::size_t n = per_n.size() - k; n < per_n.size(); ++n) {
            if (per_n[n].size() != npts || per_n[n - 1].size() != npts || !per_n[n][i] || !per_n[n - 1][i]) break;
            inc.push_back((*per_n[n][i] - *per_n[n - 1][i]).to_double());
        }
        if (inc.size() != k) continue;
        bool steady = true;
        for (std::size_t m = 0; m < k; ++m) {
            if (!(inc[m] > cfg.diverge_increase)) steady = false;
            if (m > 0 && std::fabs(inc[m] - inc[m - 1]) > cfg.stable_increase) steady = false;
        }
        if (steady) return true;
    }
    return false;
}

}  // namespace

std::string to_string(ProbeTag tag) {
    switch (tag) {
        case ProbeTag::Holds: return "Holds";
        case ProbeTag::Fails: return "Fails";
        case ProbeTag::LikelyHolds: return "LikelyHolds";
        case ProbeTag::LikelyFails: return "LikelyFails";
        case ProbeTag::Unknown: return "Unknown";
    }
    return "Unknown";
}

ProbeResult probe_acts(const Expr& psi, const std::vector<Expr>& phi, const ProbeOptions& opts) {
    std::size_t dim = psi.dim();
    if (phi.size() != dim) throw DimensionMismatch("phi must have one component per variable");
    ProbeResult res;
    res.criterion = "acts";
    std::vector<ProbeTag> tags;
    FdbOptions fdb;
    fdb.alpha_max = std::max(opts.alpha_max, fdb.alpha_max);
    for (const auto& alpha : alphas_for(opts, dim, false)) {
        std::vector<MultiIndex> lambdas;
        if (opts.lambda) {
            if (opts.lambda->dim() != dim) throw DimensionMismatch("lambda has the wrong dimension");
            lambdas = {*opts.lambda};
        } else {
            lambdas = indices_up_to_order(dim, alpha.order());
        }
        for (const auto& lambda : lambdas) {
            Expr F = assemble_F(psi, phi, alpha, lambda, fdb);
            if (F.is_zero()) continue;
            std::optional<GrowthProfile> profile;
            bool exact = dim == 1 && F.as_polynomial() && phi[0].as_polynomial();
            if (!exact) profile.emplace(F, phi, opts.grid);
            for (const auto& p : opts.ps) {
                QSearch s = search_q(F, phi, p, opts, profile ? &*profile : nullptr);
                ProbeRow row{alpha, lambda, p, std::nullopt, s.q, s.tag, std::nullopt, std::move(s.bands)};
                switch (row.tag) {
                    case GrowthTag::Finite: tags.push_back(ProbeTag::Holds); break;
                    case GrowthTag::Infinite: tags.push_back(ProbeTag::Fails); break;
                    case GrowthTag::LikelyFinite: tags.push_back(ProbeTag::LikelyHolds); break;
                    case GrowthTag::LikelyInfinite: tags.push_back(ProbeTag::LikelyFails); break;
                    case GrowthTag::Unknown: tags.push_back(ProbeTag::Unknown); break;
                }
                res.rows.push_back(std::move(row));
            }
        }
    }
    res.tag = combine(tags);
    // Finitely many alpha on the grid say nothing about all of them.
    if (res.tag == ProbeTag::Holds && !(dim == 1 && psi.as_polynomial() && phi[0].as_polynomial()))
        res.tag = ProbeTag::LikelyHolds;
    return res;
}

ProbeResult probe_iterates(const Expr& psi, const std::vector<Expr>& phi, IterateCondition cond, IterateMode mode,
                           const ProbeOptions& opts) {
    std::size_t dim = psi.dim();
    if (phi.size() != dim) throw DimensionMismatch("phi must have one component per variable");
    if (opts.n_min < 1 || opts.n_min > opts.n_max) throw InvalidRange("iterate range must satisfy 1 <= n_min <= n_max");
    ProbeResult res;
    bool weights = cond == IterateCondition::Weights;
    bool pb = mode == IterateMode::PowerBounded;
    res.criterion = std::string(pb ? "pb-" : "top-") + (weights ? "a" : "b");
    IterateCache cache(phi, opts.caps);

    // Numerators per n (several components for the symbol condition in d >= 2).
    struct Level {
        unsigned n;
        std::vector<Expr> phi_n;
        Expr weight;
    };
    std::vector<Level> levels;
    for (unsigned n = opts.n_min; n <= opts.n_max; ++n) {
        try {
            Level lv{n, cache.iterate_symbol(n), Expr(dim)};
            if (weights) lv.weight = cache.weight_product(psi, n);
            levels.push_back(std::move(lv));
        } catch (const CapExceeded& e) {
            res.notes.push_back("iterates truncated at n = " + std::to_string(n - 1) + ": " + e.what());
            break;
        }
    }

    std::vector<Rational> ps = weights ? opts.ps : std::vector<Rational>{0};
    std::vector<ProbeTag> tags, m_tags;
    for (const auto& alpha : alphas_for(opts, dim, !weights)) {
        struct Seq {
            std::vector<std::optional<Rational>> q;
            // sups[i][n]: grid supremum at the i-th q candidate
            std::vector<std::vector<LevelIndex>> sups;
            // pointwise log-ratio at q_max per n
            std::vector<std::vector<std::optional<LevelIndex>>> points;
            bool any_exact_fail = false, any_fail = false, any_unknown = false;
        };
        std::vector<Rational> qs = q_candidates(opts.q_max);
        std::vector<Seq> seqs(ps.size(), Seq{{}, std::vector<std::vector<LevelIndex>>(qs.size()), {}});
        for (const auto& lv : levels) {
            std::vector<Expr> nums;
            try {
                if (weights) {
                    nums.push_back(lv.weight.derivative(alpha));
                } else {
                    for (const auto& c : lv.phi_n) nums.push_back(c.derivative(alpha));
                }
            } catch (const CapExceeded& e) {
                res.notes.push_back(std::string("derivative skipped: ") + e.what());
                continue;
            }
            std::vector<GrowthProfile> profiles;
            for (const auto& num : nums) profiles.emplace_back(num, lv.phi_n, opts.grid);
            for (std::size_t k = 0; k < ps.size(); ++k) {
                ProbeRow row{alpha, std::nullopt, ps[k], lv.n, Rational(0), GrowthTag::Finite, std::nullopt, {}};
                auto& sq = seqs[k];
                std::vector<std::optional<LevelIndex>> best(qs.size());
                std::vector<std::optional<LevelIndex>> pts;
                for (std::size_t c = 0; c < nums.size(); ++c) {
                    if (nums[c].is_zero()) continue;
                    QSearch s = search_q(nums[c], lv.phi_n, ps[k], opts, &profiles[c]);
                    if (!row_ok(s.tag)) {
                        row.tag = s.tag;
                        row.q.reset();
                    } else if (row_ok(row.tag)) {
                        if (s.tag == GrowthTag::LikelyFinite) row.tag = s.tag;
                        row.q = std::max(*row.q, *s.q);
                    }
                    if (row.bands.empty()) row.bands = std::move(s.bands);
                    for (std::size_t i = 0; i < qs.size(); ++i) {
                        auto v = profiles[c].sup(ps[k], qs[i]);
                        if (v && (!best[i] || *v > *best[i])) best[i] = v;
                    }
                    auto vals = profiles[c].values(ps[k], opts.q_max);
                    if (pts.empty()) pts.resize(vals.size());
                    for (std::size_t i = 0; i < vals.size(); ++i)
                        if (vals[i] && (!pts[i] || *vals[i] > *pts[i])) pts[i] = vals[i];
                }
                for (std::size_t i = 0; i < qs.size(); ++i)
                    sq.sups[i].push_back(best[i] ? *best[i] : LevelIndex::from_double(-kInf));
                row.log_sup = sq.sups.back().back().to_double();
                sq.points.push_back(std::move(pts));
                sq.q.push_back(row.q);
                if (row.tag == GrowthTag::Infinite) sq.any_exact_fail = true;
                if (row.tag == GrowthTag::LikelyInfinite) sq.any_fail = true;
                if (row.tag == GrowthTag::Unknown) sq.any_unknown = true;
                res.rows.push_back(std::move(row));
            }
        }
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto& sq = seqs[k];
            ProbeTag t, mt;
            if (sq.any_exact_fail) {
                t = mt = ProbeTag::Fails;
            } else if (sq.any_fail) {
                t = mt = ProbeTag::LikelyFails;
            } else if (sq.any_unknown || sq.q.size() < 4) {
                t = mt = ProbeTag::Unknown;
            } else {
                // a q working for every n must not keep climbing with n
                std::size_t m = sq.q.size();
                bool rising = true;
                for (std::size_t i = m - 3; i < m; ++i)
                    if (*sq.q[i] - *sq.q[i - 1] < Rational(1, 2)) rising = false;
                Rational q_top = 0;
                for (const auto& q : sq.q) q_top = std::max(q_top, *q);
                if (rising) {
                    t = mt = ProbeTag::LikelyFails;
                } else if (q_top > opts.q_max) {
                    t = mt = ProbeTag::Unknown;
                } else {
                    bool settled = false, m_settled = false;
                    for (std::size_t i = 0; i < qs.size(); ++i) {
                        if (qs[i] < q_top) continue;
                        if (settles(sq.sups[i], opts.grid)) settled = true;
                        if (tail_of_increments(sq.sups[i], opts.grid) == Tail::Bounded) m_settled = true;
                    }
                    bool grows = tail_of(sq.sups.back(), opts.grid) == Tail::Growing ||
                                 pointwise_growth(sq.points, opts.grid);
                    bool m_grows = tail_of_increments(sq.sups.back(), opts.grid) == Tail::Growing;
                    if (pb) {
                        t = settled ? ProbeTag::LikelyHolds : grows ? ProbeTag::LikelyFails : ProbeTag::Unknown;
                        mt = t;
                    } else {
                        t = ProbeTag::LikelyHolds;
                        mt = m_settled ? ProbeTag::LikelyHolds : m_grows ? ProbeTag::LikelyFails : ProbeTag::Unknown;
                    }
                }
            }
            std::string note = "alpha=" + describe(alpha) + " p=" + to_string(ps[k]) + ": " + to_string(t);
            if (!pb) note += ", m: " + to_string(mt);
            res.notes.push_back(note);
            tags.push_back(t);
            m_tags.push_back(mt);
        }
    }
    res.tag = combine(tags);
    if (!pb) res.m_tag = combine(m_tags);
    return res;
}

ProbeResult probe_at_q(const Expr& psi, const std::vector<Expr>& phi, const std::string& criterion, const Rational& q,
                       const ProbeOptions& opts) {
    std::size_t dim = psi.dim();
    if (phi.size() != dim) throw DimensionMismatch("phi must have one component per variable");
    if (q < 0) throw InvalidRange("q must be nonnegative");
    bool acts = criterion == "acts";
    bool weights = criterion == "pb-a" || criterion == "top-a";
    if (!acts && !weights && criterion != "pb-b" && criterion != "top-b")
        throw InvalidRange("unknown criterion '" + criterion + "'");
    if (!acts && (opts.n_min < 1 || opts.n_min > opts.n_max))
        throw InvalidRange("iterate range must satisfy 1 <= n_min <= n_max");

    ProbeResult res;
    res.criterion = criterion;
    std::vector<ProbeTag> tags;
    auto add_row = [&](const Expr& num, const std::vector<Expr>& den, ProbeRow row) {
        GrowthVerdict v;
        auto g = num.as_polynomial();
        auto f = den[0].as_polynomial();
        if (dim == 1 && g && f) {
            v = poly_sup_finite(*g, *f, row.p, q);
        } else {
            v = numeric_sup(num, den, row.p, q, opts.grid);
        }
        row.q = q;
        row.tag = v.tag;
        row.bands = std::move(v.evidence);
        if (!row.bands.empty()) row.log_sup = row.bands.back().running_max;
        switch (row.tag) {
            case GrowthTag::Finite: tags.push_back(ProbeTag::Holds); break;
            case GrowthTag::Infinite: tags.push_back(ProbeTag::Fails); break;
            case GrowthTag::LikelyFinite: tags.push_back(ProbeTag::LikelyHolds); break;
            case GrowthTag::LikelyInfinite: tags.push_back(ProbeTag::LikelyFails); break;
            case GrowthTag::Unknown: tags.push_back(ProbeTag::Unknown); break;
        }
        res.rows.push_back(std::move(row));
    };

    if (acts) {
        FdbOptions fdb;
        fdb.alpha_max = std::max(opts.alpha_max, fdb.alpha_max);
        for (const auto& alpha : alphas_for(opts, dim, false)) {
            std::vector<MultiIndex> lambdas =
                opts.lambda ? std::vector<MultiIndex>{*opts.lambda} : indices_up_to_order(dim, alpha.order());
            for (const auto& lambda : lambdas) {
                if (lambda.dim() != dim) throw DimensionMismatch("lambda has the wrong dimension");
                Expr F = assemble_F(psi, phi, alpha, lambda, fdb);
                if (F.is_zero()) continue;
                for (const auto& p : opts.ps) add_row(F, phi, ProbeRow{alpha, lambda, p, std::nullopt, std::nullopt, GrowthTag::Unknown, std::nullopt, {}});
            }
        }
        res.tag = combine(tags);
        if (res.tag == ProbeTag::Holds && !(dim == 1 && psi.as_polynomial() && phi[0].as_polynomial()))
            res.tag = ProbeTag::LikelyHolds;
        return res;
    }

    IterateCache cache(phi, opts.caps);
    std::vector<Rational> ps = weights ? opts.ps : std::vector<Rational>{0};
    for (unsigned n = opts.n_min; n <= opts.n_max; ++n) {
        std::vector<Expr> phi_n;
        Expr weight(dim);
        try {
            phi_n = cache.iterate_symbol(n);
            if (weights) weight = cache.weight_product(psi, n);
        } catch (const CapExceeded& e) {
            res.notes.push_back("iterates truncated at n = " + std::to_string(n - 1) + ": " + e.what());
            break;
        }
        for (const auto& alpha : alphas_for(opts, dim, !weights)) {
            std::vector<Expr> nums;
            if (weights) {
                nums.push_back(weight.derivative(alpha));
            } else {
                for (const auto& c : phi_n) nums.push_back(c.derivative(alpha));
            }
            for (const auto& num : nums) {
                if (num.is_zero()) continue;
                for (const auto& p : ps) add_row(num, phi_n, ProbeRow{alpha, std::nullopt, p, n, std::nullopt, GrowthTag::Unknown, std::nullopt, {}});
            }
        }
    }
    res.tag = combine(tags);
    if (res.tag == ProbeTag::Holds) res.tag = ProbeTag::LikelyHolds;
    res.notes.push_back("fixed q = " + to_string(q) + ", n = " + std::to_string(opts.n_min) + ".." +
                        std::to_string(opts.n_max));
    return res;
}

ProbeResult probe_small_decay(const Expr& psi, const std::vector<Expr>& phi, const ProbeOptions& opts) {
    ProbeResult res;
    res.criterion = "smalldecay";
    SmallDecayCertificate c = check_small_decay(psi, phi, opts.grid);
    switch (c.tag) {
        case DecayTag::Certified: res.tag = ProbeTag::Holds; break;
        case DecayTag::Refuted: res.tag = ProbeTag::Fails; break;
        case DecayTag::LikelyCertified: res.tag = ProbeTag::LikelyHolds; break;
        case DecayTag::LikelyRefuted: res.tag = ProbeTag::LikelyFails; break;
        case DecayTag::Unknown: res.tag = ProbeTag::Unknown; break;
    }
    ProbeRow row{MultiIndex(psi.dim()), std::nullopt, c.m ? *c.m : Rational(0), std::nullopt, std::nullopt,
                 GrowthTag::Unknown, std::nullopt, std::move(c.evidence)};
    if (c.lower_bound > 0) row.log_sup = std::log(c.lower_bound);
    res.rows.push_back(std::move(row));
    if (c.m) res.notes.push_back("m = " + to_string(*c.m));
    return res;
}

ExpIneqResult check_exp_inequality(const ExpIneqOptions& opts) {
    if (opts.n_min < 1 || opts.n_min > opts.n_max) throw InvalidRange("iterate range must satisfy 1 <= n_min <= n_max");
    if (opts.step <= 0 || opts.x_min > opts.x_max) throw InvalidRange("bad x range");
    Expr x = Expr::variable(1, 0);
    Expr e = Expr::exp(x);
    IterateCache cache({e});
    std::vector<double> xs;
    for (Rational x = opts.x_min; x <= opts.x_max; x += opts.step) xs.push_back(x.get_d());

    ExpIneqResult res;
    for (unsigned alpha : opts.alphas) {
        std::vector<bool> ok;
        for (unsigned n = opts.n_min; n <= opts.n_max; ++n) {
            // lhs / rhs with rhs = exp(x + (2 + alpha) phi_{n-1}); the dominant
            // tower terms cancel inside the exponent before any evaluation
            Expr lhs = cache.weight_product(e, n).derivative(MultiIndex{alpha});
            Expr log_rhs = x + cache.iterate_symbol(n - 1)[0] * Rational(2 + alpha);
            Expr ratio = lhs * Expr::exp(-log_rhs);
            ExpIneqRow row{alpha, n, xs.size(), 0, -kInf};
            for (double xv : xs) {
                LogReal r = ratio.eval_logreal(std::vector<double>{xv});
                if (r.sign() <= 0) continue;
                double margin = r.log_magnitude().to_double();
                row.max_margin = std::max(row.max_margin, margin);
                if (margin > opts.tolerance) ++row.violations;
            }
            ok.push_back(row.violations == 0);
            res.rows.push_back(row);
        }
        std::optional<unsigned> n_alpha;
        for (std::size_t i = ok.size(); i-- > 0 && ok[i];) n_alpha = opts.n_min + static_cast<unsigned>(i);
        res.n_alpha[alpha] = n_alpha;
    }
    res.all_hold_from_n_alpha = std::all_of(res.n_alpha.begin(), res.n_alpha.end(),
                                            [](const auto& kv) { return kv.second.has_value(); });
    return res;
}

}  // namespace wcop
