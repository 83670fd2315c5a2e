#include "wcop/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wcop/errors.hpp"
#include "wcop/logreal.hpp"
#include "wcop/rootcheck.hpp"

namespace wcop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_univariate(const Polynomial& p, const char* what) {
    if (p.dim() != 1) throw DimensionMismatch(std::string(what) + " must be univariate");
}

unsigned degree_or_zero(const Polynomial& p) { return p.is_zero() ? 0 : *p.degree(); }

// log(1 + |v|) for a point given as LogReal components (Euclidean norm).
LevelIndex log1p_norm(const std::vector<LogReal>& v) {
    if (v.size() == 1) return v[0].log1p_abs();
    LogReal sq = LogReal::zero();
    for (const auto& c : v) sq = sq + c * c;
    return sq.pow(0.5).log1p_abs();
}

std::vector<std::vector<double>> ray_directions(std::size_t dim) {
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 0; i < dim; ++i)
        for (double s : {1.0, -1.0}) {
            std::vector<double> u(dim, 0.0);
            u[i] = s;
            dirs.push_back(u);
        }
    if (dim >= 2 && dim <= 4) {
        double scale = 1.0 / std::sqrt(static_cast<double>(dim));
        for (unsigned mask = 0; mask < (1u << dim); ++mask) {
            std::vector<double> u(dim);
            for (std::size_t i = 0; i < dim; ++i) u[i] = (mask >> i & 1u) ? -scale : scale;
            dirs.push_back(u);
        }
    }
    return dirs;
}

// Band-wise extreme of a log-valued function along the grid; `value` returns
// nullopt for points where the function is -inf (a zero of the numerator).
template <class F>
std::vector<BandSample> scan_bands(std::size_t dim, const GridConfig& cfg, bool maximize, double min_radius, F value) {
    auto dirs = ray_directions(dim);
    std::vector<BandSample> bands;
    std::optional<LevelIndex> running;
    int ppb = cfg.points_per_band;
    for (int j = cfg.j_min; j <= cfg.J; ++j) {
        double r = std::exp2(static_cast<double>(j) / ppb);
        if (r >= min_radius) {
            for (const auto& u : dirs) {
                std::vector<LogReal> x;
                x.reserve(dim);
                for (double c : u) x.push_back(LogReal::from_double(c * r));
                std::optional<LevelIndex> v = value(x, r);
                if (!v) {
                    if (!maximize) running = LevelIndex::from_double(-kInf);
                    continue;
                }
                if (!running || (maximize ? *v > *running : *v < *running)) running = *v;
            }
        }
        if (j % ppb == 0 || j == cfg.J) {
            LevelIndex lv = running ? *running : LevelIndex::from_double(maximize ? -kInf : kInf);
            bands.push_back({static_cast<int>(bands.size()), static_cast<double>(j) / ppb, lv.to_double(), lv});
        }
    }
    return bands;
}

}  // namespace

std::string to_string(GrowthTag tag) {
    switch (tag) {
        case GrowthTag::Finite: return "Finite";
        case GrowthTag::Infinite: return "Infinite";
        case GrowthTag::LikelyFinite: return "LikelyFinite";
        case GrowthTag::LikelyInfinite: return "LikelyInfinite";
        case GrowthTag::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(DecayTag tag) {
    switch (tag) {
        case DecayTag::Certified: return "Certified";
        case DecayTag::Refuted: return "Refuted";
        case DecayTag::LikelyCertified: return "LikelyCertified";
        case DecayTag::LikelyRefuted: return "LikelyRefuted";
        case DecayTag::Unknown: return "Unknown";
    }
    return "Unknown";
}

GrowthVerdict poly_sup_finite(const Polynomial& g, const Polynomial& phi, const Rational& p, const Rational& q) {
    require_univariate(g, "g");
    require_univariate(phi, "phi");
    if (sgn(p) < 0 || sgn(q) < 0) throw InvalidRange("p and q must be nonnegative");
    GrowthVerdict v;
    v.q_witness = exists_q(g, phi, p);
    if (g.is_zero()) {
        v.tag = GrowthTag::Finite;
        return v;
    }
    Rational e = p + Rational(degree_or_zero(g)) - q * Rational(degree_or_zero(phi));
    v.exponent = e;
    v.tag = sgn(e) <= 0 ? GrowthTag::Finite : GrowthTag::Infinite;
    return v;
}

std::optional<Rational> exists_q(const Polynomial& g, const Polynomial& phi, const Rational& p) {
    require_univariate(g, "g");
    require_univariate(phi, "phi");
    if (g.is_zero()) return Rational(0);
    Rational top = p + Rational(degree_or_zero(g));
    unsigned D = degree_or_zero(phi);
    if (D == 0) {
        if (sgn(top) <= 0) return Rational(0);
        return std::nullopt;
    }
    Rational q = top / Rational(D);
    if (sgn(q) < 0) q = 0;
    return q;
}

GrowthTag classify_bands(const std::vector<BandSample>& bands, const GridConfig& cfg) {
    int need = cfg.bands_checked + 1;
    if (static_cast<int>(bands.size()) < need) return GrowthTag::Unknown;
    bool all_neg_inf = std::all_of(bands.begin(), bands.end(), [](const BandSample& b) { return b.running_max == -kInf; });
    if (all_neg_inf) return GrowthTag::LikelyFinite;
    bool diverging = true, stable = true;
    for (int k = static_cast<int>(bands.size()) - cfg.bands_checked; k < static_cast<int>(bands.size()); ++k) {
        const LevelIndex& a = bands[k - 1].value;
        const LevelIndex& b = bands[k].value;
        double inc = (b - a).to_double();
        if (!(inc > cfg.diverge_increase)) diverging = false;
        if (!(std::fabs(inc) < cfg.stable_increase)) stable = false;
    }
    if (diverging) return GrowthTag::LikelyInfinite;
    if (stable) return GrowthTag::LikelyFinite;
    return GrowthTag::Unknown;
}

GrowthProfile::GrowthProfile(const Expr& numerator, const std::vector<Expr>& phi, const GridConfig& cfg) : cfg_(cfg) {
    std::size_t dim = numerator.dim();
    if (phi.size() != dim) throw DimensionMismatch("phi must have one component per variable");
    auto dirs = ray_directions(dim);
    int band = 0;
    for (int j = cfg.j_min; j <= cfg.J; ++j) {
        double r = std::exp2(static_cast<double>(j) / cfg.points_per_band);
        for (const auto& u : dirs) {
            std::vector<LogReal> x;
            x.reserve(dim);
            for (double c : u) x.push_back(LogReal::from_double(c * r));
            Point pt{band, log1p_norm(x), std::nullopt, LevelIndex()};
            LogReal g = numerator.eval_logreal(x);
            if (g.sign() != 0) {
                pt.log_g = g.log_magnitude();
                std::vector<LogReal> fx;
                fx.reserve(dim);
                for (const auto& c : phi) fx.push_back(c.eval_logreal(x));
                pt.log_phi = log1p_norm(fx);
            }
            points_.push_back(pt);
        }
        if (j % cfg.points_per_band == 0 || j == cfg.J) {
            band_radius_.push_back(static_cast<double>(j) / cfg.points_per_band);
            ++band;
        }
    }
}

GrowthVerdict GrowthProfile::verdict(const Rational& p, const Rational& q) const {
    double pd = p.get_d(), qd = q.get_d();
    std::optional<LevelIndex> running;
    std::vector<BandSample> bands;
    std::size_t i = 0;
    for (std::size_t b = 0; b < band_radius_.size(); ++b) {
        for (; i < points_.size() && points_[i].band == static_cast<int>(b); ++i) {
            const auto& pt = points_[i];
            if (!pt.log_g) continue;
            LevelIndex v = pt.log_x.scaled(pd) + *pt.log_g - pt.log_phi.scaled(qd);
            if (!running || v > *running) running = v;
        }
        LevelIndex lv = running ? *running : LevelIndex::from_double(-kInf);
        bands.push_back({static_cast<int>(b), band_radius_[b], lv.to_double(), lv});
    }
    GrowthVerdict v;
    v.tag = classify_bands(bands, cfg_);
    v.evidence = std::move(bands);
    return v;
}

std::optional<LevelIndex> GrowthProfile::sup(const Rational& p, const Rational& q) const {
    double pd = p.get_d(), qd = q.get_d();
    std::optional<LevelIndex> best;
    for (const auto& pt : points_) {
        if (!pt.log_g) continue;
        LevelIndex v = pt.log_x.scaled(pd) + *pt.log_g - pt.log_phi.scaled(qd);
        if (!best || v > *best) best = v;
    }
    return best;
}

std::vector<std::optional<LevelIndex>> GrowthProfile::values(const Rational& p, const Rational& q) const {
    double pd = p.get_d(), qd = q.get_d();
    std::vector<std::optional<LevelIndex>> out;
    out.reserve(points_.size());
    for (const auto& pt : points_) {
        if (!pt.log_g) {
            out.emplace_back();
            continue;
        }
        out.push_back(pt.log_x.scaled(pd) + *pt.log_g - pt.log_phi.scaled(qd));
    }
    return out;
}

GrowthVerdict numeric_sup(const Expr& numerator, const std::vector<Expr>& phi, const Rational& p, const Rational& q,
                          const GridConfig& cfg) {
    return GrowthProfile(numerator, phi, cfg).verdict(p, q);
}

SmallDecayCertificate check_small_decay(const Expr& psi, const std::vector<Expr>& phi, const GridConfig& cfg) {
    std::size_t dim = psi.dim();
    if (phi.size() != dim) throw DimensionMismatch("phi must have one component per variable");
    SmallDecayCertificate cert;
    auto poly = psi.as_polynomial();
    if (poly && poly->is_zero()) {
        cert.tag = DecayTag::Refuted;
        return cert;
    }
    if (poly && dim == 1) {
        Integer m = 1;
        if (!poly->is_constant()) {
            auto c = univariate_view(*poly);
            Rational b = std::max(upoly::cauchy_bound(c), upoly::cauchy_bound(upoly::derivative(c)));
            m = ceil_rational(b) + 1;
        }
        Rational mr(m);
        Rational at_pos = abs(poly->evaluate(std::vector<Rational>{mr}));
        Rational at_neg = abs(poly->evaluate(std::vector<Rational>{-mr}));
        cert.tag = DecayTag::Certified;
        cert.m = mr;
        cert.lower_bound = std::min(at_pos, at_neg).get_d();
        return cert;
    }
    // numeric: look for m whose weighted tail minimum does not keep falling
    GridConfig scan_cfg = cfg;
    bool all_falling = true;
    for (int m : {1, 2, 4, 8, 16}) {
        auto value = [&](const std::vector<LogReal>& x, double) -> std::optional<LevelIndex> {
            LogReal v = psi.eval_logreal(x);
            if (v.sign() == 0) return std::nullopt;
            std::vector<LogReal> fx;
            for (const auto& c : phi) fx.push_back(c.eval_logreal(x));
            return log1p_norm(x).scaled(m) + log1p_norm(fx).scaled(m) + v.log_magnitude();
        };
        auto bands = scan_bands(dim, scan_cfg, false, static_cast<double>(m), value);
        std::vector<BandSample> negated = bands;
        for (auto& b : negated) {
            b.running_max = -b.running_max;
            b.value = -b.value;
        }
        GrowthTag t = classify_bands(negated, scan_cfg);
        cert.evidence = bands;
        if (t == GrowthTag::LikelyFinite) {
            cert.tag = DecayTag::LikelyCertified;
            cert.m = Rational(m);
            double lo = kInf;
            for (const auto& b : bands) lo = std::min(lo, b.running_max);
            cert.lower_bound = std::exp(lo);
            return cert;
        }
        if (t != GrowthTag::LikelyInfinite) all_falling = false;
    }
    cert.tag = all_falling ? DecayTag::LikelyRefuted : DecayTag::Unknown;
    return cert;
}

}  // namespace wcop
