#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcop/expr.hpp"
#include "wcop/logreal.hpp"
#include "wcop/polynomial.hpp"
#include "wcop/rational.hpp"

namespace wcop {

enum class GrowthTag { Finite, Infinite, LikelyFinite, LikelyInfinite, Unknown };

std::string to_string(GrowthTag tag);

/// Running maximum of the log-ratio over all grid points with |x| up to 2^log2_radius.
struct BandSample {
    int band;
    double log2_radius;
    /// Saturates to +-inf outside double range.
    double running_max;
    /// Exact band value; increases are computed from this.
    LevelIndex value;
};

struct GrowthVerdict {
    GrowthTag tag = GrowthTag::Unknown;
    /// Smallest admissible q (exact path) when one exists.
    std::optional<Rational> q_witness;
    /// Growth exponent p + deg g - q deg(phi) on the exact path.
    std::optional<Rational> exponent;
    std::vector<BandSample> evidence;
};

/// Geometric grid x = +-2^(j / points_per_band), j = j_min..J.
struct GridConfig {
    int j_min = -64;
    int J = 512;
    int points_per_band = 8;
    int bands_checked = 3;
    double diverge_increase = 0.5;
    double stable_increase = 0.05;
};

/// Log components of (1+|x|)^p |g(x)| / (1+|phi(x)|)^q sampled once on the
/// grid, so that many (p, q) pairs can be tested cheaply.
class GrowthProfile {
public:
    GrowthProfile(const Expr& numerator, const std::vector<Expr>& phi, const GridConfig& cfg = {});

    /// Band maxima of the log-ratio and their classification.
    GrowthVerdict verdict(const Rational& p, const Rational& q) const;
    /// Largest grid value of the log-ratio; nullopt when g vanishes on the grid.
    std::optional<LevelIndex> sup(const Rational& p, const Rational& q) const;
    /// Log-ratio at every grid point, in grid order; nullopt where g vanishes.
    std::vector<std::optional<LevelIndex>> values(const Rational& p, const Rational& q) const;

private:
    struct Point {
        int band;
        LevelIndex log_x;
        std::optional<LevelIndex> log_g;
        LevelIndex log_phi;
    };
    GridConfig cfg_;
    std::vector<Point> points_;
    std::vector<double> band_radius_;
};

/// Exact decision of sup (1+|x|)^p |g(x)| / (1+|phi(x)|)^q < inf for univariate polynomials.
GrowthVerdict poly_sup_finite(const Polynomial& g, const Polynomial& phi, const Rational& p, const Rational& q);

/// Smallest q making the supremum finite; nullopt when none exists.
std::optional<Rational> exists_q(const Polynomial& g, const Polynomial& phi, const Rational& p);

/// Grid estimate of the same supremum for arbitrary expressions. In d >= 2
/// the grid runs along coordinate and diagonal rays. Never returns Finite or Infinite.
GrowthVerdict numeric_sup(const Expr& numerator, const std::vector<Expr>& phi, const Rational& p, const Rational& q,
                          const GridConfig& cfg = {});

/// Band classification shared by the numeric estimators: the last
/// cfg.bands_checked increases of the band maxima decide the tag.
GrowthTag classify_bands(const std::vector<BandSample>& bands, const GridConfig& cfg);

enum class DecayTag { Certified, Refuted, LikelyCertified, LikelyRefuted, Unknown };

std::string to_string(DecayTag tag);

struct SmallDecayCertificate {
    DecayTag tag = DecayTag::Unknown;
    std::optional<Rational> m;
    /// Lower bound of (1+|x|)^m (1+|phi(x)|)^m |psi(x)| over |x| >= m (exact path),
    /// or the smallest grid value (numeric path).
    double lower_bound = 0.0;
    std::vector<BandSample> evidence;
};

/// Whether inf_{|x| >= m} (1+|x|)^m (1+|phi(x)|)^m |psi(x)| > 0 for some m.
SmallDecayCertificate check_small_decay(const Expr& psi, const std::vector<Expr>& phi, const GridConfig& cfg = {});

}  // namespace wcop
