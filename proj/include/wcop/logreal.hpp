#pragma once

#include <compare>
#include <string>

namespace wcop {

/// Signed level-index real: sign * exp^level(t), t >= 0.
///
/// Canonical form keeps t <= kCeiling; level >= 1 additionally has
/// t > log(kCeiling). Holds numbers like exp(exp(exp(exp(40)))) whose
/// logarithm already overflows a double. Precision is relative in t, so two
/// values at level >= 2 that differ by a factor of a few compare equal.
class LevelIndex {
public:
    static constexpr double kCeiling = 1e300;

    LevelIndex() = default;
    static LevelIndex from_double(double v);
    static LevelIndex make(int sign, int level, double t);

    int sign() const noexcept { return sign_; }
    int level() const noexcept { return level_; }
    double t() const noexcept { return t_; }
    bool is_zero() const noexcept { return sign_ == 0; }

    /// Value as a double, saturating to +-inf for level >= 1.
    double to_double() const noexcept;

    LevelIndex operator-() const noexcept;
    LevelIndex operator+(const LevelIndex& o) const;
    LevelIndex operator-(const LevelIndex& o) const;
    LevelIndex scaled(double c) const;
    /// exp(this), always positive.
    LevelIndex exp() const;
    /// log(1 + exp(this)).
    LevelIndex softplus() const;

    std::partial_ordering operator<=>(const LevelIndex& o) const noexcept;
    bool operator==(const LevelIndex& o) const noexcept = default;

    std::string to_string() const;

private:
    int sign_ = 0;
    int level_ = 0;
    double t_ = 0.0;

    static LevelIndex add_magnitudes(const LevelIndex& big, const LevelIndex& small);
    static LevelIndex sub_magnitudes(const LevelIndex& big, const LevelIndex& small);
    static int compare_magnitudes(const LevelIndex& a, const LevelIndex& b) noexcept;
};

/// Real number stored as sign and log-magnitude: value = sign * exp(log_magnitude).
/// Products add log-magnitudes; sums use a log-sum-exp. Exp towers never overflow.
class LogReal {
public:
    LogReal() = default;
    LogReal(int sign, LevelIndex log_magnitude);
    static LogReal from_double(double v);
    static LogReal zero() { return {}; }
    static LogReal one() { return LogReal(1, LevelIndex()); }

    int sign() const noexcept { return sign_; }
    /// Log-magnitude; meaningless when sign() == 0.
    const LevelIndex& log_magnitude() const noexcept { return log_mag_; }
    /// log|value| as a double: -inf for zero, +-inf when out of double range.
    double log_abs() const noexcept;
    double to_double() const noexcept;

    LogReal operator-() const noexcept { return LogReal(-sign_, log_mag_); }
    LogReal operator*(const LogReal& o) const;
    LogReal operator/(const LogReal& o) const;
    LogReal operator+(const LogReal& o) const;
    LogReal operator-(const LogReal& o) const { return *this + (-o); }
    LogReal abs() const { return sign_ == 0 ? *this : LogReal(1, log_mag_); }
    /// |v|^e for real e; requires v > 0 unless e is a nonnegative integer.
    LogReal pow(double e) const;
    LogReal exp() const;
    /// log(1 + |v|) as a level-index real.
    LevelIndex log1p_abs() const;

private:
    int sign_ = 0;
    LevelIndex log_mag_;
};

}  // namespace wcop
