#include "wcop/logreal.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wcop {

namespace {

const double kLogCeiling = std::log(LevelIndex::kCeiling);
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LevelIndex LevelIndex::make(int sign, int level, double t) {
    LevelIndex r;
    if (sign == 0 || (level == 0 && t == 0.0)) return r;
    if (std::isnan(t)) throw std::domain_error("level-index value is NaN");
    if (t < 0) {
        if (level != 0) throw std::domain_error("negative index above level 0");
        sign = -sign;
        t = -t;
    }
    while (t > kCeiling || std::isinf(t)) {
        if (std::isinf(t)) throw std::overflow_error("level-index input overflow");
        t = std::log(t);
        ++level;
    }
    while (level > 0 && t <= kLogCeiling) {
        t = std::exp(t);
        --level;
    }
    r.sign_ = sign > 0 ? 1 : -1;
    r.level_ = level;
    r.t_ = t;
    return r;
}

LevelIndex LevelIndex::from_double(double v) {
    if (std::isinf(v)) return make(v > 0 ? 1 : -1, 1, kCeiling);
    return make(v > 0 ? 1 : (v < 0 ? -1 : 0), 0, std::fabs(v));
}

double LevelIndex::to_double() const noexcept {
    if (sign_ == 0) return 0.0;
    if (level_ > 0) return sign_ * kInf;
    return sign_ * t_;
}

LevelIndex LevelIndex::operator-() const noexcept {
    LevelIndex r = *this;
    r.sign_ = -r.sign_;
    return r;
}

int LevelIndex::compare_magnitudes(const LevelIndex& a, const LevelIndex& b) noexcept {
    if (a.sign_ == 0 || b.sign_ == 0) return (a.sign_ != 0) - (b.sign_ != 0);
    if (a.level_ != b.level_) return a.level_ < b.level_ ? -1 : 1;
    if (a.t_ == b.t_) return 0;
    return a.t_ < b.t_ ? -1 : 1;
}

LevelIndex LevelIndex::add_magnitudes(const LevelIndex& big, const LevelIndex& small) {
    if (small.sign_ == 0) return make(1, big.level_, big.t_);
    if (big.level_ == 0) return make(1, 0, big.t_ + small.t_);
    if (big.level_ == 1) {
        double log_small = small.level_ == 0 ? std::log(small.t_) : small.t_;
        return make(1, 1, big.t_ + std::log1p(std::exp(log_small - big.t_)));
    }
    // relative contribution of `small` is below exp(-exp(690))
    return make(1, big.level_, big.t_);
}

LevelIndex LevelIndex::sub_magnitudes(const LevelIndex& big, const LevelIndex& small) {
    if (small.sign_ == 0) return make(1, big.level_, big.t_);
    if (compare_magnitudes(big, small) == 0) return {};
    if (big.level_ == 0) return make(1, 0, big.t_ - small.t_);
    if (big.level_ == 1) {
        double log_small = small.level_ == 0 ? std::log(small.t_) : small.t_;
        double t = big.t_ + std::log1p(-std::exp(log_small - big.t_));
        return make(1, 1, t);
    }
    return make(1, big.level_, big.t_);
}

LevelIndex LevelIndex::operator+(const LevelIndex& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    int c = compare_magnitudes(*this, o);
    const LevelIndex& big = c >= 0 ? *this : o;
    const LevelIndex& small = c >= 0 ? o : *this;
    LevelIndex mag = sign_ == o.sign_ ? add_magnitudes(big, small) : sub_magnitudes(big, small);
    if (mag.sign_ != 0) mag.sign_ = big.sign_;
    return mag;
}

LevelIndex LevelIndex::operator-(const LevelIndex& o) const { return *this + (-o); }

LevelIndex LevelIndex::scaled(double c) const {
    if (sign_ == 0 || c == 0.0) return {};
    int s = c > 0 ? sign_ : -sign_;
    double ac = std::fabs(c);
    switch (level_) {
        case 0:
            if (t_ > kCeiling / ac) return make(s, 1, std::log(t_) + std::log(ac));
            return make(s, 0, t_ * ac);
        case 1:
            return make(s, 1, t_ + std::log(ac));
        case 2:
            return make(s, 2, t_ + std::log1p(std::log(ac) * std::exp(-t_)));
        default:
            return make(s, level_, t_);
    }
}

LevelIndex LevelIndex::exp() const {
    if (sign_ == 0) return make(1, 0, 1.0);
    if (sign_ > 0) return make(1, level_ + 1, t_);
    if (level_ > 0) return {};
    return make(1, 0, std::exp(-t_));
}

LevelIndex LevelIndex::softplus() const {
    if (sign_ == 0) return make(1, 0, std::log(2.0));
    if (level_ > 0) return sign_ > 0 ? *this : LevelIndex{};
    double v = sign_ * t_;
    if (v > 40) return *this + from_double(std::log1p(std::exp(-v)));
    return from_double(std::log1p(std::exp(v)));
}

std::partial_ordering LevelIndex::operator<=>(const LevelIndex& o) const noexcept {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int c = compare_magnitudes(*this, o);
    if (sign_ < 0) c = -c;
    return c <=> 0;
}

std::string LevelIndex::to_string() const {
    std::ostringstream os;
    if (level_ == 0) {
        os << sign_ * t_;
    } else {
        os << (sign_ < 0 ? "-" : "") << "exp^" << level_ << "(" << t_ << ")";
    }
    return os.str();
}

LogReal::LogReal(int sign, LevelIndex log_magnitude)
    : sign_(sign > 0 ? 1 : (sign < 0 ? -1 : 0)), log_mag_(sign_ == 0 ? LevelIndex{} : log_magnitude) {}

LogReal LogReal::from_double(double v) {
    if (v == 0.0) return {};
    if (std::isnan(v)) throw std::domain_error("LogReal from NaN");
    if (std::isinf(v)) return LogReal(v > 0 ? 1 : -1, LevelIndex::from_double(kInf));
    return LogReal(v > 0 ? 1 : -1, LevelIndex::from_double(std::log(std::fabs(v))));
}

double LogReal::log_abs() const noexcept {
    if (sign_ == 0) return -kInf;
    return log_mag_.to_double();
}

double LogReal::to_double() const noexcept {
    if (sign_ == 0) return 0.0;
    double l = log_mag_.to_double();
    if (l > 709.78) return sign_ * kInf;
    return sign_ * std::exp(l);
}

LogReal LogReal::operator*(const LogReal& o) const {
    if (sign_ == 0 || o.sign_ == 0) return {};
    return LogReal(sign_ * o.sign_, log_mag_ + o.log_mag_);
}

LogReal LogReal::operator/(const LogReal& o) const {
    if (o.sign_ == 0) throw std::domain_error("LogReal division by zero");
    if (sign_ == 0) return {};
    return LogReal(sign_ * o.sign_, log_mag_ - o.log_mag_);
}

LogReal LogReal::operator+(const LogReal& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    bool this_big = !(log_mag_ < o.log_mag_);
    const LogReal& big = this_big ? *this : o;
    const LogReal& small = this_big ? o : *this;
    LevelIndex gap = small.log_mag_ - big.log_mag_;  // <= 0
    double g = gap.to_double();
    if (g < -800.0) return big;
    double ratio = std::exp(g);
    if (big.sign_ == small.sign_) return LogReal(big.sign_, big.log_mag_ + LevelIndex::from_double(std::log1p(ratio)));
    if (g == 0.0) return {};
    return LogReal(big.sign_, big.log_mag_ + LevelIndex::from_double(std::log1p(-ratio)));
}

LogReal LogReal::pow(double e) const {
    if (e == 0.0) return one();
    if (sign_ == 0) {
        if (e < 0) throw std::domain_error("LogReal: zero to a negative power");
        return {};
    }
    int s = sign_;
    if (s < 0) {
        double ip;
        if (std::modf(e, &ip) != 0.0) throw std::domain_error("LogReal: fractional power of a negative number");
        s = std::fmod(std::fabs(ip), 2.0) == 1.0 ? -1 : 1;
    }
    return LogReal(s, log_mag_.scaled(e));
}

LogReal LogReal::exp() const {
    if (sign_ == 0) return one();
    LevelIndex value = log_mag_.exp();
    if (sign_ < 0) value = -value;
    return LogReal(1, value);
}

LevelIndex LogReal::log1p_abs() const {
    if (sign_ == 0) return {};
    return log_mag_.softplus();
}

}  // namespace wcop
