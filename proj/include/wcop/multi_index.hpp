#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "wcop/rational.hpp"

namespace wcop {

/// Element of N_0^d.
///
/// The default ordering (`operator<`) is the graded order used by the
/// multivariate chain rule: first by length |a|, then lexicographically
/// by entries. Indices of different dimension order by dimension so that
/// mixed containers stay well-formed; `precedes` rejects that case.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : entries_(dim, 0) {}
    MultiIndex(std::initializer_list<unsigned> entries) : entries_(entries) {}
    explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {}

    static MultiIndex unit(std::size_t dim, std::size_t axis);

    std::size_t dim() const noexcept { return entries_.size(); }
    unsigned order() const noexcept;
    bool is_zero() const noexcept;

    unsigned operator[](std::size_t i) const { return entries_[i]; }
    unsigned& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<unsigned>& entries() const noexcept { return entries_; }

    /// Componentwise a <= b.
    bool fits_in(const MultiIndex& other) const;

    MultiIndex operator+(const MultiIndex& other) const;
    /// Componentwise difference; requires fits_in.
    MultiIndex operator-(const MultiIndex& other) const;
    MultiIndex scaled(unsigned factor) const;

    /// a! = prod a_i!
    Integer factorial() const;

    std::string to_string() const;

    bool operator==(const MultiIndex&) const = default;
    std::strong_ordering operator<=>(const MultiIndex& other) const;

private:
    std::vector<unsigned> entries_;
};

/// Strict graded order; throws DimensionMismatch for unequal dimensions.
bool precedes(const MultiIndex& a, const MultiIndex& b);

/// prod_i binom(a_i, b_i); zero when b does not fit in a.
Integer multi_binomial(const MultiIndex& a, const MultiIndex& b);

/// Every b with b <= bound componentwise, in graded order.
std::vector<MultiIndex> indices_below(const MultiIndex& bound);

/// Every multi index of dimension dim with |a| <= max_order, in graded order.
std::vector<MultiIndex> indices_up_to_order(std::size_t dim, unsigned max_order);

}  // namespace wcop
