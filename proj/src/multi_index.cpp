#include "wcop/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "wcop/errors.hpp"

namespace wcop {

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t axis) {
    MultiIndex e(dim);
    e.entries_.at(axis) = 1;
    return e;
}

unsigned MultiIndex::order() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0u);
}

bool MultiIndex::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](unsigned v) { return v == 0; });
}

bool MultiIndex::fits_in(const MultiIndex& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("multi index dimensions differ");
    for (std::size_t i = 0; i < dim(); ++i)
        if (entries_[i] > other.entries_[i]) return false;
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("multi index dimensions differ");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < dim(); ++i) r.entries_[i] += other.entries_[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
    if (!other.fits_in(*this)) throw InvalidRange("multi index difference would be negative");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < dim(); ++i) r.entries_[i] -= other.entries_[i];
    return r;
}

MultiIndex MultiIndex::scaled(unsigned factor) const {
    MultiIndex r(*this);
    for (auto& v : r.entries_) v *= factor;
    return r;
}

Integer MultiIndex::factorial() const {
    Integer r = 1;
    for (unsigned v : entries_) r *= wcop::factorial(v);
    return r;
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries_[i]);
    }
    return s + ")";
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
    if (dim() != other.dim()) return dim() <=> other.dim();
    if (auto c = order() <=> other.order(); c != 0) return c;
    return entries_ <=> other.entries_;
}

bool precedes(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("cannot order multi indices of different dimension");
    return a < b;
}

Integer multi_binomial(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("multi index dimensions differ");
    Integer r = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) r *= binomial(a[i], b[i]);
    return r;
}

std::vector<MultiIndex> indices_below(const MultiIndex& bound) {
    std::vector<MultiIndex> out;
    MultiIndex cur(bound.dim());
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < cur.dim() && cur[i] == bound[i]) cur[i++] = 0;
        if (i == cur.dim()) break;
        ++cur[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> indices_up_to_order(std::size_t dim, unsigned max_order) {
    MultiIndex box(dim);
    for (std::size_t i = 0; i < dim; ++i) box[i] = max_order;
    std::vector<MultiIndex> out;
    for (auto& m : indices_below(box))
        if (m.order() <= max_order) out.push_back(m);
    return out;
}

}  // namespace wcop
