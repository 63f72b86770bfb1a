#include "scop/subset_prob.hpp"

#include "scop/error.hpp"

#include <algorithm>

namespace scop {

SubsetProb::SubsetProb(std::vector<Interval> raw) {
    if (raw.empty()) raise(errc::empty_subset, "a subset probability must be nonempty");
    for (const auto& iv : raw) {
        if (iv.lo > iv.hi)
            raise(errc::out_of_unit_interval, "interval with lo > hi");
        if (iv.lo < 0 || iv.hi > 1)
            raise(errc::out_of_unit_interval,
                  "endpoint outside [0,1]: [" + rational_to_string(iv.lo) + "," +
                      rational_to_string(iv.hi) + "]");
    }
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
        return a.lo == b.lo ? a.hi < b.hi : a.lo < b.lo;
    });
    // Closed intervals: touching endpoints merge, so canonical parts are
    // separated by open gaps and the representation is unique.
    for (const auto& iv : raw) {
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
            if (iv.hi > intervals_.back().hi) intervals_.back().hi = iv.hi;
        } else {
            intervals_.push_back(iv);
        }
    }
}

SubsetProb SubsetProb::zero() { return point(Rational(0)); }
SubsetProb SubsetProb::one() { return point(Rational(1)); }

SubsetProb SubsetProb::point(const Rational& x) { return SubsetProb({Interval{x, x}}); }

SubsetProb SubsetProb::interval(const Rational& lo, const Rational& hi) {
    return SubsetProb({Interval{lo, hi}});
}

bool SubsetProb::is_null() const {
    return intervals_.size() == 1 && intervals_[0].lo == 0 && intervals_[0].hi == 0;
}

bool SubsetProb::is_certain() const {
    return intervals_.size() == 1 && intervals_[0].lo == 1 && intervals_[0].hi == 1;
}

const Rational& SubsetProb::singleton_value() const {
    if (!is_singleton()) raise(errc::non_singleton_probability, "value is not a singleton: " + str());
    return intervals_[0].lo;
}

bool SubsetProb::contains(const Rational& x) const {
    for (const auto& iv : intervals_) {
        if (x < iv.lo) return false;
        if (x <= iv.hi) return true;
    }
    return false;
}

std::string SubsetProb::str() const {
    std::string out;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i) out += "u";
        const auto& iv = intervals_[i];
        if (iv.is_point())
            out += "{" + rational_to_string(iv.lo) + "}";
        else
            out += "[" + rational_to_string(iv.lo) + "," + rational_to_string(iv.hi) + "]";
    }
    return out;
}

bool SubsetProb::operator<(const SubsetProb& other) const {
    return std::lexicographical_compare(
        intervals_.begin(), intervals_.end(), other.intervals_.begin(), other.intervals_.end(),
        [](const Interval& a, const Interval& b) {
            return a.lo == b.lo ? a.hi < b.hi : a.lo < b.lo;
        });
}

SubsetProb one_minus(const SubsetProb& a) {
    std::vector<SubsetProb::Interval> out;
    out.reserve(a.intervals().size());
    for (const auto& iv : a.intervals())
        out.push_back({Rational(1) - iv.hi, Rational(1) - iv.lo});
    return SubsetProb(std::move(out));
}

SubsetProb product(const SubsetProb& b, const SubsetProb& c) {
    // Endpoints are nonnegative, so [p,q]*[r,s] = [p*r, q*s].
    std::vector<SubsetProb::Interval> out;
    out.reserve(b.intervals().size() * c.intervals().size());
    for (const auto& x : b.intervals())
        for (const auto& y : c.intervals())
            out.push_back({x.lo * y.lo, x.hi * y.hi});
    return SubsetProb(std::move(out));
}

SubsetProb set_union(const SubsetProb& a, const SubsetProb& b) {
    std::vector<SubsetProb::Interval> out = a.intervals();
    out.insert(out.end(), b.intervals().begin(), b.intervals().end());
    return SubsetProb(std::move(out));
}

} // namespace scop
