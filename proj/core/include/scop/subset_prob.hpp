#pragma once

#include "scop/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace scop {

/*
 * A probability valued in subsets of [0,1] instead of single numbers.
 * Values are kept as the canonical finite union of closed rational
 * intervals: sorted, pairwise disjoint, non-adjacent, every endpoint in
 * [0,1]. Points are degenerate intervals. Canonical form is unique, so
 * equality is plain structural equality and "= {0}" / "= {1}" are exact
 * tests. Singletons recover ordinary probabilities.
 *
 * Values are immutable after construction.
 */
class SubsetProb {
public:
    struct Interval {
        Rational lo;
        Rational hi;
        bool operator==(const Interval&) const = default;
        bool is_point() const { return lo == hi; }
    };

    // Canonicalizes: merges overlapping/adjacent intervals, sorts.
    // Throws errc::empty_subset / errc::out_of_unit_interval.
    explicit SubsetProb(std::vector<Interval> raw);

    static SubsetProb zero();
    static SubsetProb one();
    static SubsetProb point(const Rational& x);
    static SubsetProb interval(const Rational& lo, const Rational& hi);

    const std::vector<Interval>& intervals() const { return intervals_; }

    bool is_null() const;    // exactly {0}
    bool is_certain() const; // exactly {1}
    bool is_singleton() const { return intervals_.size() == 1 && intervals_[0].is_point(); }
    const Rational& singleton_value() const; // requires is_singleton()
    bool contains(const Rational& x) const;

    std::string str() const; // e.g. "{0}", "[1/10,2/5]u{7/10}"

    bool operator==(const SubsetProb&) const = default;
    bool operator<(const SubsetProb& other) const; // lexicographic, for map keys

private:
    SubsetProb() = default;
    std::vector<Interval> intervals_;
};

// x -> 1-x pointwise; an involution.
SubsetProb one_minus(const SubsetProb& a);

// {x*y | x in b, y in c}; commutative, identity {1}, annihilator {0}.
SubsetProb product(const SubsetProb& b, const SubsetProb& c);

// Set union; join-semilattice operation.
SubsetProb set_union(const SubsetProb& a, const SubsetProb& b);

} // namespace scop
