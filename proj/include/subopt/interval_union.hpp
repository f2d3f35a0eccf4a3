#pragma once

// Ordered unions of disjoint closed intervals, the support sets of
// subsampling designs. Endpoints may be infinite.

#include <cstddef>
#include <vector>

namespace subopt {

struct Interval {
    double lo;
    double hi;
};

class IntervalUnion {
public:
    IntervalUnion() = default;
    // Sorts by lower endpoint and validates: each interval needs lo < hi,
    // and consecutive intervals must be separated by a positive gap.
    explicit IntervalUnion(std::vector<Interval> parts);

    const std::vector<Interval>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    // Membership with closed endpoints.
    bool contains(double x) const;

    // True when the set maps onto itself under reflection through c.
    bool symmetric_about(double c, double tol = 1e-9) const;

    // All finite endpoints in descending order.
    std::vector<double> finite_boundaries_descending() const;

    bool operator==(const IntervalUnion& other) const;

private:
    std::vector<Interval> parts_;
};

} // namespace subopt
