#include "subopt/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subopt/errors.hpp"

namespace subopt {

IntervalUnion::IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
    for (const Interval& iv : parts_) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi)) {
            throw invalid_argument_error("interval endpoints must not be NaN");
        }
        if (!(iv.lo < iv.hi)) {
            throw invalid_argument_error("interval [" + std::to_string(iv.lo) + ", " +
                                         std::to_string(iv.hi) + "] is empty or degenerate");
        }
    }
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < parts_.size(); ++i) {
        if (!(parts_[i - 1].hi < parts_[i].lo)) {
            throw invalid_argument_error("support intervals must be disjoint with positive gaps");
        }
    }
}

bool IntervalUnion::contains(double x) const {
    for (const Interval& iv : parts_) {
        if (x < iv.lo) return false; // sorted, no later interval can match
        if (x <= iv.hi) return true;
    }
    return false;
}

bool IntervalUnion::symmetric_about(double c, double tol) const {
    const std::size_t n = parts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Interval& left = parts_[i];
        const Interval& right = parts_[n - 1 - i];
        // left.lo must mirror right.hi and left.hi mirror right.lo.
        auto mirrors = [c, tol](double u, double v) {
            if (std::isinf(u) || std::isinf(v)) return u == -v;
            double du = u - c, dv = v - c;
            return std::abs(du + dv) <= tol * std::max(1.0, std::abs(du));
        };
        if (!mirrors(left.lo, right.hi) || !mirrors(left.hi, right.lo)) return false;
    }
    return true;
}

std::vector<double> IntervalUnion::finite_boundaries_descending() const {
    std::vector<double> b;
    for (const Interval& iv : parts_) {
        if (std::isfinite(iv.lo)) b.push_back(iv.lo);
        if (std::isfinite(iv.hi)) b.push_back(iv.hi);
    }
    std::sort(b.begin(), b.end(), std::greater<double>());
    return b;
}

bool IntervalUnion::operator==(const IntervalUnion& other) const {
    if (parts_.size() != other.parts_.size()) return false;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].lo != other.parts_[i].lo || parts_[i].hi != other.parts_[i].hi) return false;
    }
    return true;
}

} // namespace subopt
