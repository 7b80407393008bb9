#pragma once

#include <compare>
#include <iosfwd>
#include <string>

namespace qlevy {

/// Half-open time interval [lo, hi) with lo < hi.
class Interval {
public:
    /// Throws InvalidArgument unless both ends are finite and lo < hi.
    Interval(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double length() const noexcept { return hi_ - lo_; }

    Interval shifted(double u) const { return Interval(lo_ + u, hi_ + u); }

    /// True when every point of *this lies strictly before every point of other.
    bool precedes(const Interval& other) const noexcept { return hi_ <= other.lo_; }
    bool disjoint(const Interval& other) const noexcept {
        return precedes(other) || other.precedes(*this);
    }

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
};

/// Lebesgue measure of I ∩ J.
double overlap(const Interval& a, const Interval& b) noexcept;

std::string to_string(const Interval& iv);
std::ostream& operator<<(std::ostream& os, const Interval& iv);

} // namespace qlevy
