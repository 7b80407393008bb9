#include "qlevy/interval.hpp"

#include "qlevy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace qlevy {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument("invalid interval " + to_string(*this) + ": need finite lo < hi");
    }
}

double overlap(const Interval& a, const Interval& b) noexcept {
    return std::max(0.0, std::min(a.hi(), b.hi()) - std::max(a.lo(), b.lo()));
}

std::string to_string(const Interval& iv) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g,%.17g)", iv.lo(), iv.hi());
    return buf;
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << to_string(iv); }

} // namespace qlevy
