#include "qlevy/levy.hpp"

#include "qlevy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace qlevy {

double MomentOracle::power_moment(double t, int n) const {
    if (n < 1) throw InvalidArgument("moment order must be >= 1");
    const std::vector<Interval> word(static_cast<std::size_t>(n), Interval(0.0, t));
    return moment(word);
}

WickConstantOracle::WickConstantOracle(double q0) : kernel_(QKernel::constant(q0)) {}

double WickConstantOracle::moment(std::span<const Interval> word) const {
    return mixed_moment_constant(kernel_.constant_value(), word);
}

WickKernelOracle::WickKernelOracle(QKernel kernel, QuadMode quad) : kernel_(std::move(kernel)), quad_(quad) {
    if (const auto* g = std::get_if<Grid>(&quad_)) g->validate();
}

double WickKernelOracle::moment(std::span<const Interval> word) const {
    return mixed_moment_kernel(kernel_, word, quad_);
}

std::string WickKernelOracle::engine_id() const {
    return std::holds_alternative<Grid>(quad_) ? "wick-grid" : "wick-gauss";
}

FockOracle::FockOracle(ProcessSpec spec, std::optional<int> depth) : spec_(std::move(spec)), depth_(depth) {}

double FockOracle::moment(std::span<const Interval> word) const {
    return mixed_vacuum_moment(spec_, word, depth_);
}

std::vector<Interval> sigma_word(const OrderClass& s, double t, long N, double separation) {
    if (N < 1) throw InvalidArgument("subdivision count must be >= 1");
    if (!(t > 0.0) || !(separation > 0.0)) throw InvalidArgument("time and separation must be positive");
    const double width = t / static_cast<double>(N);
    if (width > separation) {
        throw DomainError("increment width t/N exceeds the base separation; increments would overlap");
    }
    std::vector<Interval> word;
    word.reserve(s.rep().size());
    for (int i : s.rep()) {
        const double lo = i * separation;
        word.emplace_back(lo, lo + width);
    }
    return word;
}

double sigma_increment_moment(const MomentOracle& o, const OrderClass& s, double t, long N, double separation) {
    const auto word = sigma_word(s, t, N, separation);
    return o.moment(word);
}

CCoefficient estimate_c(const MomentOracle& o, const OrderClass& s, double t, std::span<const long> Ns,
                        double separation) {
    if (Ns.size() < 2) throw InvalidArgument("estimate_c needs at least two subdivision counts");
    for (std::size_t i = 1; i < Ns.size(); ++i) {
        if (Ns[i] <= Ns[i - 1]) throw InvalidArgument("subdivision counts must be strictly increasing");
    }
    std::vector<double> x;
    std::vector<double> v;
    for (long N : Ns) {
        const double m = sigma_increment_moment(o, s, t, N, separation);
        x.push_back(1.0 / static_cast<double>(N));
        v.push_back(std::pow(static_cast<double>(N), s.blocks()) * m);
    }
    // v = c + a x by least squares
    const double n = static_cast<double>(x.size());
    double xbar = 0.0;
    double vbar = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xbar += x[i];
        vbar += v[i];
    }
    xbar /= n;
    vbar /= n;
    double sxx = 0.0;
    double sxv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxv += (x[i] - xbar) * (v[i] - vbar);
    }
    const double slope = sxv / sxx;
    const double c = vbar - slope * xbar;
    return CCoefficient{s, c, std::fabs(c - v.back()), t};
}

ScalingReport c_scaling_check(const MomentOracle& o, const OrderClass& s, double t, long factor,
                              std::span<const long> Ns, double separation) {
    if (factor < 1) throw InvalidArgument("scaling factor must be a positive integer");
    ScalingReport r{s, factor};
    r.c_t = estimate_c(o, s, t, Ns, separation).value;
    r.c_kt = estimate_c(o, s, t * static_cast<double>(factor), Ns, separation).value;
    r.expected = std::pow(static_cast<double>(factor), s.blocks());
    if (r.c_t != 0.0) {
        r.ratio = r.c_kt / r.c_t;
        r.deviation = std::fabs(r.ratio - r.expected);
    } else {
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        r.deviation = std::fabs(r.c_kt - r.expected * r.c_t);
    }
    return r;
}

MomentPolynomial assemble_polynomial(std::span<const CCoefficient> cs, int n) {
    const auto classes = enumerate_order_classes(n);
    std::set<OrderClass> seen;
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
    for (const auto& c : cs) {
        if (c.sigma.length() != n) throw InvalidArgument("coefficient for a class of the wrong length");
        if (!seen.insert(c.sigma).second) throw InvalidArgument("duplicate coefficient for a class");
        double factorial = 1.0;
        for (int i = 2; i <= c.sigma.blocks(); ++i) factorial *= i;
        coeffs[static_cast<std::size_t>(c.sigma.blocks())] += c.value / factorial;
    }
    for (const auto& s : classes) {
        if (!seen.count(s)) {
            std::ostringstream msg;
            msg << "missing coefficient for class " << s;
            throw InvalidArgument(msg.str());
        }
    }
    return MomentPolynomial(std::move(coeffs));
}

LowMoments low_moment_coefficients(const MomentOracle& o, std::span<const double> t_fit) {
    std::set<double> distinct;
    for (double t : t_fit) {
        if (!(t > 0.0)) throw InvalidArgument("fit times must be positive");
        distinct.insert(t);
    }
    if (distinct.size() < 3) throw InvalidArgument("need at least three distinct fit times");

    LowMoments r;
    r.alpha = o.power_moment(1.0, 1);
    r.beta = o.power_moment(1.0, 2) - r.alpha * r.alpha;
    r.gamma = o.power_moment(1.0, 3) - r.alpha * r.alpha * r.alpha - 3.0 * r.alpha * r.beta;
    const double a = r.alpha;
    const double b = r.beta;
    const double g = r.gamma;
    for (double t : distinct) {
        const double m1 = o.power_moment(t, 1);
        const double m2 = o.power_moment(t, 2);
        const double m3 = o.power_moment(t, 3);
        r.residual = std::max({r.residual, std::fabs(m1 - a * t), std::fabs(m2 - (a * a * t * t + b * t)),
                               std::fabs(m3 - (a * a * a * t * t * t + 3.0 * a * b * t * t + g * t))});
    }
    return r;
}

void validate_order_preserving(const ShiftCase& c) {
    if (c.word.empty()) throw InvalidArgument("shift case has an empty word");
    if (c.shifts.size() != c.word.size()) throw InvalidArgument("shift case needs one shift per word position");
    for (double s : c.shifts) {
        if (!std::isfinite(s)) throw InvalidArgument("shifts must be finite");
    }
    for (std::size_t k = 0; k < c.word.size(); ++k) {
        for (std::size_t l = 0; l < c.word.size(); ++l) {
            const auto& A = c.word[k];
            const auto& B = c.word[l];
            if (A == B) {
                if (c.shifts[k] != c.shifts[l]) {
                    throw InvalidArgument("repeated interval " + to_string(A) + " must be shifted consistently");
                }
                continue;
            }
            if (!A.disjoint(B)) {
                throw InvalidArgument("intervals " + to_string(A) + " and " + to_string(B) + " overlap");
            }
            if (A.precedes(B) && !A.shifted(c.shifts[k]).precedes(B.shifted(c.shifts[l]))) {
                throw InvalidArgument("shifts change the order of " + to_string(A) + " and " + to_string(B));
            }
        }
    }
}

OrderInvarianceReport order_invariance_check(const MomentOracle& o, std::span<const ShiftCase> cases, double tol) {
    for (const auto& c : cases) validate_order_preserving(c);
    OrderInvarianceReport r;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        std::vector<Interval> moved;
        moved.reserve(c.word.size());
        for (std::size_t k = 0; k < c.word.size(); ++k) moved.push_back(c.word[k].shifted(c.shifts[k]));
        CaseDeviation d{i, o.moment(c.word), o.moment(moved), 0.0};
        d.deviation = std::fabs(d.base - d.shifted);
        r.max_deviation = std::max(r.max_deviation, d.deviation);
        if (d.deviation > tol) r.violations.push_back(d);
        r.cases.push_back(d);
    }
    if (!cases.empty()) r.verdict = r.violations.empty() ? Verdict::Holds : Verdict::Violated;
    return r;
}

StationarityReport stationarity_check(const MomentOracle& o, std::span<const std::vector<Interval>> words,
                                      std::span<const double> shifts, double tol) {
    if (!o.stationary()) throw InvalidArgument("stationarity check needs a stationary kernel");
    StationarityReport r;
    for (std::size_t i = 0; i < words.size(); ++i) {
        WordDeviation d{i, o.moment(words[i]), 0.0, 0.0};
        for (double s : shifts) {
            std::vector<Interval> moved;
            moved.reserve(words[i].size());
            for (const auto& I : words[i]) moved.push_back(I.shifted(s));
            const double dev = std::fabs(o.moment(moved) - d.base);
            if (dev > d.max_deviation) {
                d.max_deviation = dev;
                d.worst_shift = s;
            }
        }
        r.max_deviation = std::max(r.max_deviation, d.max_deviation);
        r.words.push_back(d);
    }
    if (!words.empty() && !shifts.empty()) r.verdict = r.max_deviation > tol ? Verdict::Violated : Verdict::Holds;
    return r;
}

CompareResult compare_processes(const MomentOracle& a, const MomentOracle& b, int n_max, double tol) {
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
    CompareResult r;
    for (int n = 1; n <= n_max; ++n) {
        r.moments_a.push_back(a.power_moment(1.0, n));
        r.moments_b.push_back(b.power_moment(1.0, n));
        const double gap = r.moments_a.back() - r.moments_b.back();
        if (!r.first_difference && std::fabs(gap) > tol) {
            r.first_difference = n;
            r.gap = gap;
        }
    }
    r.verdict = r.first_difference ? Comparison::Distinct : Comparison::Indistinguishable;
    return r;
}

} // namespace qlevy
