#include "qlevy/wick.hpp"

#include "qlevy/errors.hpp"
#include "qlevy/quadrature.hpp"
#include "qlevy/summation.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

namespace qlevy {

MomentPolynomial::MomentPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw InvalidArgument("moment polynomial coefficients must be finite");
    }
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double MomentPolynomial::operator()(double t) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

std::ostream& operator<<(std::ostream& os, const MomentPolynomial& p) {
    if (p.is_zero()) return os << '0';
    bool first = true;
    for (std::size_t d = 0; d < p.coefficients().size(); ++d) {
        if (p.coefficients()[d] == 0.0) continue;
        if (!first) os << " + ";
        os << p.coefficients()[d];
        if (d > 0) os << "*t^" << d;
        first = false;
    }
    return os;
}

const std::vector<PairPartition>& pairings(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const std::vector<PairPartition>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<const std::vector<PairPartition>>(enumerate_pair_partitions(n));
    return *slot;
}

namespace {

void check_q0(double q0) {
    if (!(std::fabs(q0) <= 1.0)) throw InvalidArgument("constant q must satisfy |q| <= 1");
}

void check_word(std::span<const Interval> word) {
    if (word.empty()) throw InvalidArgument("moment word must contain at least one interval");
}

// Integer powers by repeated multiplication so q0 = 0 gives 0^0 = 1.
double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

} // namespace

double crossing_polynomial(double q0, int n) {
    check_q0(q0);
    if (n < 1) throw InvalidArgument("moment order must be >= 1");
    if (n % 2 != 0) return 0.0;
    const auto dist = crossing_distribution(n);
    CompensatedSum sum;
    for (std::size_t cr = 0; cr < dist.size(); ++cr) {
        sum.add(static_cast<double>(dist[cr]) * ipow(q0, static_cast<int>(cr)));
    }
    return sum.value();
}

double constant_q_moment(double q0, int n, double t) {
    if (!(t >= 0.0)) throw InvalidArgument("time must be non-negative");
    const double c = crossing_polynomial(q0, n);
    return n % 2 != 0 ? 0.0 : c * ipow(t, n / 2);
}

double mixed_moment_constant(double q0, std::span<const Interval> word) {
    check_q0(q0);
    check_word(word);
    const int n = static_cast<int>(word.size());
    if (n % 2 != 0) return 0.0;
    CompensatedSum sum;
    for (const auto& p : pairings(n)) {
        double w = 1.0;
        for (const auto& [a, b] : p.pairs()) {
            w *= overlap(word[a - 1], word[b - 1]);
            if (w == 0.0) break;
        }
        if (w == 0.0) continue;
        sum.add(w * ipow(q0, crossings(p)));
    }
    return sum.value();
}

double mixed_moment_kernel(const QKernel& q, std::span<const Interval> word, const QuadMode& quad) {
    check_word(word);
    const int n = static_cast<int>(word.size());
    if (n > kMaxKernelWordLength) {
        throw SizeLimitError("kernel Wick engine supports words of length <= " + std::to_string(kMaxKernelWordLength) +
                             ", got " + std::to_string(n));
    }
    if (const auto* grid = std::get_if<Grid>(&quad)) {
        grid->validate();
        for (const auto& iv : word) (void)aligned_cells(iv, grid->delta());
    }
    if (n % 2 != 0) return 0.0;

    CompensatedSum sum;
    std::vector<Interval> domains;
    std::vector<quad::Coupling> couplings;
    for (const auto& p : pairings(n)) {
        domains.clear();
        couplings.clear();
        bool empty = false;
        for (const auto& [a, b] : p.pairs()) {
            const auto& A = word[a - 1];
            const auto& B = word[b - 1];
            if (overlap(A, B) <= 0.0) {
                empty = true;
                break;
            }
            domains.emplace_back(std::max(A.lo(), B.lo()), std::min(A.hi(), B.hi()));
        }
        if (empty) continue;
        const auto& pr = p.pairs();
        for (std::size_t i = 0; i < pr.size(); ++i) {
            for (std::size_t j = i + 1; j < pr.size(); ++j) {
                // pairs are sorted by first element, so i opens before j
                if (pr[j].first < pr[i].second && pr[i].second < pr[j].second) couplings.push_back({i, j});
            }
        }
        sum.add(quad::integrate_coupled(q, domains, couplings, quad));
    }
    return sum.value();
}

MomentPolynomial moment_polynomial_constant(double q0, int n) {
    const double c = crossing_polynomial(q0, n);
    if (n % 2 != 0) return MomentPolynomial();
    std::vector<double> coeffs(static_cast<std::size_t>(n / 2) + 1, 0.0);
    coeffs.back() = c;
    return MomentPolynomial(std::move(coeffs));
}

double wick_general(const PairingWeight& weight, std::span<const Interval> word) {
    check_word(word);
    const int n = static_cast<int>(word.size());
    if (n % 2 != 0) return 0.0;
    CompensatedSum sum;
    for (const auto& p : pairings(n)) {
        double w = 1.0;
        for (const auto& [a, b] : p.pairs()) w *= overlap(word[a - 1], word[b - 1]);
        if (w == 0.0) continue;
        sum.add(weight(p) * w);
    }
    return sum.value();
}

} // namespace qlevy
