#pragma once

#include "qlevy/interval.hpp"
#include "qlevy/kernels.hpp"
#include "qlevy/partitions.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace qlevy {

/// m(t) = sum_d coeffs[d] t^d, with trailing zero coefficients trimmed.
class MomentPolynomial {
public:
    MomentPolynomial() = default;
    explicit MomentPolynomial(std::vector<double> coeffs);

    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    /// Coefficient of t^d (zero past the stored degree).
    double coefficient(std::size_t d) const noexcept { return d < coeffs_.size() ? coeffs_[d] : 0.0; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    double operator()(double t) const noexcept;

    friend bool operator==(const MomentPolynomial&, const MomentPolynomial&) = default;

private:
    std::vector<double> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const MomentPolynomial& p);

/// Cached pairings of {1..n}, in enumeration order. Throws like
/// enumerate_pair_partitions.
const std::vector<PairPartition>& pairings(int n);

/// sum over pairings pi of {1..n} of q0^cr(pi), i.e. phi(B_1^n) of q-Brownian
/// motion. Zero for odd n.
double crossing_polynomial(double q0, int n);

/// phi(B_[0,t)^n) for constant q0: t^(n/2) * crossing_polynomial(q0, n).
/// Throws InvalidArgument for |q0| > 1, n < 1 or t < 0.
double constant_q_moment(double q0, int n, double t);

/// phi(B_I1 ... B_In) for constant q0:
///   sum_pi q0^cr(pi) prod_{(a,b) in pi} |I_a ∩ I_b|.
double mixed_moment_constant(double q0, std::span<const Interval> word);

/// Largest word length accepted by mixed_moment_kernel (k = n/2 quadrature
/// dimensions).
inline constexpr int kMaxKernelWordLength = 8;

/// phi(B_I1 ... B_In) for a kernel q(s - t):
///   sum_pi ∫ prod_pairs 1{x_i in I_a ∩ I_b} prod_{crossing i,j} q(x_i - x_j) dx.
/// Grid mode reproduces the discretized Fock value and requires aligned
/// intervals. Throws SizeLimitError for n > kMaxKernelWordLength.
double mixed_moment_kernel(const QKernel& q, std::span<const Interval> word, const QuadMode& quad);

/// phi(B_t^n) = c t^(n/2) as a polynomial; the zero polynomial for odd n.
MomentPolynomial moment_polynomial_constant(double q0, int n);

using PairingWeight = std::function<double(const PairPartition&)>;

/// sum_pi weight(pi) prod_{(a,b) in pi} |I_a ∩ I_b|; zero for odd n.
double wick_general(const PairingWeight& weight, std::span<const Interval> word);

} // namespace qlevy
