#pragma once

#include "qlevy/fock.hpp"
#include "qlevy/interval.hpp"
#include "qlevy/kernels.hpp"
#include "qlevy/partitions.hpp"
#include "qlevy/wick.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qlevy {

/// phi restricted to words in increments: B_I1 ... B_In -> real.
/// Implementations are deterministic and safe for concurrent use.
class MomentOracle {
public:
    virtual ~MomentOracle() = default;

    virtual double moment(std::span<const Interval> word) const = 0;
    virtual std::string engine_id() const = 0;
    virtual std::string kernel_description() const = 0;
    /// Every kernel in the menu is a function of s - t; non-stationary
    /// oracles would override this.
    virtual bool stationary() const { return true; }

    /// phi(B_[0,t)^n).
    double power_moment(double t, int n) const;
};

/// Exact pair-partition engine for constant q.
class WickConstantOracle final : public MomentOracle {
public:
    explicit WickConstantOracle(double q0);
    double moment(std::span<const Interval> word) const override;
    std::string engine_id() const override { return "wick"; }
    std::string kernel_description() const override { return kernel_.description(); }

private:
    QKernel kernel_;
};

/// Pair-partition quadrature engine for a general kernel.
class WickKernelOracle final : public MomentOracle {
public:
    WickKernelOracle(QKernel kernel, QuadMode quad);
    double moment(std::span<const Interval> word) const override;
    std::string engine_id() const override;
    std::string kernel_description() const override { return kernel_.description(); }

private:
    QKernel kernel_;
    QuadMode quad_;
};

/// Vacuum expectations in the discretized deformed Fock space. A fixed depth
/// below ceil(n/2) makes moment() throw DepthError; nullopt picks it per word.
class FockOracle final : public MomentOracle {
public:
    explicit FockOracle(ProcessSpec spec, std::optional<int> depth = std::nullopt);
    double moment(std::span<const Interval> word) const override;
    std::string engine_id() const override { return "fock"; }
    std::string kernel_description() const override { return spec_.kernel().description(); }
    const ProcessSpec& spec() const noexcept { return spec_; }

private:
    ProcessSpec spec_;
    std::optional<int> depth_;
};

/// Per-class limit coefficient c_t(σ) = lim N^|σ| phi(b_σ^(N)).
struct CCoefficient {
    OrderClass sigma;
    double value = 0.0;
    double std_error = 0.0; ///< |extrapolant - v_{N_max}|
    double t_ref = 1.0;
};

/// Increments of width t/N placed at rep(σ)[k] * separation.
std::vector<Interval> sigma_word(const OrderClass& s, double t, long N, double separation = 1.0);

/// phi(B_[i(1), i(1)+t/N) ... B_[i(n), i(n)+t/N)). DomainError if t/N exceeds
/// the separation (increments would overlap).
double sigma_increment_moment(const MomentOracle& o, const OrderClass& s, double t, long N, double separation = 1.0);

/// Least-squares fit of v_N = N^|σ| phi(b_σ^(N)) to c + a/N over Ns (strictly
/// increasing, at least two entries); the intercept is the estimate.
CCoefficient estimate_c(const MomentOracle& o, const OrderClass& s, double t, std::span<const long> Ns,
                        double separation = 1.0);

struct ScalingReport {
    OrderClass sigma;
    long factor = 1;
    double c_t = 0.0;
    double c_kt = 0.0;
    double ratio = 0.0;    ///< NaN when c_t == 0
    double expected = 0.0; ///< factor^|σ|
    /// |ratio - expected|, or |c_kt - expected c_t| when c_t == 0.
    double deviation = 0.0;
};

ScalingReport c_scaling_check(const MomentOracle& o, const OrderClass& s, double t, long factor,
                              std::span<const long> Ns, double separation = 1.0);

/// sum_σ c(σ) t^|σ| / |σ|!; requires exactly one coefficient per class of
/// O(n) (InvalidArgument otherwise).
MomentPolynomial assemble_polynomial(std::span<const CCoefficient> cs, int n);

struct LowMoments {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double residual = 0.0;
};

/// alpha = m1(1), beta = m2(1) - alpha^2, gamma = m3(1) - alpha^3 - 3 alpha beta,
/// residual = worst deviation of m1..m3 from the fitted forms over t_fit.
LowMoments low_moment_coefficients(const MomentOracle& o, std::span<const double> t_fit);

/// A word plus one shift per position. Positions holding the same interval
/// must receive the same shift.
struct ShiftCase {
    std::vector<Interval> word;
    std::vector<double> shifts;
};

/// InvalidArgument unless the case is a valid order-preserving displacement:
/// distinct intervals pairwise disjoint, equal intervals equally shifted, and
/// I_k < I_l implies I_k + t_k < I_l + t_l.
void validate_order_preserving(const ShiftCase& c);

enum class Verdict { Vacuous, Holds, Violated };

struct CaseDeviation {
    std::size_t index = 0;
    double base = 0.0;
    double shifted = 0.0;
    double deviation = 0.0;
};

struct OrderInvarianceReport {
    std::vector<CaseDeviation> cases;
    std::vector<CaseDeviation> violations; ///< cases with deviation > tol
    double max_deviation = 0.0;
    Verdict verdict = Verdict::Vacuous;
};

OrderInvarianceReport order_invariance_check(const MomentOracle& o, std::span<const ShiftCase> cases, double tol);

struct WordDeviation {
    std::size_t index = 0;
    double base = 0.0;
    double max_deviation = 0.0;
    double worst_shift = 0.0;
};

struct StationarityReport {
    std::vector<WordDeviation> words;
    double max_deviation = 0.0;
    Verdict verdict = Verdict::Vacuous;
};

/// Max over shifts of |phi(B_{I1+s} ... B_{In+s}) - phi(B_I1 ... B_In)| per
/// word. InvalidArgument for non-stationary oracles.
StationarityReport stationarity_check(const MomentOracle& o, std::span<const std::vector<Interval>> words,
                                      std::span<const double> shifts, double tol);

enum class Comparison { Distinct, Indistinguishable };

struct CompareResult {
    std::vector<double> moments_a; ///< m_1..m_nmax of B_[0,1)
    std::vector<double> moments_b;
    std::optional<int> first_difference; ///< order n of the first gap > tol
    double gap = 0.0;                    ///< m_a - m_b at first_difference
    Comparison verdict = Comparison::Indistinguishable;
};

CompareResult compare_processes(const MomentOracle& a, const MomentOracle& b, int n_max, double tol);

} // namespace qlevy
