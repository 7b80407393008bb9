#pragma once

#include "qlevy/interval.hpp"
#include "qlevy/kernels.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace qlevy {

/// Basis tuple (j_1, ..., j_k) of 1-based cell indices; j_1 is the most
/// recently created particle.
using FockTuple = std::vector<std::int32_t>;

/// Finitely supported vector in the truncated full Fock space over the cell
/// basis e_1..e_N. Tuples longer than depth() never appear.
class FockVector {
public:
    explicit FockVector(int depth) : depth_(depth) {}

    /// Amplitude 1 at the empty tuple.
    static FockVector vacuum(int depth);

    int depth() const noexcept { return depth_; }
    const std::map<FockTuple, double>& amplitudes() const noexcept { return amps_; }

    /// Amplitude of a tuple, zero when absent.
    double amplitude(const FockTuple& t) const;
    /// Coefficient of the empty tuple, i.e. <v, Omega>.
    double vacuum_coefficient() const { return amplitude({}); }

    bool is_zero() const noexcept { return amps_.empty(); }

    /// Adds c to the amplitude of t (drops the entry if it cancels to zero);
    /// tuples longer than depth() are ignored.
    void accumulate(const FockTuple& t, double c);

    FockVector& operator+=(const FockVector& other);
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    FockVector scaled(double c) const;

private:
    int depth_;
    std::map<FockTuple, double> amps_;
};

/// Kernel + grid + drift for one discretized deformed Fock space. The
/// Toeplitz samples q_ij = q((i-j) delta) are computed at construction.
class ProcessSpec {
public:
    /// drift alpha is per unit time (B_I + alpha |I| 1); must be finite.
    ProcessSpec(QKernel kernel, Grid grid, double drift = 0.0);

    const QKernel& kernel() const noexcept { return kernel_; }
    const Grid& grid() const noexcept { return grid_; }
    double drift() const noexcept { return drift_; }
    double delta() const noexcept { return grid_.delta(); }

    /// q_ij for 1-based cells.
    double q(int i, int j) const noexcept { return qrow_[static_cast<std::size_t>(i > j ? i - j : j - i)]; }

    /// 1-based cells [first, last] covered by I; AlignmentError unless I is
    /// aligned and inside [0, horizon].
    std::pair<int, int> cells_of(const Interval& I) const;

private:
    QKernel kernel_;
    Grid grid_;
    double drift_;
    std::vector<double> qrow_;
};

/// a*_i: moves each amplitude at (j_1..j_k) to (i, j_1..j_k); tuples that
/// would exceed the depth cap are dropped. DomainError if i is out of range.
FockVector apply_creation(const ProcessSpec& spec, int i, const FockVector& v);

/// a_i (e_j1 ⊗ ... ⊗ e_jk) = sum_r (prod_{l<r} q_{i j_l}) δ_{i j_r} delta · (tuple without j_r).
FockVector apply_annihilation(const ProcessSpec& spec, int i, const FockVector& v);

/// B_I v = sum_{cells c in I} (a_c + a*_c) v + drift |I| v.
FockVector apply_field(const ProcessSpec& spec, const Interval& I, const FockVector& v);

/// phi(B_I1 ... B_In) = <B_I1 ... B_In Omega, Omega>, fields applied right to
/// left. depth defaults to ceil(n/2); a smaller depth throws DepthError.
double mixed_vacuum_moment(const ProcessSpec& spec, std::span<const Interval> word,
                           std::optional<int> depth = std::nullopt);

/// phi(B_I^n).
double vacuum_moment(const ProcessSpec& spec, const Interval& I, int n, std::optional<int> depth = std::nullopt);

} // namespace qlevy
