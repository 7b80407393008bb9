#pragma once

#include "qlevy/interval.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qlevy {

/// Symmetric deformation function q : R -> [-1, 1], q(t) = q(-t).
///
/// Three families are supported:
///  - constant:    q(t) = q0
///  - exponential: q(t) = q0 * exp(-lambda |t|)
///  - tabulated:   piecewise-linear through samples (t_i, q_i), t_i >= 0,
///                 reflected to negative t, held constant past the last sample
///                 and clamped to [-1, 1].
class QKernel {
public:
    struct Constant {
        double q0;
    };
    struct Exponential {
        double q0;
        double lambda;
    };
    struct Tabulated {
        std::vector<double> t;
        std::vector<double> q;
    };

    /// |q0| <= 1 or InvalidArgument.
    static QKernel constant(double q0);
    /// |q0| <= 1 and lambda >= 0 or InvalidArgument.
    static QKernel exponential(double q0, double lambda);
    /// t strictly increasing from t[0] >= 0; every |q_i| <= 1.
    static QKernel tabulated(std::vector<double> t, std::vector<double> q);
    /// Reads a CSV with header `t,q`.
    static QKernel from_table_file(const std::filesystem::path& path);

    double operator()(double t) const noexcept;

    bool is_constant() const noexcept { return std::holds_alternative<Constant>(form_); }
    /// q0 of a constant kernel; InvalidArgument for other families.
    double constant_value() const;

    const std::variant<Constant, Exponential, Tabulated>& form() const noexcept { return form_; }

    /// Kernel spec string (`const:..`, `exp:..`, `table:..`).
    const std::string& description() const noexcept { return description_; }

private:
    QKernel(std::variant<Constant, Exponential, Tabulated> form, std::string description)
        : form_(std::move(form)), description_(std::move(description)) {}

    std::variant<Constant, Exponential, Tabulated> form_;
    std::string description_;
};

/// Parses `const:<q0>`, `exp:<q0>,<lambda>` or `table:<path>`.
QKernel parse_kernel(std::string_view spec);

inline double eval(const QKernel& q, double t) noexcept { return q(t); }

/// Uniform partition of [0, horizon) into `cells` cells of width delta().
/// Cell c (0-based) covers [c*delta, (c+1)*delta).
struct Grid {
    int cells = 1;
    double horizon = 1.0;

    double delta() const noexcept { return horizon / cells; }
    /// InvalidArgument unless cells >= 1 and horizon > 0.
    void validate() const;
};

/// Half-open range of 0-based cell indices [first, last).
struct CellRange {
    long first;
    long last;
    long size() const noexcept { return last - first; }
};

/// Cells covered by iv on the lattice delta*Z. Throws AlignmentError unless
/// both endpoints are integer multiples of delta within 1e-9 cells.
CellRange aligned_cells(const Interval& iv, double delta);

/// Tensor Gauss-Legendre with the given number of nodes per dimension.
struct Gauss {
    int order = 24;
};

using QuadMode = std::variant<Grid, Gauss>;

/// N x N Toeplitz matrix q((i-j) T/N).
Eigen::MatrixXd sample_grid(const QKernel& q, int N, double T);

/// ∫_I ∫_J q(s - t) ds dt.
///
/// Grid mode sums delta^2 q((i-j) delta) over the cells of I and J (both must
/// be aligned to the grid lattice); this is the value the discretized Fock
/// space produces. Gauss mode is continuum-accurate.
double double_integral(const QKernel& q, const Interval& I, const Interval& J, const QuadMode& mode);

} // namespace qlevy
