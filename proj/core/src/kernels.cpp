#include "qlevy/kernels.hpp"

#include "qlevy/errors.hpp"
#include "qlevy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qlevy {

namespace {

std::string shortest(double x) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), end);
}

double parse_number(std::string_view text, std::string_view what) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
        throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
}

void check_amplitude(double q0) {
    if (!(std::fabs(q0) <= 1.0)) throw InvalidArgument("kernel amplitude must satisfy |q0| <= 1, got " + shortest(q0));
}

} // namespace

QKernel QKernel::constant(double q0) {
    check_amplitude(q0);
    return QKernel(Constant{q0}, "const:" + shortest(q0));
}

QKernel QKernel::exponential(double q0, double lambda) {
    check_amplitude(q0);
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("exponential kernel needs finite lambda >= 0, got " + shortest(lambda));
    }
    return QKernel(Exponential{q0, lambda}, "exp:" + shortest(q0) + "," + shortest(lambda));
}

QKernel QKernel::tabulated(std::vector<double> t, std::vector<double> q) {
    if (t.empty() || t.size() != q.size()) throw InvalidArgument("tabulated kernel needs matching non-empty t and q");
    if (!(t.front() >= 0.0)) throw InvalidArgument("tabulated kernel samples must start at t >= 0");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i])) throw InvalidArgument("tabulated kernel has a non-finite t");
        if (i > 0 && !(t[i] > t[i - 1])) throw InvalidArgument("tabulated kernel t must be strictly increasing");
        check_amplitude(q[i]);
    }
    return QKernel(Tabulated{std::move(t), std::move(q)}, "table:<inline>");
}

QKernel QKernel::from_table_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open kernel table '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("kernel table '" + path.string() + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,q") throw InvalidArgument("kernel table header must be exactly 't,q'");
    std::vector<double> t;
    std::vector<double> q;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InvalidArgument("kernel table row without comma: '" + line + "'");
        t.push_back(parse_number(std::string_view(line).substr(0, comma), "t"));
        q.push_back(parse_number(std::string_view(line).substr(comma + 1), "q"));
    }
    QKernel k = tabulated(std::move(t), std::move(q));
    k.description_ = "table:" + path.string();
    return k;
}

double QKernel::operator()(double t) const noexcept {
    const double a = std::fabs(t);
    return std::visit(
        [a](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Constant>) {
                return f.q0;
            } else if constexpr (std::is_same_v<F, Exponential>) {
                return f.q0 * std::exp(-f.lambda * a);
            } else {
                if (a <= f.t.front()) return f.q.front();
                if (a >= f.t.back()) return f.q.back();
                const auto hi = static_cast<std::size_t>(std::upper_bound(f.t.begin(), f.t.end(), a) - f.t.begin());
                const std::size_t lo = hi - 1;
                const double w = (a - f.t[lo]) / (f.t[hi] - f.t[lo]);
                return std::clamp(f.q[lo] + w * (f.q[hi] - f.q[lo]), -1.0, 1.0);
            }
        },
        form_);
}

double QKernel::constant_value() const {
    if (const auto* c = std::get_if<Constant>(&form_)) return c->q0;
    throw InvalidArgument("kernel " + description_ + " is not constant");
}

QKernel parse_kernel(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw InvalidArgument("kernel spec '" + std::string(spec) + "' must look like const:<q0>, exp:<q0>,<lambda> or table:<path>");
    }
    const auto family = spec.substr(0, colon);
    const auto args = spec.substr(colon + 1);
    if (family == "const") {
        QKernel k = QKernel::constant(parse_number(args, "q0"));
        return k;
    }
    if (family == "exp") {
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) throw InvalidArgument("exp kernel needs exp:<q0>,<lambda>");
        return QKernel::exponential(parse_number(args.substr(0, comma), "q0"),
                                    parse_number(args.substr(comma + 1), "lambda"));
    }
    if (family == "table") {
        if (args.empty()) throw InvalidArgument("table kernel needs a path");
        return QKernel::from_table_file(std::filesystem::path(std::string(args)));
    }
    throw InvalidArgument("unknown kernel family '" + std::string(family) + "'");
}

void Grid::validate() const {
    if (cells < 1) throw InvalidArgument("grid needs at least one cell");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("grid horizon must be positive");
}

CellRange aligned_cells(const Interval& iv, double delta) {
    constexpr double tol = 1e-9;
    auto snap = [&](double x) {
        const double units = x / delta;
        const double rounded = std::round(units);
        if (std::fabs(units - rounded) > tol) {
            throw AlignmentError("interval " + to_string(iv) + " is not aligned to the grid of width " +
                                 shortest(delta));
        }
        return static_cast<long>(rounded);
    };
    return CellRange{snap(iv.lo()), snap(iv.hi())};
}

Eigen::MatrixXd sample_grid(const QKernel& q, int N, double T) {
    Grid{N, T}.validate();
    const double delta = T / N;
    Eigen::VectorXd row(N);
    for (int d = 0; d < N; ++d) row(d) = q(d * delta);
    Eigen::MatrixXd m(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) m(i, j) = row(std::abs(i - j));
    }
    return m;
}

double double_integral(const QKernel& q, const Interval& I, const Interval& J, const QuadMode& mode) {
    const std::array<Interval, 2> domains{I, J};
    const std::array<quad::Coupling, 1> couplings{quad::Coupling{0, 1}};
    return quad::integrate_coupled(q, domains, couplings, mode);
}

} // namespace qlevy
