#pragma once

#include "qlevy/interval.hpp"
#include "qlevy/kernels.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qlevy::quad {

/// Nodes and weights on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes. Cached; safe to call concurrently.
const Rule& gauss_legendre(int order);

/// A factor q(x_a - x_b) between two integration variables.
struct Coupling {
    std::size_t a;
    std::size_t b;
};

/// ∫_{D_1} ... ∫_{D_k} ∏_{couplings} q(x_a - x_b) dx_1 ... dx_k.
///
/// Variables that appear in no coupling are integrated out exactly as their
/// domain length; connected components of the coupling graph are integrated
/// separately and multiplied.
///
/// Grid mode: a midpoint-style sum over aligned cells with q sampled at cell
/// index offsets (the discrete Fock value). Gauss mode: composite tensor
/// Gauss-Legendre on panels cut at every domain endpoint; when several
/// variables share a panel the panel cube is split into simplices by variable
/// ordering, which places the kinks of q at x_a = x_b on simplex faces.
double integrate_coupled(const QKernel& q, std::span<const Interval> domains, std::span<const Coupling> couplings,
                         const QuadMode& mode);

} // namespace qlevy::quad
