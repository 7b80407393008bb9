#include "qlevy/quadrature.hpp"

#include "qlevy/errors.hpp"
#include "qlevy/summation.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace qlevy::quad {

namespace {

constexpr int kMaxGaussOrder = 256;

Rule build_rule(int order) {
    Rule rule;
    const auto zeros = boost::math::legendre_p_zeros<double>(order);
    // zeros holds the non-negative roots in increasing order.
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
        if (*it != 0.0) rule.nodes.push_back(-*it);
    }
    for (double z : zeros) rule.nodes.push_back(z);
    for (double x : rule.nodes) {
        const double dp = boost::math::legendre_p_prime(order, x);
        rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    return rule;
}

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

// One connected block of coupled variables, re-indexed from zero.
struct Component {
    std::vector<Interval> domains;
    std::vector<Coupling> couplings;
};

double product_of_factors(const QKernel& q, const std::vector<Coupling>& couplings, const std::vector<double>& x) {
    double p = 1.0;
    for (const auto& c : couplings) p *= q(x[c.a] - x[c.b]);
    return p;
}

// ---- grid mode -------------------------------------------------------------

double grid_component(const QKernel& q, const Component& comp, const Grid& grid) {
    const double delta = grid.delta();
    const std::size_t m = comp.domains.size();
    std::vector<CellRange> cells;
    cells.reserve(m);
    for (const auto& d : comp.domains) cells.push_back(aligned_cells(d, delta));

    long max_offset = 0;
    for (const auto& c : comp.couplings) {
        const long span = std::max(cells[c.a].last - 1 - cells[c.b].first, cells[c.b].last - 1 - cells[c.a].first);
        max_offset = std::max(max_offset, span);
    }
    std::vector<double> table(static_cast<std::size_t>(max_offset) + 1);
    for (long d = 0; d <= max_offset; ++d) table[static_cast<std::size_t>(d)] = q(static_cast<double>(d) * delta);

    // Couplings grouped by their later variable so partial products can be
    // extended one variable at a time.
    std::vector<std::vector<std::size_t>> earlier(m);
    for (const auto& c : comp.couplings) {
        const auto hi = std::max(c.a, c.b);
        const auto lo = std::min(c.a, c.b);
        earlier[hi].push_back(lo);
    }

    std::vector<long> idx(m, 0);
    CompensatedSum sum;
    auto recurse = [&](auto&& self, std::size_t v, double partial) -> void {
        if (v == m) {
            sum.add(partial);
            return;
        }
        for (long c = cells[v].first; c < cells[v].last; ++c) {
            idx[v] = c;
            double p = partial;
            for (auto u : earlier[v]) p *= table[static_cast<std::size_t>(std::labs(c - idx[u]))];
            self(self, v + 1, p);
        }
    };
    recurse(recurse, 0, 1.0);
    return sum.value() * std::pow(delta, static_cast<double>(m));
}

// ---- gauss mode ------------------------------------------------------------

struct Step {
    std::size_t var;
    std::ptrdiff_t lower_from; // variable supplying the lower limit, or -1
    double lo;
    double hi;
};

double nested(const QKernel& q, const Component& comp, const Rule& rule, const std::vector<Step>& steps,
              std::size_t s, std::vector<double>& x) {
    if (s == steps.size()) return product_of_factors(q, comp.couplings, x);
    const Step& st = steps[s];
    const double lo = st.lower_from >= 0 ? x[static_cast<std::size_t>(st.lower_from)] : st.lo;
    const double half = 0.5 * (st.hi - lo);
    if (half <= 0.0) return 0.0;
    const double mid = 0.5 * (st.hi + lo);
    CompensatedSum acc;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        x[st.var] = mid + half * rule.nodes[g];
        acc.add(rule.weights[g] * nested(q, comp, rule, steps, s + 1, x));
    }
    return half * acc.value();
}

double gauss_component(const QKernel& q, const Component& comp, int order) {
    const Rule& rule = gauss_legendre(order);
    const std::size_t m = comp.domains.size();

    std::vector<double> bp;
    for (const auto& d : comp.domains) {
        bp.push_back(d.lo());
        bp.push_back(d.hi());
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    // Panel p is [bp[p], bp[p+1]); each domain is a contiguous run of panels.
    std::vector<std::size_t> first_panel(m), end_panel(m);
    for (std::size_t v = 0; v < m; ++v) {
        first_panel[v] = static_cast<std::size_t>(std::lower_bound(bp.begin(), bp.end(), comp.domains[v].lo()) - bp.begin());
        end_panel[v] = static_cast<std::size_t>(std::lower_bound(bp.begin(), bp.end(), comp.domains[v].hi()) - bp.begin());
    }

    std::vector<std::size_t> choice(first_panel);
    std::vector<double> x(m, 0.0);
    CompensatedSum total;
    while (true) {
        // Variables sorted by panel; runs sharing a panel form a group.
        std::vector<std::size_t> vars(m);
        std::iota(vars.begin(), vars.end(), std::size_t{0});
        std::stable_sort(vars.begin(), vars.end(), [&](auto a, auto b) { return choice[a] < choice[b]; });
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == 0 || choice[vars[i]] != choice[vars[i - 1]]) groups.emplace_back();
            groups.back().push_back(vars[i]);
        }

        std::vector<Step> steps;
        auto over_orderings = [&](auto&& self, std::size_t g) -> void {
            if (g == groups.size()) {
                total.add(nested(q, comp, rule, steps, 0, x));
                return;
            }
            auto members = groups[g];
            const double lo = bp[choice[members.front()]];
            const double hi = bp[choice[members.front()] + 1];
            do {
                const auto mark = steps.size();
                for (std::size_t i = 0; i < members.size(); ++i) {
                    steps.push_back(Step{members[i], i == 0 ? -1 : static_cast<std::ptrdiff_t>(members[i - 1]), lo, hi});
                }
                self(self, g + 1);
                steps.resize(mark);
            } while (std::next_permutation(members.begin(), members.end()));
        };
        over_orderings(over_orderings, 0);

        std::size_t v = 0;
        while (v < m && ++choice[v] == end_panel[v]) {
            choice[v] = first_panel[v];
            ++v;
        }
        if (v == m) break;
    }
    return total.value();
}

} // namespace

const Rule& gauss_legendre(int order) {
    if (order < 1 || order > kMaxGaussOrder) {
        throw InvalidArgument("Gauss-Legendre order must be in [1, " + std::to_string(kMaxGaussOrder) + "]");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<Rule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<Rule>(build_rule(order));
    return *slot;
}

double integrate_coupled(const QKernel& q, std::span<const Interval> domains, std::span<const Coupling> couplings,
                         const QuadMode& mode) {
    const std::size_t k = domains.size();
    for (const auto& c : couplings) {
        if (c.a >= k || c.b >= k || c.a == c.b) throw InvalidArgument("coupling refers to an invalid variable");
    }
    if (const auto* grid = std::get_if<Grid>(&mode)) grid->validate();
    if (const auto* gauss = std::get_if<Gauss>(&mode)) (void)gauss_legendre(gauss->order);

    UnionFind uf(k);
    for (const auto& c : couplings) uf.unite(c.a, c.b);

    // Components keyed by root, listed in order of their smallest variable.
    std::map<std::size_t, std::size_t> slot_of_root;
    std::vector<Component> comps;
    std::vector<std::size_t> local(k);
    std::vector<std::size_t> comp_of(k);
    for (std::size_t v = 0; v < k; ++v) {
        const auto root = uf.find(v);
        auto [it, inserted] = slot_of_root.try_emplace(root, comps.size());
        if (inserted) comps.emplace_back();
        comp_of[v] = it->second;
        local[v] = comps[it->second].domains.size();
        comps[it->second].domains.push_back(domains[v]);
    }
    for (const auto& c : couplings) {
        comps[comp_of[c.a]].couplings.push_back(Coupling{local[c.a], local[c.b]});
    }

    double result = 1.0;
    for (const auto& comp : comps) {
        double value = 0.0;
        if (const auto* grid = std::get_if<Grid>(&mode)) {
            if (comp.couplings.empty()) {
                value = static_cast<double>(aligned_cells(comp.domains.front(), grid->delta()).size()) * grid->delta();
            } else {
                value = grid_component(q, comp, *grid);
            }
        } else {
            value = comp.couplings.empty() ? comp.domains.front().length()
                                           : gauss_component(q, comp, std::get<Gauss>(mode).order);
        }
        result *= value;
    }
    return result;
}

} // namespace qlevy::quad
