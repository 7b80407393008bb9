#include "qlevy/fock.hpp"

#include "qlevy/errors.hpp"

#include <cmath>
#include <string>

namespace qlevy {

FockVector FockVector::vacuum(int depth) {
    FockVector v(depth);
    v.amps_.emplace(FockTuple{}, 1.0);
    return v;
}

double FockVector::amplitude(const FockTuple& t) const {
    const auto it = amps_.find(t);
    return it == amps_.end() ? 0.0 : it->second;
}

void FockVector::accumulate(const FockTuple& t, double c) {
    if (c == 0.0 || static_cast<int>(t.size()) > depth_) return;
    auto [it, inserted] = amps_.try_emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) amps_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& other) {
    for (const auto& [t, c] : other.amps_) accumulate(t, c);
    return *this;
}

FockVector FockVector::scaled(double c) const {
    FockVector out(depth_);
    if (c == 0.0) return out;
    for (const auto& [t, a] : amps_) out.amps_.emplace(t, a * c);
    return out;
}

ProcessSpec::ProcessSpec(QKernel kernel, Grid grid, double drift)
    : kernel_(std::move(kernel)), grid_(grid), drift_(drift) {
    grid_.validate();
    if (!std::isfinite(drift_)) throw InvalidArgument("drift must be finite");
    qrow_.resize(static_cast<std::size_t>(grid_.cells));
    for (int d = 0; d < grid_.cells; ++d) qrow_[static_cast<std::size_t>(d)] = kernel_(d * grid_.delta());
}

std::pair<int, int> ProcessSpec::cells_of(const Interval& I) const {
    const auto range = aligned_cells(I, delta());
    if (range.first < 0 || range.last > grid_.cells) {
        throw AlignmentError("interval " + to_string(I) + " leaves the grid horizon [0," +
                             std::to_string(grid_.horizon) + ")");
    }
    return {static_cast<int>(range.first) + 1, static_cast<int>(range.last)};
}

namespace {

void check_cell(const ProcessSpec& spec, int i) {
    if (i < 1 || i > spec.grid().cells) {
        throw DomainError("cell " + std::to_string(i) + " outside 1.." + std::to_string(spec.grid().cells));
    }
}

// Annihilation of every cell in [first, last] on one basis tuple.
void annihilate_range(const ProcessSpec& spec, int first, int last, const FockTuple& t, double amp, FockVector& out) {
    const double delta = spec.delta();
    FockTuple reduced;
    for (std::size_t r = 0; r < t.size(); ++r) {
        const int cell = t[r];
        if (cell < first || cell > last) continue;
        double coeff = amp * delta;
        for (std::size_t l = 0; l < r; ++l) coeff *= spec.q(cell, t[l]);
        reduced.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(r));
        reduced.insert(reduced.end(), t.begin() + static_cast<std::ptrdiff_t>(r) + 1, t.end());
        out.accumulate(reduced, coeff);
    }
}

void create_range(int first, int last, const FockTuple& t, double amp, FockVector& out) {
    if (static_cast<int>(t.size()) + 1 > out.depth()) return;
    FockTuple grown(t.size() + 1);
    std::copy(t.begin(), t.end(), grown.begin() + 1);
    for (int c = first; c <= last; ++c) {
        grown[0] = c;
        out.accumulate(grown, amp);
    }
}

FockVector field_on(const ProcessSpec& spec, int first, int last, double length, const FockVector& v) {
    FockVector out(v.depth());
    const double drift_term = spec.drift() * length;
    for (const auto& [t, amp] : v.amplitudes()) {
        create_range(first, last, t, amp, out);
        annihilate_range(spec, first, last, t, amp, out);
        if (drift_term != 0.0) out.accumulate(t, drift_term * amp);
    }
    return out;
}

int default_depth(std::size_t n) { return static_cast<int>((n + 1) / 2); }

} // namespace

FockVector apply_creation(const ProcessSpec& spec, int i, const FockVector& v) {
    check_cell(spec, i);
    FockVector out(v.depth());
    for (const auto& [t, amp] : v.amplitudes()) create_range(i, i, t, amp, out);
    return out;
}

FockVector apply_annihilation(const ProcessSpec& spec, int i, const FockVector& v) {
    check_cell(spec, i);
    FockVector out(v.depth());
    for (const auto& [t, amp] : v.amplitudes()) annihilate_range(spec, i, i, t, amp, out);
    return out;
}

FockVector apply_field(const ProcessSpec& spec, const Interval& I, const FockVector& v) {
    const auto [first, last] = spec.cells_of(I);
    return field_on(spec, first, last, I.length(), v);
}

double mixed_vacuum_moment(const ProcessSpec& spec, std::span<const Interval> word, std::optional<int> depth) {
    if (word.empty()) throw InvalidArgument("moment word must contain at least one interval");
    const int needed = default_depth(word.size());
    const int cap = depth.value_or(needed);
    if (cap < needed) {
        throw DepthError("depth cap " + std::to_string(cap) + " is below ceil(n/2) = " + std::to_string(needed));
    }
    std::vector<std::pair<int, int>> cells;
    cells.reserve(word.size());
    for (const auto& I : word) cells.push_back(spec.cells_of(I));

    FockVector v = FockVector::vacuum(cap);
    const std::size_t n = word.size();
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t pos = n - 1 - step;
        v = field_on(spec, cells[pos].first, cells[pos].second, word[pos].length(), v);
        // A level-l tuple needs l more annihilations to reach the vacuum;
        // drop the ones that cannot make it in the remaining steps.
        const std::size_t remaining = pos;
        FockVector trimmed(cap);
        for (const auto& [t, amp] : v.amplitudes()) {
            if (t.size() <= remaining) trimmed.accumulate(t, amp);
        }
        v = std::move(trimmed);
    }
    return v.vacuum_coefficient();
}

double vacuum_moment(const ProcessSpec& spec, const Interval& I, int n, std::optional<int> depth) {
    if (n < 1) throw InvalidArgument("moment order must be >= 1");
    const std::vector<Interval> word(static_cast<std::size_t>(n), I);
    return mixed_vacuum_moment(spec, word, depth);
}

} // namespace qlevy
