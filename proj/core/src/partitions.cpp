#include "qlevy/partitions.hpp"

#include "qlevy/errors.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

namespace qlevy {

PairPartition PairPartition::from_pairs(std::vector<Pair> pairs) {
    for (auto& [a, b] : pairs) {
        if (a > b) std::swap(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    const int n = static_cast<int>(2 * pairs.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (const auto& [a, b] : pairs) {
        if (a < 1 || b > n || a == b || seen[a] || seen[b]) {
            throw InvalidArgument("pairs do not cover {1.." + std::to_string(n) + "} exactly once");
        }
        seen[a] = seen[b] = true;
    }
    return PairPartition(std::move(pairs));
}

std::ostream& operator<<(std::ostream& os, const PairPartition& p) {
    os << '{';
    for (std::size_t i = 0; i < p.pairs().size(); ++i) {
        if (i) os << ',';
        os << '(' << p.pairs()[i].first << ',' << p.pairs()[i].second << ')';
    }
    return os << '}';
}

namespace {

void check_pairing_size(int n, const EnumerationLimits& limits) {
    if (n < 1) throw InvalidArgument("pairing enumeration needs n >= 1");
    if (n > limits.max_pairing_points) {
        throw SizeLimitError("pair partitions of " + std::to_string(n) + " points exceed the guard of " +
                             std::to_string(limits.max_pairing_points));
    }
}

// Pairs the smallest free point with each larger free point in increasing
// order, which yields the pair lists in lexicographic order.
template <typename Visit>
void visit_pairings(std::vector<bool>& used, std::vector<PairPartition::Pair>& current, Visit&& visit) {
    const int n = static_cast<int>(used.size()) - 1;
    int first = 1;
    while (first <= n && used[first]) ++first;
    if (first > n) {
        visit(current);
        return;
    }
    used[first] = true;
    for (int partner = first + 1; partner <= n; ++partner) {
        if (used[partner]) continue;
        used[partner] = true;
        current.emplace_back(first, partner);
        visit_pairings(used, current, visit);
        current.pop_back();
        used[partner] = false;
    }
    used[first] = false;
}

} // namespace

std::vector<PairPartition> enumerate_pair_partitions(int n, const EnumerationLimits& limits) {
    check_pairing_size(n, limits);
    std::vector<PairPartition> out;
    if (n % 2 != 0) return out;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    std::vector<PairPartition::Pair> current;
    visit_pairings(used, current, [&](const auto& pairs) { out.push_back(PairPartition(pairs)); });
    return out;
}

int crossings(const PairPartition& p) {
    const auto& pairs = p.pairs();
    int count = 0;
    for (std::size_t x = 0; x < pairs.size(); ++x) {
        for (std::size_t y = 0; y < pairs.size(); ++y) {
            const auto [a, b] = pairs[x];
            const auto [c, d] = pairs[y];
            if (a < c && c < b && b < d) ++count;
        }
    }
    return count;
}

std::vector<std::uint64_t> crossing_distribution(int n, const EnumerationLimits& limits) {
    std::vector<std::uint64_t> dist;
    for (const auto& p : enumerate_pair_partitions(n, limits)) {
        const auto cr = static_cast<std::size_t>(crossings(p));
        if (dist.size() <= cr) dist.resize(cr + 1, 0);
        ++dist[cr];
    }
    return dist;
}

OrderClass OrderClass::from_canonical(std::vector<int> rep) {
    OrderClass s = class_of(rep);
    if (s.rep_ != rep) throw InvalidArgument("word is not a canonical order-class representative");
    return s;
}

std::vector<std::vector<int>> OrderClass::block_positions() const {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(blocks_));
    for (std::size_t pos = 0; pos < rep_.size(); ++pos) {
        blocks[static_cast<std::size_t>(rep_[pos] - 1)].push_back(static_cast<int>(pos) + 1);
    }
    return blocks;
}

std::ostream& operator<<(std::ostream& os, const OrderClass& s) {
    os << '(';
    for (std::size_t i = 0; i < s.rep().size(); ++i) {
        if (i) os << ',';
        os << s.rep()[i];
    }
    return os << ')';
}

OrderClass class_of(std::span<const int> word) {
    if (word.empty()) throw InvalidArgument("class_of: empty word");
    std::vector<int> values(word.begin(), word.end());
    if (std::any_of(values.begin(), values.end(), [](int v) { return v < 1; })) {
        throw InvalidArgument("class_of: word entries must be positive integers");
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<int> rep;
    rep.reserve(word.size());
    for (int v : word) {
        rep.push_back(static_cast<int>(std::lower_bound(values.begin(), values.end(), v) - values.begin()) + 1);
    }
    return OrderClass(std::move(rep), static_cast<int>(values.size()));
}

std::vector<OrderClass> enumerate_order_classes(int n, const EnumerationLimits& limits) {
    if (n < 1 || n > limits.max_order_length) {
        throw SizeLimitError("order classes need 1 <= n <= " + std::to_string(limits.max_order_length) +
                             ", got " + std::to_string(n));
    }
    std::vector<OrderClass> out;
    std::vector<int> word(static_cast<std::size_t>(n), 0);
    std::vector<int> uses(static_cast<std::size_t>(n) + 2, 0);

    // Depth-first over words in lexicographic order; a word is canonical iff
    // its value set is {1..max}. Prune once the gaps below the current max
    // can no longer be filled by the remaining positions.
    auto recurse = [&](auto&& self, int pos, int max_value, int distinct) -> void {
        const int gaps = max_value - distinct;
        if (gaps > n - pos) return;
        if (pos == n) {
            if (gaps == 0) out.push_back(OrderClass(word, max_value));
            return;
        }
        for (int v = 1; v <= n; ++v) {
            word[pos] = v;
            const bool fresh = uses[v]++ == 0;
            self(self, pos + 1, std::max(max_value, v), distinct + (fresh ? 1 : 0));
            --uses[v];
        }
    };
    recurse(recurse, 0, 0, 0);
    return out;
}

std::uint64_t count_in_class(const OrderClass& s, std::uint64_t N) {
    const auto k = static_cast<std::uint64_t>(s.blocks());
    if (N < k) return 0;
    // Multiplicative binomial; each partial product is itself a binomial, and
    // dividing out gcd(acc, i) first keeps the division exact.
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t g = std::gcd(acc, i);
        acc /= g;
        const std::uint64_t factor = (N - k + i) / (i / g);
        if (__builtin_mul_overflow(acc, factor, &acc)) {
            throw SizeLimitError("count_in_class overflows 64 bits");
        }
    }
    return acc;
}

Rational alpha(const OrderClass& s) {
    std::int64_t factorial = 1;
    for (int i = 2; i <= s.blocks(); ++i) factorial *= i;
    return Rational(1, factorial);
}

std::optional<PairPartition> pairing_of(const OrderClass& s) {
    std::vector<PairPartition::Pair> pairs;
    for (const auto& block : s.block_positions()) {
        if (block.size() != 2) return std::nullopt;
        pairs.emplace_back(block[0], block[1]);
    }
    return PairPartition::from_pairs(std::move(pairs));
}

} // namespace qlevy
