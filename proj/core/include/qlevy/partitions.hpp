#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qlevy {

/// Cost guards for the exact enumerators.
struct EnumerationLimits {
    int max_pairing_points = 14; ///< largest n accepted by enumerate_pair_partitions
    int max_order_length = 8;    ///< largest n accepted by enumerate_order_classes
};

/// A perfect pairing of {1, ..., 2k}. Pairs are stored with a < b and sorted
/// by first element, so structurally equal pairings compare equal.
class PairPartition {
public:
    using Pair = std::pair<int, int>;

    PairPartition() = default;

    /// Normalizes orientation and order; throws InvalidArgument unless the
    /// pairs cover {1, ..., 2k} exactly once.
    static PairPartition from_pairs(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    std::size_t blocks() const noexcept { return pairs_.size(); }
    std::size_t points() const noexcept { return 2 * pairs_.size(); }

    friend bool operator==(const PairPartition&, const PairPartition&) = default;
    friend auto operator<=>(const PairPartition&, const PairPartition&) = default;

private:
    explicit PairPartition(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {}
    std::vector<Pair> pairs_;

    friend std::vector<PairPartition> enumerate_pair_partitions(int, const EnumerationLimits&);
};

std::ostream& operator<<(std::ostream& os, const PairPartition& p);

/// All perfect pairings of {1..n} in lexicographic order of their sorted pair
/// lists. Odd n yields an empty list. Throws InvalidArgument for n < 1 and
/// SizeLimitError above limits.max_pairing_points.
std::vector<PairPartition> enumerate_pair_partitions(int n, const EnumerationLimits& limits = {});

/// Number of pairs of pairs (a,b), (c,d) with a < c < b < d.
int crossings(const PairPartition& p);

/// Number of pairings of {1..2k} with each crossing number, indexed by
/// crossing count. Sums to (2k-1)!!.
std::vector<std::uint64_t> crossing_distribution(int n, const EnumerationLimits& limits = {});

/// Canonical representative of an order-equivalence class of index tuples
/// (an ordered set partition). Values are rank-compressed to {1..k}.
class OrderClass {
public:
    /// Wraps an already-canonical word; throws InvalidArgument otherwise.
    static OrderClass from_canonical(std::vector<int> rep);

    const std::vector<int>& rep() const noexcept { return rep_; }
    /// Number of blocks |σ|.
    int blocks() const noexcept { return blocks_; }
    /// Word length n.
    int length() const noexcept { return static_cast<int>(rep_.size()); }

    /// Positions (1-based) of each block, blocks ordered by value.
    std::vector<std::vector<int>> block_positions() const;

    friend bool operator==(const OrderClass&, const OrderClass&) = default;
    friend auto operator<=>(const OrderClass&, const OrderClass&) = default;

private:
    OrderClass(std::vector<int> rep, int blocks) : rep_(std::move(rep)), blocks_(blocks) {}
    std::vector<int> rep_;
    int blocks_ = 0;

    friend OrderClass class_of(std::span<const int> word);
    friend std::vector<OrderClass> enumerate_order_classes(int, const EnumerationLimits&);
};

std::ostream& operator<<(std::ostream& os, const OrderClass& s);

/// Every class of O(n), lexicographic in the canonical representative.
/// Throws SizeLimitError unless 1 <= n <= limits.max_order_length.
std::vector<OrderClass> enumerate_order_classes(int n, const EnumerationLimits& limits = {});

/// Rank compression: the canonical representative order-equivalent to word.
/// Throws InvalidArgument on an empty word or non-positive entries.
OrderClass class_of(std::span<const int> word);

inline OrderClass class_of(std::initializer_list<int> word) {
    return class_of(std::span<const int>(word.begin(), word.size()));
}

/// #{ i : {1..n} -> {1..N} in σ } = binomial(N, |σ|). Throws SizeLimitError
/// if the count does not fit in 64 bits.
std::uint64_t count_in_class(const OrderClass& s, std::uint64_t N);

using Rational = boost::rational<std::int64_t>;

/// The limit-theorem constant 1/|σ|!.
Rational alpha(const OrderClass& s);

/// The pairing of positions induced by σ when every block has exactly two
/// elements; std::nullopt otherwise.
std::optional<PairPartition> pairing_of(const OrderClass& s);

} // namespace qlevy
