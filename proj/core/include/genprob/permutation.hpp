#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genprob/exact.hpp"
#include "genprob/rng.hpp"

namespace genprob {

using Point = std::uint32_t;

class CycleType;

/// A bijection on {0, ..., n-1}; image(i) is where i goes.
class Permutation {
public:
    Permutation() = default;

    /// Throws DomainError unless `images` is a bijection on {0..n-1}.
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t n);

    /// Builds a permutation on n points from disjoint cycles, e.g. {{0,1},{2,3}}.
    static Permutation from_cycles(std::size_t n, std::initializer_list<std::initializer_list<Point>> cycles);
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles);

    std::size_t degree() const noexcept { return images_.size(); }
    Point operator()(Point i) const { return images_[i]; }
    std::span<const Point> images() const noexcept { return images_; }

    bool is_identity() const noexcept;
    Permutation inverse() const;

    /// Disjoint cycles of length >= 2, each starting at its smallest point.
    std::vector<std::vector<Point>> cycles() const;

    std::string to_string() const;  // cycle notation, "()" for identity

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    struct Unchecked {};
    Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}
    friend Permutation compose(const Permutation&, const Permutation&);
    friend Permutation fill_skeleton(const CycleType&, std::span<const Point>);

    std::vector<Point> images_;
};

/// Conjugacy-class descriptor of S_n: counts[i] = number of i-cycles.
class CycleType {
public:
    CycleType() = default;

    /// Zero counts are dropped. Throws DomainError on a zero cycle length.
    explicit CycleType(std::map<std::size_t, std::uint64_t> counts);
    CycleType(std::initializer_list<std::pair<const std::size_t, std::uint64_t>> counts)
        : CycleType(std::map<std::size_t, std::uint64_t>(counts)) {}

    /// Parses whitespace-separated `i^c` factors ("1^2 2^3 5^1"). Rejects duplicate
    /// bases, and a degree mismatch when `expected_degree` is given.
    static CycleType parse(std::string_view text, std::optional<std::size_t> expected_degree = {});

    std::size_t degree() const noexcept { return degree_; }
    std::uint64_t count(std::size_t length) const;
    const std::map<std::size_t, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t cycle_count() const noexcept;

    /// Elements of this class are even permutations.
    bool is_even() const noexcept { return (degree_ - cycle_count()) % 2 == 0; }

    /// True when every cycle length is in {1, 2}.
    bool supported_on_one_two() const noexcept;

    std::string to_string() const;  // `i^c` format; "" for degree 0

    friend bool operator==(const CycleType&, const CycleType&) = default;
    friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
    std::map<std::size_t, std::uint64_t> counts_;
    std::size_t degree_ = 0;
};

struct OrbitPartition {
    std::vector<std::vector<Point>> blocks;  // each sorted, ordered by smallest point
    std::map<std::size_t, std::size_t> size_histogram;  // orbit size k -> N_k

    std::size_t degree() const noexcept;
    std::size_t count_of_size(std::size_t k) const;
    /// N = sum of N_k over k <= n/2; zero exactly when the group is transitive.
    std::size_t short_orbit_total() const noexcept;
};

enum class Parity { even, odd };

/// result(i) = p(q(i)). Throws DegreeMismatch.
Permutation compose(const Permutation& p, const Permutation& q);

CycleType cycle_type(const Permutation& p);
Parity parity(const Permutation& p);

/// Number of permutations with the given cycle type: n! / prod(i^c_i c_i!).
BigInt class_size(const CycleType& ct);

/// Uniform element of the conjugacy class `ct`: a uniform shuffle of the points
/// written into the cycle skeleton ordered by increasing cycle length.
Permutation sample_with_cycle_type(const CycleType& ct, Rng& rng);

/// Writes points[0..n) into the canonical skeleton of `ct`; the arrangement
/// `points` = 0..n-1 gives the canonical class representative.
Permutation fill_skeleton(const CycleType& ct, std::span<const Point> points);

/// Orbits of the group generated by `gens` on `degree` points. Throws DegreeMismatch.
OrbitPartition orbits(std::span<const Permutation> gens, std::size_t degree);

/// Disjoint-set forest over points; the workhorse behind orbit computations.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    Point find(Point x);
    /// Returns true when x and y were in different sets.
    bool unite(Point x, Point y);
    std::size_t set_count() const noexcept { return sets_; }

private:
    std::vector<Point> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t sets_;
};

}  // namespace genprob
