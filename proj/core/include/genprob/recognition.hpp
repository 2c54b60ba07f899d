#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "genprob/exact.hpp"
#include "genprob/permutation.hpp"

namespace genprob {

enum class GroupClass { intransitive, transitive_proper, alternating, symmetric };

std::string_view to_string(GroupClass c);

struct ChainOptions {
    /// Seeded random-subproduct phase before the deterministic completion.
    /// The seed is derived from the generator images, so builds are reproducible.
    bool randomized_phase = true;
    unsigned stall_limit = 40;
    /// Stop as soon as the orbit-size product certifies |G| >= n!/2.
    bool stop_at_alternating = false;
};

/// Base and strong generating set with Schreier-vector transversals.
///
/// Invariant: each level's generators fix all earlier base points and the
/// groups they generate are nested, so the product of the fundamental orbit
/// sizes always divides |G|. When `complete()` it equals |G|.
class StabilizerChain {
public:
    explicit StabilizerChain(std::size_t degree);

    static StabilizerChain build(std::span<const Permutation> gens, std::size_t degree,
                                 const ChainOptions& options = {});

    std::size_t degree() const noexcept { return degree_; }
    std::size_t depth() const noexcept { return levels_.size(); }
    std::vector<Point> base() const;
    std::vector<std::size_t> fundamental_orbit_sizes() const;
    /// Points of level `level`'s fundamental orbit, in discovery order.
    std::span<const Point> fundamental_orbit(std::size_t level) const;

    /// Coset representative u with u(base[level]) = point, if point is in the orbit.
    std::optional<Permutation> transversal_element(std::size_t level, Point point) const;

    bool complete() const noexcept { return complete_; }

    /// Product of the orbit sizes: |G| when complete, a divisor of |G| otherwise.
    BigInt order() const;

    /// True when the orbit-size product already shows [S_n : G] <= 2.
    bool certifies_alternating() const;

    /// Membership by sifting; meaningful only on a complete chain.
    bool contains(const Permutation& g) const;

private:
    struct Level {
        Point base;
        std::vector<std::uint32_t> gens;  // indices into pool_
        std::vector<Point> orbit;
        std::vector<std::int32_t> label;  // -1 outside orbit, -2 base, else pool index s with point = s(parent)
        std::vector<std::vector<char>> tested;  // [gen position][orbit position]
    };

    std::uint32_t add_to_pool(std::vector<Point> perm);
    void append_level(Point base);
    void add_generator(std::uint32_t pool_index, std::size_t first_level, std::size_t last_level);
    void extend_orbit(std::size_t level, std::uint32_t pool_index);
    /// Strips `h` in place from `start`; returns the level where it left the chain
    /// (== depth() when it sifted through every level).
    std::size_t sift(std::vector<Point>& h, std::size_t start) const;
    std::vector<Point> transversal_images(std::size_t level, Point point) const;
    void set_orbit_exponents(std::size_t old_size, std::size_t new_size);
    void randomized_phase(std::span<const Permutation> gens, const ChainOptions& options);
    void deterministic_completion(const ChainOptions& options);

    std::size_t degree_;
    std::vector<Level> levels_;
    std::vector<std::vector<Point>> pool_;
    std::vector<std::vector<Point>> pool_inverse_;
    std::vector<std::uint32_t> smallest_prime_factor_;
    std::vector<std::int64_t> index_exponents_;  // exponents of n! / (orbit-size product), by prime
    bool complete_ = false;
};

struct RecognitionOptions {
    bool fast_path = true;
    /// Largest degree for which the stabilizer chain may be built; above it only
    /// the fast path runs and an inconclusive result is reported as unknown.
    std::size_t exact_degree_limit = std::numeric_limits<std::size_t>::max();
    unsigned witness_attempts = 64;
};

enum class Verdict { no, yes, unknown };

bool is_transitive(std::span<const Permutation> gens, std::size_t degree);

/// Transitive with no block system other than the trivial ones.
bool is_primitive(std::span<const Permutation> gens, std::size_t degree);

/// Exact order of the generated group.
BigInt group_order(std::span<const Permutation> gens, std::size_t degree);

/// Whether |<gens>| >= n!/2. Intransitive and imprimitive groups are rejected
/// outright. With the fast path, a transitive group containing an element with a
/// cycle of prime length p, n/2 < p <= n-3, is accepted at once; everything else
/// is decided by the stabilizer chain.
bool contains_alternating(std::span<const Permutation> gens, std::size_t degree, bool fast_path = true);

Verdict recognize_alternating(std::span<const Permutation> gens, std::size_t degree,
                              const RecognitionOptions& options = {});

/// Throws DegenerateDegree for degree < 3 and CapacityError when the budget in
/// `options` leaves the A_n question undecided.
GroupClass classify(std::span<const Permutation> gens, std::size_t degree,
                    const RecognitionOptions& options = {});

/// Looks for an element with a prime-length cycle in (n/2, n-3] among the
/// generators and a deterministic sequence of words in them.
bool find_prime_cycle_witness(std::span<const Permutation> gens, std::size_t degree, unsigned attempts);

}  // namespace genprob
