#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "genprob/exact.hpp"
#include "genprob/permutation.hpp"

namespace genprob {

/// One term of the orbit-count sum: cycle types d, d' of an invariant k-set.
struct SolutionPair {
    CycleType d;
    CycleType d_prime;
    std::size_t k = 0;

    friend bool operator==(const SolutionPair&, const SolutionPair&) = default;
};

/// All (d, d') with sum i*d_i = sum i*d'_i = k, d_i <= c_i, d'_i <= c'_i.
/// Ordered lexicographically decreasing in (d_1, d_2, ...), then in d'.
std::vector<SolutionPair> enumerate_solutions(std::size_t k, const CycleType& c, const CycleType& c_prime);

/// Probability that uniform tau of type d and tau' of type d' (both in S_k)
/// generate a transitive group, by enumerating every arrangement of tau'
/// against the canonical tau. No caching, no cap.
Rational brute_force_pair_probability(const CycleType& d, const CycleType& d_prime);

/// Memoized table of transitive-pair probabilities up to degree `cap`.
///
/// Many readers, one writer per key: values are computed outside the lock and
/// published atomically; a racing duplicate computation yields the same value.
class PTable {
public:
    static constexpr std::size_t default_cap = 9;
    static constexpr const char* file_header = "# genprob p-table v1";

    explicit PTable(std::size_t cap = default_cap) : cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }
    std::size_t size() const;

    /// Throws CapacityError when d.degree() exceeds the cap.
    Rational probability(const CycleType& d, const CycleType& d_prime);
    std::optional<Rational> lookup(const CycleType& d, const CycleType& d_prime) const;

    /// Lines `k; d-spec; d'-spec; num/den` after a version header.
    /// Returns false when the file does not exist; throws ParseError on bad content.
    bool load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    /// Process-wide table used when no table is passed explicitly.
    static PTable& global();

private:
    using Key = std::pair<std::string, std::string>;
    std::size_t cap_;
    mutable std::shared_mutex mutex_;
    std::map<Key, Rational> entries_;
};

Rational transitive_pair_probability(const CycleType& d, const CycleType& d_prime, PTable& table = PTable::global());

enum class ClosedFormVariant {
    odd,                // p(1, m; 1, m), k = 2m + 1
    even_fixed_points,  // p(2, m-1; 0, m), k = 2m
    even_plain,         // p(0, m; 0, m), k = 2m
};

Rational closed_form_p(ClosedFormVariant variant, std::uint64_t m);

/// p(d; d') from the table when k <= cap, otherwise from the closed forms when
/// both types use only 1- and 2-cycles. Throws CapacityError if neither applies.
Rational pair_probability(const CycleType& d, const CycleType& d_prime, PTable& table = PTable::global());

/// E N_k split into terms without cycles of length >= 3 (sigma1) and the rest.
struct OrbitCountTerms {
    Rational total;
    Rational sigma1;
    Rational sigma2;
};

OrbitCountTerms expected_orbit_count_terms(std::size_t n, const CycleType& c, const CycleType& c_prime,
                                           std::size_t k, PTable& table = PTable::global());

/// Exact expected number of orbits of size k of <pi, pi'>, pi uniform in class c,
/// pi' uniform in class c'. Requires 1 <= k <= n/2.
Rational expected_orbit_count(std::size_t n, const CycleType& c, const CycleType& c_prime, std::size_t k,
                              PTable& table = PTable::global());

/// Sum of expected_orbit_count over 1 <= k <= kmax; kmax = n/2 gives E N exactly.
Rational expected_orbit_total(std::size_t n, const CycleType& c, const CycleType& c_prime, std::size_t kmax,
                              PTable& table = PTable::global());

}  // namespace genprob
