#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "genprob/exact.hpp"
#include "genprob/permutation.hpp"
#include "genprob/rng.hpp"

namespace genprob {

/// Tail thresholds c1 >= x sqrt(n), c2 >= y sqrt(n). Both axes scale with sqrt(n).
struct PartitionTail {
    double x = 0.0;
    double y = 0.0;
};

/// p(n) by Euler's pentagonal recurrence; the memo table grows on demand and is
/// shared between threads.
BigInt partition_count(std::size_t n);

/// Every partition of n as a cycle type, by direct recursive enumeration.
std::vector<CycleType> enumerate_partitions(std::size_t n);

/// (a/n) exp(2 b sqrt(n)) with a = 1/(4 sqrt 3), b = pi/sqrt 6.
double hardy_ramanujan(std::size_t n);

/// Uniform random partition of n, returned as a cycle type (part i with
/// multiplicity c_i). Part multiplicities are independent geometrics with
/// P(Z_i >= j) = q^(i j), q = exp(-b/sqrt n); Z_1 absorbs the remainder and the
/// proposal is accepted with probability q^Z_1, which conditions on total n exactly.
CycleType sample_uniform_partition(std::size_t n, Rng& rng);

/// exp(-b (x + 2y)).
double tail_probability_limit(const PartitionTail& t);

/// Fraction of `samples` uniform partitions of n whose permutations are even.
double class_parity_probability(std::size_t n, std::size_t samples, Rng& rng);

}  // namespace genprob
