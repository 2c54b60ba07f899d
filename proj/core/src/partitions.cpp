#include "genprob/partitions.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "genprob/asymptotics.hpp"
#include "genprob/errors.hpp"

namespace genprob {

BigInt partition_count(std::size_t n) {
    static std::mutex mutex;
    static std::vector<BigInt> table{1};
    std::lock_guard lock(mutex);
    while (table.size() <= n) {
        const std::size_t m = table.size();
        BigInt value = 0;
        for (std::size_t j = 1;; ++j) {
            const std::size_t g1 = j * (3 * j - 1) / 2;
            if (g1 > m) break;
            const std::size_t g2 = j * (3 * j + 1) / 2;
            BigInt pair = table[m - g1];
            if (g2 <= m) pair += table[m - g2];
            if (j % 2 == 1) value += pair;
            else value -= pair;
        }
        table.push_back(std::move(value));
    }
    return table[n];
}

namespace {

void partitions_from(std::size_t remaining, std::size_t largest, std::map<std::size_t, std::uint64_t>& current,
                     std::vector<CycleType>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    for (std::size_t part = std::min(largest, remaining); part >= 1; --part) {
        ++current[part];
        partitions_from(remaining - part, part, current, out);
        if (--current[part] == 0) current.erase(part);
    }
}

}  // namespace

std::vector<CycleType> enumerate_partitions(std::size_t n) {
    std::vector<CycleType> out;
    std::map<std::size_t, std::uint64_t> current;
    partitions_from(n, n, current, out);
    return out;
}

double hardy_ramanujan(std::size_t n) {
    if (n == 0) throw DomainError("hardy_ramanujan: n must be at least 1");
    const double dn = static_cast<double>(n);
    return partition_a() / dn * std::exp(2.0 * partition_b() * std::sqrt(dn));
}

CycleType sample_uniform_partition(std::size_t n, Rng& rng) {
    if (n == 0) throw DomainError("sample_uniform_partition: n must be at least 1");
    const double log_q = -partition_b() / std::sqrt(static_cast<double>(n));
    // Parts above `direct` are drawn by thinning a Bernoulli(q^(direct+1)) stream.
    const std::size_t direct =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(12.0 / -log_q)));
    const double thin_prob = std::exp(log_q * static_cast<double>(direct + 1));
    const double log_skip = std::log1p(-thin_prob);

    std::vector<std::pair<std::size_t, std::uint64_t>> parts;
    while (true) {
        parts.clear();
        std::size_t total = 0;
        bool overflow = false;
        // P(Z_i >= j) = q^(i j)
        auto geometric = [&](std::size_t i) {
            return static_cast<std::uint64_t>(
                std::floor(std::log(uniform_open0(rng)) / (static_cast<double>(i) * log_q)));
        };
        for (std::size_t i = 2; i <= direct && !overflow; ++i) {
            const std::uint64_t z = geometric(i);
            if (z == 0) continue;
            if (z > (n - total) / i) overflow = true;
            else {
                total += i * z;
                parts.emplace_back(i, z);
            }
        }
        for (std::size_t i = direct; !overflow && i < n;) {
            const double gap = std::floor(std::log(uniform_open0(rng)) / log_skip);
            if (gap >= static_cast<double>(n - i)) break;
            i += 1 + static_cast<std::size_t>(gap);
            const double keep = std::exp(log_q * static_cast<double>(i)) / thin_prob;
            if (uniform_open0(rng) > keep) continue;
            const std::uint64_t z = 1 + geometric(i);
            if (z > (n - total) / i) overflow = true;
            else {
                total += i * z;
                parts.emplace_back(i, z);
            }
        }
        if (overflow) continue;
        const std::size_t ones = n - total;
        if (uniform_open0(rng) > std::exp(log_q * static_cast<double>(ones))) continue;
        std::map<std::size_t, std::uint64_t> counts(parts.begin(), parts.end());
        if (ones > 0) counts[1] = ones;
        return CycleType(std::move(counts));
    }
}

double tail_probability_limit(const PartitionTail& t) {
    if (!(t.x >= 0.0) || !(t.y >= 0.0)) throw DomainError("tail_probability_limit: x, y must be nonnegative");
    return std::exp(-partition_b() * (t.x + 2.0 * t.y));
}

double class_parity_probability(std::size_t n, std::size_t samples, Rng& rng) {
    if (n < 2) throw DomainError("class_parity_probability: n must be at least 2");
    if (samples == 0) throw DomainError("class_parity_probability: need at least one sample");
    std::size_t even = 0;
    for (std::size_t s = 0; s < samples; ++s) even += sample_uniform_partition(n, rng).is_even();
    return static_cast<double>(even) / static_cast<double>(samples);
}

}  // namespace genprob
