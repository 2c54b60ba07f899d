#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "genprob/asymptotics.hpp"
#include "genprob/errors.hpp"
#include "genprob/partitions.hpp"
#include "oracles.hpp"

using namespace genprob;

TEST(PartitionCount, Examples) {
    EXPECT_EQ(partition_count(0), 1);
    EXPECT_EQ(partition_count(1), 1);
    EXPECT_EQ(partition_count(10), 42);
    EXPECT_EQ(enumerate_partitions(10).size(), 42u);
    EXPECT_EQ(partition_count(100), 190569292);
}

TEST(PartitionCount, MatchesCoinChangeUpTo200) {
    for (std::size_t n = 0; n <= 200; ++n) EXPECT_EQ(partition_count(n), oracle::dp_partition_count(n)) << n;
}

TEST(PartitionCount, EnumerationIsDistinctAndComplete) {
    for (std::size_t n = 1; n <= 15; ++n) {
        const auto parts = enumerate_partitions(n);
        std::set<CycleType> distinct(parts.begin(), parts.end());
        EXPECT_EQ(distinct.size(), parts.size());
        EXPECT_EQ(partition_count(n), parts.size());
        for (const auto& p : parts) EXPECT_EQ(p.degree(), n);
    }
}

TEST(HardyRamanujan, Ratios) {
    const double r100 = hardy_ramanujan(100) / partition_count(100).get_d();
    EXPECT_GE(r100, 1.0);
    EXPECT_LE(r100, 1.1);
    const double r10k = hardy_ramanujan(10000) / partition_count(10000).get_d();
    EXPECT_GE(r10k, 1.0);
    EXPECT_LE(r10k, 1.01);
    EXPECT_NEAR(partition_a(), 0.144338, 1e-6);
    EXPECT_THROW(hardy_ramanujan(0), DomainError);
}

TEST(UniformPartition, DegreeOne) {
    Rng rng(71);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_uniform_partition(1, rng), (CycleType{{1, 1}}));
}

TEST(UniformPartition, DegreeAlwaysN) {
    Rng rng(73);
    for (int i = 0; i < 200; ++i) ASSERT_EQ(sample_uniform_partition(1000, rng).degree(), 1000u);
}

TEST(UniformPartition, ChiSquareExactnessSmallN) {
    Rng rng(79);
    for (std::size_t n : {4u, 6u, 8u}) {
        const auto all = enumerate_partitions(n);
        std::map<CycleType, std::size_t> index;
        for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
        std::vector<std::size_t> counts(all.size(), 0);
        for (int s = 0; s < 100000; ++s) ++counts.at(index.at(sample_uniform_partition(n, rng)));
        const std::vector<double> probs(all.size(), 1.0 / static_cast<double>(all.size()));
        EXPECT_GT(oracle::chi_square_p_value(counts, probs), 0.001) << "n=" << n;
    }
}

TEST(UniformPartition, TailEmpiricsAtTenThousand) {
    const std::size_t n = 10000;
    const double root = std::sqrt(static_cast<double>(n));
    const std::vector<PartitionTail> points{{0.5, 0}, {1, 0}, {0, 0.5}, {1, 0.5}};
    std::vector<std::size_t> hits(points.size(), 0);
    std::size_t many_two_cycles = 0;
    constexpr std::size_t samples = 100000;
    Rng rng(83);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto ct = sample_uniform_partition(n, rng);
        const double c1 = static_cast<double>(ct.count(1)), c2 = static_cast<double>(ct.count(2));
        for (std::size_t j = 0; j < points.size(); ++j)
            hits[j] += (c1 >= points[j].x * root && c2 >= points[j].y * root) ? 1 : 0;
        many_two_cycles += 2 * c2 / static_cast<double>(n) > 0.05 ? 1 : 0;
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
        const double est = static_cast<double>(hits[j]) / samples;
        const double limit = tail_probability_limit(points[j]);
        const double sigma = std::sqrt(limit * (1 - limit) / samples);
        EXPECT_LE(std::abs(est - limit), 3 * sigma + 0.01) << points[j].x << "," << points[j].y;
    }
    EXPECT_LT(static_cast<double>(many_two_cycles) / samples, 0.01);
}

TEST(TailLimit, Examples) {
    EXPECT_DOUBLE_EQ(tail_probability_limit({0, 0}), 1.0);
    EXPECT_NEAR(tail_probability_limit({1, 0}), 0.2773292556, 1e-9);
    EXPECT_NEAR(tail_probability_limit({0, 1}), 0.0769115160, 1e-9);
    EXPECT_THROW(tail_probability_limit({-1, 0}), DomainError);
}

TEST(ClassParity, SmallAndLarge) {
    Rng rng(89);
    EXPECT_NEAR(class_parity_probability(2, 100000, rng), 0.5, 0.01);
    EXPECT_NEAR(class_parity_probability(3, 100000, rng), 2.0 / 3.0, 0.01);
    EXPECT_NEAR(class_parity_probability(1000, 100000, rng), 0.5, 0.01);
    EXPECT_THROW(class_parity_probability(1, 10, rng), DomainError);
}
