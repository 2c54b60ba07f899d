#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "genprob/asymptotics.hpp"
#include "genprob/errors.hpp"
#include "genprob/harness.hpp"
#include "genprob/partitions.hpp"
#include "oracles.hpp"

using namespace genprob;

namespace {

/// Fraction of all pairs (pi, pi') in the two classes that generate a transitive group.
double exhaustive_transitive_fraction(const CycleType& c, const CycleType& cp) {
    const auto a = oracle::class_members(c), b = oracle::class_members(cp);
    std::size_t hits = 0;
    for (const auto& p : a)
        for (const auto& q : b) hits += oracle::orbit_histogram({p, q}, c.degree()).count(c.degree());
    return static_cast<double>(hits) / static_cast<double>(a.size() * b.size());
}

ExperimentConfig explicit_config(std::size_t n, CycleType c, CycleType cp, Event event, std::size_t samples,
                                 std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.spec = std::move(c);
    cfg.spec_prime = std::move(cp);
    cfg.event = event;
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(BuildCycleType, Examples) {
    EXPECT_EQ(build_cycle_type(400, 1, 0.5).type, (CycleType{{1, 20}, {2, 100}, {180, 1}}));
    EXPECT_EQ(build_cycle_type(100, 0, 0).type, (CycleType{{100, 1}}));
    const auto identity = build_cycle_type(100, 10, 0);
    EXPECT_EQ(identity.type, (CycleType{{1, 100}}));
    EXPECT_TRUE(identity.adjustment.empty());
    EXPECT_THROW(build_cycle_type(100, 10, 0.1), InfeasibleConfig);
    EXPECT_THROW(build_cycle_type(100, -1, 0), InfeasibleConfig);
}

TEST(BuildCycleType, SmallRemaindersMergedIntoLongCycle) {
    // n = 102, x = 1: c1 = 10, c2 = 45 leaves r = 2, so one fixed point joins the filler.
    const auto a = build_cycle_type(102, 1, 90.0 / 102.0);
    EXPECT_EQ(a.type, (CycleType{{1, 9}, {2, 45}, {3, 1}}));
    EXPECT_FALSE(a.adjustment.empty());
    // r = 1 with two-cycles available: one two-cycle joins the filler.
    const auto b = build_cycle_type(101, 1, 90.0 / 101.0);
    EXPECT_EQ(b.type, (CycleType{{1, 10}, {2, 44}, {3, 1}}));
    EXPECT_FALSE(b.adjustment.empty());
}

TEST(BuildCycleType, DegreeAndCountsAcrossPolicies) {
    for (auto filler : {FillerPolicy::long_cycle, FillerPolicy::three_cycles, FillerPolicy::mixed})
        for (std::size_t n = 3; n <= 300; n += 7)
            for (double x : {0.0, 0.5, 1.0, 2.0})
                for (double y : {0.0, 0.3, 0.5, 0.8}) {
                    BuiltCycleType b;
                    try {
                        b = build_cycle_type(n, x, y, filler);
                    } catch (const InfeasibleConfig&) {
                        EXPECT_GT(std::floor(x * std::sqrt(double(n)) + 1e-9) + 2 * std::floor(y * n / 2.0 + 1e-9),
                                  double(n));
                        continue;
                    }
                    ASSERT_EQ(b.type.degree(), n);
                    const auto c1 = static_cast<std::uint64_t>(std::floor(x * std::sqrt(double(n)) + 1e-9));
                    const auto c2 = static_cast<std::uint64_t>(std::floor(y * n / 2.0 + 1e-9));
                    EXPECT_LE(b.type.count(1), c1);
                    EXPECT_LE(b.type.count(2), c2);
                    if (b.adjustment.empty()) {
                        EXPECT_EQ(b.type.count(1), c1);
                        EXPECT_EQ(b.type.count(2), c2);
                    }
                }
}

TEST(BuildCycleType, ThreeCycleFiller) {
    const auto b = build_cycle_type(100, 1, 0.5, FillerPolicy::three_cycles);
    EXPECT_EQ(b.type.count(1), 10u);
    EXPECT_EQ(b.type.count(2), 25u);
    EXPECT_EQ(b.type.degree(), 100u);
    for (const auto& [len, c] : b.type.counts()) EXPECT_LE(len, 5u);
}

TEST(EventText, ParseAndPrint) {
    for (auto e : {Event::transitive, Event::alternating, Event::classify}) EXPECT_EQ(parse_event(to_string(e)), e);
    for (auto f : {FillerPolicy::long_cycle, FillerPolicy::three_cycles, FillerPolicy::mixed})
        EXPECT_EQ(parse_filler(to_string(f)), f);
    EXPECT_THROW(parse_event("orbits"), ParseError);
}

TEST(Wilson, WellFormedForAllCounts) {
    for (std::size_t trials = 0; trials <= 60; ++trials)
        for (std::size_t s = 0; s <= trials; ++s) {
            const auto p = wilson_interval(s, trials);
            EXPECT_LE(0.0, p.ci_low);
            EXPECT_LE(p.ci_low, p.estimate);
            EXPECT_LE(p.estimate, p.ci_high);
            EXPECT_LE(p.ci_high, 1.0);
        }
    const auto none = wilson_interval(0, 0);
    EXPECT_EQ(none.ci_low, 0.0);
    EXPECT_EQ(none.ci_high, 1.0);
    const auto half = wilson_interval(50, 100);
    EXPECT_NEAR(half.ci_low, 0.4038, 1e-4);
    EXPECT_NEAR(half.ci_high, 0.5962, 1e-4);
}

TEST(Estimate, DeterministicAcrossThreadCounts) {
    auto cfg = explicit_config(30, CycleType{{1, 4}, {2, 5}, {3, 2}, {10, 1}}, CycleType{{1, 3}, {2, 6}, {15, 1}},
                               Event::classify, 2000, 12345);
    cfg.threads = 1;
    const auto one = estimate_event(cfg);
    cfg.threads = 4;
    const auto four = estimate_event(cfg);
    EXPECT_EQ(one.proportion.successes, four.proportion.successes);
    EXPECT_EQ(one.proportion.trials, four.proportion.trials);
    EXPECT_EQ(one.estimate(), four.estimate());
    EXPECT_EQ(one.class_counts, four.class_counts);
    cfg.seed = 54321;
    EXPECT_NE(estimate_event(cfg).class_counts, one.class_counts);
}

TEST(Estimate, TwoLongCyclesAlwaysTransitive) {
    ExperimentConfig cfg;
    cfg.n = 200;
    cfg.spec = ScaledSpec{0, 0};
    cfg.spec_prime = ScaledSpec{0, 0};
    cfg.samples = 500;
    cfg.seed = 7;
    const auto r = estimate_event(cfg);
    EXPECT_EQ(r.estimate(), 1.0);
    ASSERT_TRUE(r.limit_value.has_value());
    EXPECT_EQ(*r.limit_value, 1.0);
    EXPECT_LE(r.ci_low(), r.estimate());
}

TEST(Estimate, SmallClassesMatchExhaustiveProbability) {
    const std::vector<std::pair<CycleType, CycleType>> pairs{
        {CycleType{{1, 1}, {2, 2}}, CycleType{{1, 2}, {3, 1}}},
        {CycleType{{2, 3}}, CycleType{{1, 2}, {2, 2}}},
        {CycleType{{1, 1}, {4, 1}}, CycleType{{1, 1}, {2, 2}}},
    };
    for (const auto& [c, cp] : pairs) {
        const double exact = exhaustive_transitive_fraction(c, cp);
        const auto r = estimate_event(explicit_config(c.degree(), c, cp, Event::transitive, 20000, 99));
        const double sigma = std::sqrt(std::max(exact * (1 - exact), 1e-12) / 20000);
        EXPECT_LE(std::abs(r.estimate() - exact), 4 * sigma) << c.to_string() << " / " << cp.to_string();
    }
}

TEST(Estimate, ExactExpectedNAttached) {
    auto cfg = explicit_config(4, CycleType{{2, 2}}, CycleType{{2, 2}}, Event::transitive, 100, 1);
    cfg.exact_kmax = 2;
    const auto r = estimate_event(cfg);
    ASSERT_TRUE(r.exact_expected_n.has_value());
    EXPECT_NEAR(*r.exact_expected_n, 2.0 / 3.0, 1e-15);
}

TEST(Estimate, RejectsBadConfigs) {
    auto cfg = explicit_config(5, CycleType{{2, 2}}, CycleType{{5, 1}}, Event::transitive, 10, 1);
    EXPECT_THROW(estimate_event(cfg), InfeasibleConfig);
    ExperimentConfig scaled;
    scaled.n = 100;
    scaled.spec = ScaledSpec{10, 0.5};
    scaled.samples = 10;
    EXPECT_THROW(estimate_event(scaled), InfeasibleConfig);
    auto zero = explicit_config(4, CycleType{{2, 2}}, CycleType{{2, 2}}, Event::transitive, 0, 1);
    EXPECT_THROW(estimate_event(zero), DomainError);
}

TEST(Estimate, UnknownCountedSeparatelyAboveBudget) {
    // Two fixed-point-free involutions: always imprimitive, never a witness.
    auto cfg = explicit_config(24, CycleType{{2, 12}}, CycleType{{2, 12}}, Event::alternating, 200, 3);
    cfg.exact_degree_limit = 10;
    const auto r = estimate_event(cfg);
    EXPECT_EQ(r.unknown + r.proportion.trials, 200u);
    EXPECT_FALSE(r.notes.empty() && r.unknown > 0);
}

TEST(Compare, TenCycleAgainstTranspositionsIsExact) {
    const CycleType c{{10, 1}}, cp{{1, 8}, {2, 1}};
    const auto dist = exact_class_pair_distribution(c, cp);
    // (i j) with the 10-cycle gives S_10 exactly when |i - j| is coprime to 10: 20 of the 45 transpositions.
    EXPECT_EQ(dist.at(GroupClass::symmetric), make_rational(BigInt(20), BigInt(45)));
    EXPECT_EQ(dist.at(GroupClass::transitive_proper), make_rational(BigInt(25), BigInt(45)));
    EXPECT_EQ(dist.at(GroupClass::intransitive), 0);
    const double exact_difference = to_double(dist.at(GroupClass::transitive_proper));

    const auto rep = compare_transitive_vs_alternating(explicit_config(10, c, cp, Event::transitive, 20000, 5));
    const double sigma = std::sqrt(exact_difference * (1 - exact_difference) / 20000);
    EXPECT_EQ(rep.transitive.estimate(), 1.0);
    EXPECT_NEAR(rep.difference, exact_difference, 4 * sigma);
}

TEST(Compare, AllIntransitiveGivesZeroDifference) {
    const auto rep = compare_transitive_vs_alternating(
        explicit_config(6, CycleType{{1, 6}}, CycleType{{2, 3}}, Event::transitive, 300, 8));
    EXPECT_EQ(rep.transitive.estimate(), 0.0);
    EXPECT_EQ(rep.difference, 0.0);
}

TEST(ClassEnumeration, VisitsEachElementOnce) {
    for (const auto& ct : enumerate_partitions(6)) {
        std::set<Permutation> seen;
        for_each_class_element(ct, [&](const Permutation& p) {
            EXPECT_EQ(cycle_type(p), ct);
            seen.insert(p);
        });
        EXPECT_EQ(class_size(ct), seen.size());
    }
}

TEST(RandomClass, ExactAtThree) {
    const auto classes = enumerate_partitions(3);
    double oracle_sum = 0.0;
    for (const auto& c : classes)
        for (const auto& cp : classes) oracle_sum += exhaustive_transitive_fraction(c, cp);
    const double oracle_value = oracle_sum / static_cast<double>(classes.size() * classes.size());
    PTable table;
    const auto exact = exact_random_class_transitivity(3, table);
    EXPECT_NEAR(to_double(exact), oracle_value, 1e-15);
    // Transitive: any pair involving a 3-cycle, or two distinct transpositions.
    EXPECT_EQ(exact, make_rational(BigInt(17), BigInt(27)));

    const auto mc = random_class_experiment(3, 20000, 17);
    const double sigma = std::sqrt(oracle_value * (1 - oracle_value) / 20000);
    EXPECT_NEAR(mc.transitive.estimate, oracle_value, 4 * sigma);
}

TEST(RandomClass, FallsBackAboveBudget) {
    RandomClassOptions opts;
    opts.exact_degree_limit = 50;
    const auto rep = random_class_experiment(60, 50, 2, opts);
    EXPECT_FALSE(rep.classified);
    EXPECT_EQ(rep.warnings.size(), 1u);
    EXPECT_NEAR(rep.limit_transitive, 0.6889, 5e-5);
}

TEST(RandomClass, DeterministicAcrossThreads) {
    RandomClassOptions one, four;
    four.threads = 4;
    const auto a = random_class_experiment(40, 400, 11, one);
    const auto b = random_class_experiment(40, 400, 11, four);
    EXPECT_EQ(a.transitive.successes, b.transitive.successes);
    EXPECT_EQ(a.alternating.successes, b.alternating.successes);
    EXPECT_EQ(a.symmetric.successes, b.symmetric.successes);
}

TEST(ExactReport, Examples) {
    const CycleType dt{{2, 2}};
    const auto rep = exact_report(4, dt, dt, 2);
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_EQ(rep.rows[1].expected, make_rational(BigInt(2), BigInt(3)));
    EXPECT_NEAR(rep.prediction, std::exp(-2.0 / 3.0), 1e-15);
    ASSERT_TRUE(rep.exact_transitive_probability.has_value());
    EXPECT_EQ(*rep.exact_transitive_probability, make_rational(BigInt(2), BigInt(3)));

    const auto cyc = exact_report(12, CycleType{{12, 1}}, CycleType{{12, 1}}, 6);
    for (const auto& row : cyc.rows) EXPECT_EQ(row.expected, 0);
    EXPECT_EQ(cyc.prediction, 1.0);
}

TEST(ExactReport, ScaledBenchmarkNearLimit) {
    const auto t = build_cycle_type(400, 1, 0.5).type;
    const auto rep = exact_report(400, t, t, 9);
    const double limit = expected_N_limit({ExtendedReal(1), 0.5, ExtendedReal(1), 0.5}).value();
    EXPECT_NEAR(to_double(rep.partial_expected_n), limit, 0.05);
    for (const auto& row : rep.rows) EXPECT_EQ(row.sigma2, 0);  // the filler is a single long cycle
}

TEST(ExactReport, ExpectedShortOrbitsMatchSimulationAtFourHundred) {
    const std::size_t n = 400, kmax = 9;
    const auto t = build_cycle_type(n, 1, 0.5).type;
    const auto rep = exact_report(n, t, t, kmax);
    constexpr int samples = 20000;
    Rng rng(2024);
    double sum = 0.0, sum_sq = 0.0;
    std::size_t none = 0;
    for (int s = 0; s < samples; ++s) {
        const std::vector<Permutation> gens{sample_with_cycle_type(t, rng), sample_with_cycle_type(t, rng)};
        const auto o = orbits(gens, n);
        double short_orbits = 0.0, all_orbits = 0.0;
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const auto c = static_cast<double>(o.count_of_size(k));
            if (k <= kmax) short_orbits += c;
            all_orbits += c;
        }
        sum += short_orbits;
        sum_sq += short_orbits * short_orbits;
        none += all_orbits == 0.0 ? 1 : 0;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
    EXPECT_LE(std::abs(mean - to_double(rep.partial_expected_n)), 4 * se);
    // P(N = 0) ~ exp(-E N) holds only in the limit; at n = 400 the gap is about 0.03.
    const double p0 = static_cast<double>(none) / samples;
    const double sigma = std::sqrt(p0 * (1 - p0) / samples);
    double truncation = 0.0;
    for (std::size_t k = kmax + 1; k <= n / 2; ++k) truncation += std::pow(0.25, k / 2.0);
    EXPECT_LE(std::abs(p0 - rep.prediction), 4 * sigma + truncation + 0.04)
        << "estimate " << p0 << " prediction " << rep.prediction;
}

TEST(Estimate, ReportsCycleTypeAdjustment) {
    ExperimentConfig cfg;
    cfg.n = 101;
    cfg.spec = ScaledSpec{1, 0.9};
    cfg.spec_prime = ScaledSpec{0, 0};
    cfg.samples = 10;
    const auto r = estimate_event(cfg);
    ASSERT_EQ(r.notes.size(), 1u);
    EXPECT_NE(r.notes[0].find("c2 reduced by 1"), std::string::npos) << r.notes[0];
}
