#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "genprob/exact.hpp"
#include "genprob/expectation.hpp"
#include "genprob/permutation.hpp"
#include "genprob/recognition.hpp"

namespace genprob {

/// How the points left over after c1 fixed points and c2 two-cycles are covered.
enum class FillerPolicy { long_cycle, three_cycles, mixed };

enum class Event { transitive, alternating, classify };

std::string_view to_string(FillerPolicy f);
std::string_view to_string(Event e);
FillerPolicy parse_filler(std::string_view text);
Event parse_event(std::string_view text);

/// c1 = floor(x sqrt n), c2 = floor(y n / 2), rest filled per policy.
struct ScaledSpec {
    double x = 0.0;
    double y = 0.0;
    FillerPolicy filler = FillerPolicy::long_cycle;
};

/// A fresh uniform random conjugacy class for every sample.
struct UniformRandomClass {};

using ClassSpec = std::variant<CycleType, ScaledSpec, UniformRandomClass>;

struct BuiltCycleType {
    CycleType type;
    std::string adjustment;  // empty unless c1/c2 had to give way to the filler
};

/// Throws InfeasibleConfig when floor(x sqrt n) + 2 floor(y n/2) > n.
BuiltCycleType build_cycle_type(std::size_t n, double x, double y, FillerPolicy filler = FillerPolicy::long_cycle);

struct ExperimentConfig {
    std::size_t n = 0;
    ClassSpec spec = UniformRandomClass{};
    ClassSpec spec_prime = UniformRandomClass{};
    Event event = Event::transitive;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Exact stabilizer chains only up to this degree; beyond it A_n recognition
    /// relies on the fast path and inconclusive samples are counted as unknown.
    std::size_t exact_degree_limit = 512;
    unsigned witness_attempts = 64;
    /// When positive and both classes are fixed, attach E N truncated at this k.
    std::size_t exact_kmax = 0;

    /// Throws InfeasibleConfig / DomainError.
    void validate() const;
};

struct Proportion {
    std::size_t successes = 0;
    std::size_t trials = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    /// Binomial standard error sqrt(p(1-p)/trials) at the point estimate.
    double standard_error = 0.0;
};

/// Wilson score interval; trials == 0 gives the uninformative [0, 1].
Proportion wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct EstimateResult {
    Event event = Event::transitive;
    std::size_t n = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    Proportion proportion;  // over decided samples
    std::size_t unknown = 0;
    double wall_time_seconds = 0.0;
    std::optional<double> limit_value;
    std::optional<double> exact_expected_n;  // truncated at exact_kmax
    std::map<GroupClass, std::size_t> class_counts;  // classify only
    std::vector<std::string> notes;

    double estimate() const noexcept { return proportion.estimate; }
    double ci_low() const noexcept { return proportion.ci_low; }
    double ci_high() const noexcept { return proportion.ci_high; }
};

/// Monte Carlo frequency of `cfg.event`; for classify the frequency is that of
/// G >= A_n and `class_counts` holds the full breakdown. Bit-identical for a
/// given (config, seed) regardless of `threads`.
EstimateResult estimate_event(const ExperimentConfig& cfg);

struct ComparisonReport {
    EstimateResult transitive;
    EstimateResult alternating;
    double difference = 0.0;  // transitive - alternating, on the same sample stream
};

ComparisonReport compare_transitive_vs_alternating(const ExperimentConfig& cfg);

struct RandomClassOptions {
    unsigned threads = 1;
    bool classify = true;
    std::size_t exact_degree_limit = 512;
    unsigned witness_attempts = 64;
};

struct RandomClassReport {
    std::size_t n = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool classified = false;
    Proportion transitive;
    Proportion at_least_alternating;
    Proportion alternating;
    Proportion symmetric;
    std::size_t unknown = 0;
    double limit_transitive = 0.0;  // application constant C
    double limit_alternating = 0.0;
    double limit_symmetric = 0.0;
    double wall_time_seconds = 0.0;
    std::vector<std::string> warnings;
};

RandomClassReport random_class_experiment(std::size_t n, std::size_t samples, std::uint64_t seed,
                                          const RandomClassOptions& options = {});

/// Calls `visit` once for every permutation with cycle type `ct`.
void for_each_class_element(const CycleType& ct, const std::function<void(const Permutation&)>& visit);

/// Exact distribution of GroupClass for uniform pi in class c, pi' in class c'
/// (pi fixed to the class representative, pi' enumerated over its class).
std::map<GroupClass, Rational> exact_class_pair_distribution(const CycleType& c, const CycleType& c_prime);

/// Exact P(transitive) when both classes are drawn uniformly from the p(n)
/// classes and elements uniformly within them; needs n <= table cap.
Rational exact_random_class_transitivity(std::size_t n, PTable& table = PTable::global());

struct ExactRow {
    std::size_t k = 0;
    Rational expected;  // E N_k
    Rational sigma1;
    Rational sigma2;
};

struct ExactReport {
    std::size_t n = 0;
    CycleType type;
    CycleType type_prime;
    std::size_t kmax = 0;
    std::vector<ExactRow> rows;
    Rational partial_expected_n;
    double prediction = 0.0;  // exp(-partial E N)
    std::optional<Rational> exact_transitive_probability;  // when n is within the p-table cap
};

ExactReport exact_report(std::size_t n, const CycleType& type, const CycleType& type_prime, std::size_t kmax,
                         PTable& table = PTable::global());

}  // namespace genprob
