#include "genprob/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "genprob/asymptotics.hpp"
#include "genprob/errors.hpp"
#include "genprob/partitions.hpp"
#include "genprob/rng.hpp"

namespace genprob {

namespace {

struct SampleOutcome {
    bool transitive = false;
    Verdict verdict = Verdict::unknown;
    GroupClass group_class = GroupClass::intransitive;
};

std::optional<CycleType> resolve(const ClassSpec& spec, std::size_t n) {
    if (const auto* ct = std::get_if<CycleType>(&spec)) {
        if (ct->degree() != n)
            throw InfeasibleConfig("cycle type " + ct->to_string() + " has degree " + std::to_string(ct->degree()) +
                                   ", expected " + std::to_string(n));
        return *ct;
    }
    if (const auto* s = std::get_if<ScaledSpec>(&spec)) return build_cycle_type(n, s->x, s->y, s->filler).type;
    return std::nullopt;
}

Permutation draw(const std::optional<CycleType>& fixed, std::size_t n, Rng& rng) {
    if (fixed) return sample_with_cycle_type(*fixed, rng);
    return sample_with_cycle_type(sample_uniform_partition(n, rng), rng);
}

/// Runs `body(index)` for every sample index, spreading indices over threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

struct Evaluation {
    bool transitivity = true;
    bool recognition = false;
};

std::vector<SampleOutcome> run_samples(std::size_t n, const std::optional<CycleType>& spec,
                                       const std::optional<CycleType>& spec_prime, std::size_t samples,
                                       std::uint64_t seed, unsigned threads, Evaluation what,
                                       const RecognitionOptions& recognition) {
    std::vector<SampleOutcome> out(samples);
    parallel_for(samples, threads, [&](std::size_t index) {
        Rng rng = stream_for(seed, index);
        const std::array<Permutation, 2> gens{draw(spec, n, rng), draw(spec_prime, n, rng)};
        SampleOutcome& o = out[index];
        o.transitive = is_transitive(gens, n);
        if (!what.recognition) return;
        if (!o.transitive) {
            o.verdict = n <= 2 ? Verdict::yes : Verdict::no;
            o.group_class = GroupClass::intransitive;
            return;
        }
        o.verdict = recognize_alternating(gens, n, recognition);
        const bool odd = parity(gens[0]) == Parity::odd || parity(gens[1]) == Parity::odd;
        switch (o.verdict) {
            case Verdict::yes: o.group_class = odd ? GroupClass::symmetric : GroupClass::alternating; break;
            case Verdict::no: o.group_class = GroupClass::transitive_proper; break;
            case Verdict::unknown: break;
        }
    });
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

EstimateResult base_result(const ExperimentConfig& cfg, Event event) {
    EstimateResult r;
    r.event = event;
    r.n = cfg.n;
    r.samples = cfg.samples;
    r.seed = cfg.seed;
    return r;
}

void attach_comparators(const ExperimentConfig& cfg, const std::optional<CycleType>& spec,
                        const std::optional<CycleType>& spec_prime, EstimateResult& r) {
    const auto* s = std::get_if<ScaledSpec>(&cfg.spec);
    const auto* sp = std::get_if<ScaledSpec>(&cfg.spec_prime);
    for (const auto* scaled : {s, sp}) {
        if (!scaled) continue;
        const auto built = build_cycle_type(cfg.n, scaled->x, scaled->y, scaled->filler);
        if (!built.adjustment.empty()) r.notes.push_back(built.type.to_string() + ": " + built.adjustment);
    }
    if (s && sp) {
        try {
            r.limit_value = generation_probability_limit({s->x, s->y, sp->x, sp->y});
        } catch (const IndeterminateLimit& e) {
            r.notes.emplace_back(e.what());
        }
    }
    if (cfg.exact_kmax > 0 && spec && spec_prime) {
        const std::size_t kmax = std::min(cfg.exact_kmax, cfg.n / 2);
        try {
            r.exact_expected_n = to_double(expected_orbit_total(cfg.n, *spec, *spec_prime, kmax));
        } catch (const CapacityError& e) {
            r.notes.emplace_back(std::string("exact E N unavailable: ") + e.what());
        }
    }
}

RecognitionOptions recognition_options(const ExperimentConfig& cfg) {
    RecognitionOptions o;
    o.exact_degree_limit = cfg.exact_degree_limit;
    o.witness_attempts = cfg.witness_attempts;
    return o;
}

void fill_alternating(EstimateResult& r, const std::vector<SampleOutcome>& outcomes) {
    std::size_t yes = 0, unknown = 0;
    for (const auto& o : outcomes) {
        yes += o.verdict == Verdict::yes;
        unknown += o.verdict == Verdict::unknown;
    }
    r.unknown = unknown;
    r.proportion = wilson_interval(yes, outcomes.size() - unknown);
    if (unknown > 0)
        r.notes.push_back(std::to_string(unknown) + " samples undecided: degree above the exact recognition limit "
                          "and no fast-path witness");
}

void permutations_of_type(std::vector<Point>& images, std::vector<char>& used, std::map<std::size_t, std::uint64_t>& left,
                          const std::function<void(const Permutation&)>& visit) {
    const auto first = std::find(used.begin(), used.end(), 0);
    if (first == used.end()) {
        visit(Permutation(images));
        return;
    }
    const auto start = static_cast<Point>(first - used.begin());
    for (auto& [len, count] : left) {
        if (count == 0) continue;
        --count;
        used[start] = 1;
        std::vector<Point> cycle{start};
        // extend the cycle through every ordered choice of len-1 unused points
        std::function<void()> extend = [&] {
            if (cycle.size() == len) {
                for (std::size_t j = 0; j < len; ++j) images[cycle[j]] = cycle[(j + 1) % len];
                permutations_of_type(images, used, left, visit);
                return;
            }
            for (Point p = start + 1; p < used.size(); ++p) {
                if (used[p]) continue;
                used[p] = 1;
                cycle.push_back(p);
                extend();
                cycle.pop_back();
                used[p] = 0;
            }
        };
        extend();
        used[start] = 0;
        ++count;
    }
}

}  // namespace

std::string_view to_string(FillerPolicy f) {
    switch (f) {
        case FillerPolicy::long_cycle: return "long-cycle";
        case FillerPolicy::three_cycles: return "three-cycles";
        case FillerPolicy::mixed: return "mixed";
    }
    return "?";
}

std::string_view to_string(Event e) {
    switch (e) {
        case Event::transitive: return "transitive";
        case Event::alternating: return "alternating";
        case Event::classify: return "classify";
    }
    return "?";
}

FillerPolicy parse_filler(std::string_view text) {
    if (text == "long-cycle") return FillerPolicy::long_cycle;
    if (text == "three-cycles") return FillerPolicy::three_cycles;
    if (text == "mixed") return FillerPolicy::mixed;
    throw ParseError("unknown filler policy '" + std::string(text) + "'");
}

Event parse_event(std::string_view text) {
    if (text == "transitive") return Event::transitive;
    if (text == "alternating") return Event::alternating;
    if (text == "classify") return Event::classify;
    throw ParseError("unknown event '" + std::string(text) + "'");
}

BuiltCycleType build_cycle_type(std::size_t n, double x, double y, FillerPolicy filler) {
    if (n == 0) throw InfeasibleConfig("degree must be positive");
    if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw InfeasibleConfig("scaled parameters must be finite and nonnegative");
    const double dn = static_cast<double>(n);
    const double c1_real = std::floor(x * std::sqrt(dn) + 1e-9);
    const double c2_real = std::floor(y * dn / 2.0 + 1e-9);
    if (c1_real + 2.0 * c2_real > dn)
        throw InfeasibleConfig("infeasible scaled type: floor(x sqrt n) + 2 floor(y n/2) = " +
                               std::to_string(static_cast<long long>(c1_real + 2.0 * c2_real)) + " > n = " +
                               std::to_string(n));
    auto c1 = static_cast<std::uint64_t>(c1_real);
    auto c2 = static_cast<std::uint64_t>(c2_real);
    std::size_t r = n - c1 - 2 * c2;

    BuiltCycleType out;
    std::map<std::size_t, std::uint64_t> counts;
    if (r == 2) {
        if (c1 >= 1) {
            --c1;
            r = 3;
            out.adjustment = "c1 reduced by 1 to leave a 3-point remainder";
        } else if (c2 >= 1) {
            --c2;
            r = 4;
            out.adjustment = "c2 reduced by 1 to leave a 4-point remainder";
        }
    } else if (r == 1) {
        if (c2 >= 1) {
            --c2;
            r = 3;
            out.adjustment = "c2 reduced by 1 to leave a 3-point remainder";
        } else if (c1 >= 2) {
            c1 -= 2;
            r = 3;
            out.adjustment = "c1 reduced by 2 to leave a 3-point remainder";
        }
    }
    counts[1] += c1;
    counts[2] += c2;
    if (r > 0 && r < 3) {
        counts[r] += 1;
        out.adjustment = "remainder of " + std::to_string(r) + " point(s) kept as a short cycle";
    } else if (r >= 3) {
        switch (filler) {
            case FillerPolicy::long_cycle: counts[r] += 1; break;
            case FillerPolicy::three_cycles:
                if (r % 3 == 0) counts[3] += r / 3;
                else {
                    counts[3] += r / 3 - 1;
                    counts[3 + r % 3] += 1;
                }
                break;
            case FillerPolicy::mixed:
                if (r < 6) counts[r] += 1;
                else {
                    const std::size_t threes = r / 6;
                    counts[3] += threes;
                    counts[r - 3 * threes] += 1;
                }
                break;
        }
    }
    out.type = CycleType(std::move(counts));
    return out;
}

void ExperimentConfig::validate() const {
    if (n == 0) throw InfeasibleConfig("degree must be positive");
    if (samples == 0) throw DomainError("samples must be positive");
    if (threads == 0) throw DomainError("threads must be positive");
    resolve(spec, n);
    resolve(spec_prime, n);
    if (event == Event::classify && n < 3) throw DegenerateDegree("classify needs at least 3 points");
}

Proportion wilson_interval(std::size_t successes, std::size_t trials, double z) {
    Proportion p;
    p.successes = successes;
    p.trials = trials;
    if (trials == 0) return p;
    const double nt = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double center = (phat + z2 / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
    p.estimate = phat;
    p.ci_low = std::clamp(center - half, 0.0, phat);
    p.ci_high = std::clamp(center + half, phat, 1.0);
    p.standard_error = std::sqrt(phat * (1.0 - phat) / nt);
    return p;
}

EstimateResult estimate_event(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto spec = resolve(cfg.spec, cfg.n);
    const auto spec_prime = resolve(cfg.spec_prime, cfg.n);
    EstimateResult r = base_result(cfg, cfg.event);

    const Evaluation what{true, cfg.event != Event::transitive};
    const auto outcomes =
        run_samples(cfg.n, spec, spec_prime, cfg.samples, cfg.seed, cfg.threads, what, recognition_options(cfg));

    if (cfg.event == Event::transitive) {
        const auto hits = static_cast<std::size_t>(
            std::count_if(outcomes.begin(), outcomes.end(), [](const SampleOutcome& o) { return o.transitive; }));
        r.proportion = wilson_interval(hits, outcomes.size());
    } else {
        fill_alternating(r, outcomes);
    }
    if (cfg.event == Event::classify) {
        for (auto c : {GroupClass::intransitive, GroupClass::transitive_proper, GroupClass::alternating,
                       GroupClass::symmetric})
            r.class_counts[c] = 0;
        for (const auto& o : outcomes)
            if (o.verdict != Verdict::unknown) ++r.class_counts[o.group_class];
    }
    attach_comparators(cfg, spec, spec_prime, r);
    r.wall_time_seconds = seconds_since(start);
    return r;
}

ComparisonReport compare_transitive_vs_alternating(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto spec = resolve(cfg.spec, cfg.n);
    const auto spec_prime = resolve(cfg.spec_prime, cfg.n);
    const auto outcomes = run_samples(cfg.n, spec, spec_prime, cfg.samples, cfg.seed, cfg.threads, {true, true},
                                      recognition_options(cfg));

    ComparisonReport rep;
    rep.transitive = base_result(cfg, Event::transitive);
    rep.alternating = base_result(cfg, Event::alternating);
    const auto hits = static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](const SampleOutcome& o) { return o.transitive; }));
    rep.transitive.proportion = wilson_interval(hits, outcomes.size());
    fill_alternating(rep.alternating, outcomes);
    attach_comparators(cfg, spec, spec_prime, rep.transitive);
    attach_comparators(cfg, spec, spec_prime, rep.alternating);
    rep.difference = rep.transitive.estimate() - rep.alternating.estimate();
    rep.transitive.wall_time_seconds = rep.alternating.wall_time_seconds = seconds_since(start);
    return rep;
}

RandomClassReport random_class_experiment(std::size_t n, std::size_t samples, std::uint64_t seed,
                                          const RandomClassOptions& options) {
    if (n < 3) throw DomainError("random_class_experiment: n must be at least 3");
    if (samples == 0) throw DomainError("samples must be positive");
    const auto start = std::chrono::steady_clock::now();
    RandomClassReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    rep.classified = options.classify && n <= options.exact_degree_limit;
    if (options.classify && !rep.classified)
        rep.warnings.push_back("n = " + std::to_string(n) + " exceeds the exact recognition limit " +
                               std::to_string(options.exact_degree_limit) + "; reporting transitivity only");

    RecognitionOptions rec;
    rec.exact_degree_limit = options.exact_degree_limit;
    rec.witness_attempts = options.witness_attempts;
    const auto outcomes = run_samples(n, std::nullopt, std::nullopt, samples, seed, options.threads,
                                      {true, rep.classified}, rec);

    std::size_t transitive = 0, yes = 0, alt = 0, sym = 0, unknown = 0;
    for (const auto& o : outcomes) {
        transitive += o.transitive;
        if (!rep.classified) continue;
        unknown += o.verdict == Verdict::unknown;
        yes += o.verdict == Verdict::yes;
        alt += o.verdict == Verdict::yes && o.group_class == GroupClass::alternating;
        sym += o.verdict == Verdict::yes && o.group_class == GroupClass::symmetric;
    }
    rep.transitive = wilson_interval(transitive, samples);
    if (rep.classified) {
        rep.unknown = unknown;
        rep.at_least_alternating = wilson_interval(yes, samples - unknown);
        rep.alternating = wilson_interval(alt, samples - unknown);
        rep.symmetric = wilson_interval(sym, samples - unknown);
    }
    const auto constants = application_constant();
    rep.limit_transitive = constants.value;
    rep.limit_alternating = constants.value / 4.0;
    rep.limit_symmetric = 3.0 * constants.value / 4.0;
    rep.wall_time_seconds = seconds_since(start);
    return rep;
}

void for_each_class_element(const CycleType& ct, const std::function<void(const Permutation&)>& visit) {
    const std::size_t n = ct.degree();
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<char> used(n, 0);
    auto left = ct.counts();
    permutations_of_type(images, used, left, visit);
}

std::map<GroupClass, Rational> exact_class_pair_distribution(const CycleType& c, const CycleType& c_prime) {
    const std::size_t n = c.degree();
    if (c_prime.degree() != n) throw DegreeMismatch("class pair of different degrees");
    std::vector<Point> identity(n);
    std::iota(identity.begin(), identity.end(), Point{0});
    std::array<Permutation, 2> gens{fill_skeleton(c, identity), Permutation{}};
    std::map<GroupClass, std::size_t> counts;
    std::size_t total = 0;
    for_each_class_element(c_prime, [&](const Permutation& p) {
        gens[1] = p;
        ++counts[classify(gens, n)];
        ++total;
    });
    std::map<GroupClass, Rational> out;
    for (auto cls : {GroupClass::intransitive, GroupClass::transitive_proper, GroupClass::alternating,
                     GroupClass::symmetric})
        out[cls] = make_rational(BigInt(static_cast<unsigned long>(counts[cls])),
                                 BigInt(static_cast<unsigned long>(total)));
    return out;
}

Rational exact_random_class_transitivity(std::size_t n, PTable& table) {
    const auto classes = enumerate_partitions(n);
    Rational sum = 0;
    for (const auto& c : classes)
        for (const auto& cp : classes) sum += table.probability(c, cp);
    const auto count = static_cast<unsigned long>(classes.size());
    return sum / Rational(BigInt(count) * BigInt(count));
}

ExactReport exact_report(std::size_t n, const CycleType& type, const CycleType& type_prime, std::size_t kmax,
                         PTable& table) {
    if (kmax > n / 2) throw DomainError("exact_report: kmax exceeds n/2");
    ExactReport rep;
    rep.n = n;
    rep.type = type;
    rep.type_prime = type_prime;
    rep.kmax = kmax;
    rep.partial_expected_n = 0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const auto terms = expected_orbit_count_terms(n, type, type_prime, k, table);
        rep.rows.push_back({k, terms.total, terms.sigma1, terms.sigma2});
        rep.partial_expected_n += terms.total;
    }
    rep.prediction = std::exp(-to_double(rep.partial_expected_n));
    if (n <= table.cap()) rep.exact_transitive_probability = table.probability(type, type_prime);
    return rep;
}

}  // namespace genprob
