#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "genprob/asymptotics.hpp"
#include "genprob/errors.hpp"
#include "genprob/partitions.hpp"

namespace genprob::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json proportion_json(const Proportion& p) {
    return {{"successes", p.successes}, {"trials", p.trials}, {"estimate", p.estimate},
            {"ci_low", p.ci_low},       {"ci_high", p.ci_high}, {"standard_error", p.standard_error}};
}

Json estimate_json(const EstimateResult& r) {
    Json j;
    j["event"] = std::string(to_string(r.event));
    j["n"] = r.n;
    j["samples"] = r.samples;
    j["estimate"] = r.estimate();
    j["ci_low"] = r.ci_low();
    j["ci_high"] = r.ci_high();
    j["limit"] = r.limit_value ? Json(*r.limit_value) : Json(nullptr);
    j["seed"] = r.seed;
    j["decided"] = r.proportion.trials;
    j["unknown"] = r.unknown;
    j["standard_error"] = r.proportion.standard_error;
    j["wall_time_seconds"] = r.wall_time_seconds;
    if (r.exact_expected_n) j["exact_expected_n"] = *r.exact_expected_n;
    if (!r.class_counts.empty()) {
        Json counts = Json::object();
        for (const auto& [c, count] : r.class_counts) counts[std::string(to_string(c))] = count;
        j["class_counts"] = counts;
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

/// Class option: an explicit `i^c` type, or "random" for a fresh uniform class per sample.
ClassSpec class_spec(const std::string& text, std::size_t n, double x, double y, FillerPolicy filler) {
    if (text.empty()) return ScaledSpec{x, y, filler};
    if (text == "random") return UniformRandomClass{};
    return CycleType::parse(text, n);
}

struct PTableFile {
    std::string path;

    void load() const {
        if (!path.empty()) PTable::global().load(path);
    }
    void save() const {
        if (!path.empty()) PTable::global().save(path);
    }
};

struct EstimateArgs {
    std::size_t n = 0;
    double x = 0, y = 0, xp = 0, yp = 0;
    std::string type, type2, filler = "long-cycle", event = "transitive", format = "csv";
    std::size_t samples = 1000, kmax = 0, exact_limit = 512;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool compare = false;
};

int run_estimate(const EstimateArgs& a, const PTableFile& table, std::ostream& out) {
    ExperimentConfig cfg;
    cfg.n = a.n;
    const auto filler = parse_filler(a.filler);
    cfg.spec = class_spec(a.type, a.n, a.x, a.y, filler);
    cfg.spec_prime = class_spec(a.type2, a.n, a.xp, a.yp, filler);
    cfg.event = parse_event(a.event);
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    cfg.exact_kmax = a.kmax;
    cfg.exact_degree_limit = a.exact_limit;
    table.load();
    std::vector<EstimateResult> results;
    std::optional<double> difference;
    if (a.compare) {
        auto rep = compare_transitive_vs_alternating(cfg);
        difference = rep.difference;
        results = {std::move(rep.transitive), std::move(rep.alternating)};
    } else {
        results.push_back(estimate_event(cfg));
    }
    table.save();
    if (a.format == "json") {
        Json j = results.size() == 1 ? estimate_json(results[0]) : Json::object();
        if (difference) {
            j["transitive"] = estimate_json(results[0]);
            j["alternating"] = estimate_json(results[1]);
            j["difference"] = *difference;
        }
        out << j.dump(2) << '\n';
    } else {
        out << estimate_csv_header() << '\n';
        for (const auto& r : results) out << estimate_csv_row(r) << '\n';
    }
    return ok;
}

struct ExactArgs {
    std::size_t n = 0, kmax = 1;
    std::string type, type2, format = "csv";
};

int run_exact(const ExactArgs& a, const PTableFile& table, std::ostream& out) {
    const auto c = CycleType::parse(a.type, a.n);
    const auto cp = CycleType::parse(a.type2, a.n);
    table.load();
    const auto rep = exact_report(a.n, c, cp, a.kmax);
    table.save();
    if (a.format == "json") {
        Json rows = Json::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"k", row.k},
                            {"expected", to_string(row.expected)},
                            {"expected_decimal", to_double(row.expected)},
                            {"sigma1", to_string(row.sigma1)},
                            {"sigma2", to_string(row.sigma2)}});
        Json j{{"n", rep.n},
               {"type", rep.type.to_string()},
               {"type2", rep.type_prime.to_string()},
               {"kmax", rep.kmax},
               {"rows", rows},
               {"partial_expected_n", to_string(rep.partial_expected_n)},
               {"partial_expected_n_decimal", to_double(rep.partial_expected_n)},
               {"prediction", rep.prediction}};
        if (rep.exact_transitive_probability) {
            j["exact_transitive_probability"] = to_string(*rep.exact_transitive_probability);
            j["exact_transitive_probability_decimal"] = to_double(*rep.exact_transitive_probability);
        }
        out << j.dump(2) << '\n';
        return ok;
    }
    out << "k,expected,expected_decimal,sigma1,sigma2\n";
    for (const auto& row : rep.rows)
        out << row.k << ',' << to_string(row.expected) << ',' << full(to_double(row.expected)) << ','
            << to_string(row.sigma1) << ',' << to_string(row.sigma2) << '\n';
    out << "total," << to_string(rep.partial_expected_n) << ',' << full(to_double(rep.partial_expected_n)) << ",,\n";
    out << "prediction,," << full(rep.prediction) << ",,\n";
    if (rep.exact_transitive_probability)
        out << "exact_transitive," << to_string(*rep.exact_transitive_probability) << ','
            << full(to_double(*rep.exact_transitive_probability)) << ",,\n";
    return ok;
}

struct LimitArgs {
    std::string x = "0", y = "0", xp = "0", yp = "0", format = "csv";
};

int run_limit(const LimitArgs& a, std::ostream& out) {
    const LimitParams p{ExtendedReal::parse(a.x), ExtendedReal::parse(a.y).value(), ExtendedReal::parse(a.xp),
                        ExtendedReal::parse(a.yp).value()};
    const double limit = generation_probability_limit(p);
    const auto en = expected_N_limit(p);
    if (a.format == "json") {
        out << Json{{"x", p.x.to_string()},
                    {"y", p.y},
                    {"xp", p.x_prime.to_string()},
                    {"yp", p.y_prime},
                    {"expected_n", en.is_infinite() ? Json("inf") : Json(en.value())},
                    {"limit", limit}}
                   .dump(2)
            << '\n';
    } else {
        out << "x,y,xp,yp,expected_n,limit\n"
            << p.x.to_string() << ',' << full(p.y) << ',' << p.x_prime.to_string() << ',' << full(p.y_prime) << ','
            << (en.is_infinite() ? std::string("inf") : full(en.value())) << ',' << full(limit) << '\n';
    }
    return ok;
}

struct RandomClassArgs {
    std::size_t n = 0, samples = 1000, exact_limit = 512;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string event = "classify", format = "csv";
};

int run_random_class(const RandomClassArgs& a, std::ostream& out, std::ostream& err) {
    RandomClassOptions opts;
    opts.threads = a.threads;
    opts.exact_degree_limit = a.exact_limit;
    const auto event = parse_event(a.event);
    if (event == Event::alternating) throw DomainError("random-class --event takes transitive or classify");
    opts.classify = event == Event::classify;
    const auto rep = random_class_experiment(a.n, a.samples, a.seed, opts);
    for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
    struct Line {
        const char* event;
        const Proportion* p;
        double limit;
    };
    std::vector<Line> lines{{"transitive", &rep.transitive, rep.limit_transitive}};
    if (rep.classified) {
        lines.push_back({"at_least_alternating", &rep.at_least_alternating, rep.limit_transitive});
        lines.push_back({"alternating", &rep.alternating, rep.limit_alternating});
        lines.push_back({"symmetric", &rep.symmetric, rep.limit_symmetric});
    }
    if (a.format == "json") {
        Json j{{"n", rep.n}, {"samples", rep.samples}, {"seed", rep.seed}, {"classified", rep.classified}};
        for (const auto& l : lines) {
            auto pj = proportion_json(*l.p);
            pj["limit"] = l.limit;
            j[l.event] = pj;
        }
        j["unknown"] = rep.unknown;
        j["wall_time_seconds"] = rep.wall_time_seconds;
        j["warnings"] = rep.warnings;
        out << j.dump(2) << '\n';
        return ok;
    }
    out << estimate_csv_header() << '\n';
    for (const auto& l : lines)
        out << l.event << ',' << rep.n << ',' << l.p->trials << ',' << full(l.p->estimate) << ','
            << full(l.p->ci_low) << ',' << full(l.p->ci_high) << ',' << full(l.limit) << ',' << rep.seed << '\n';
    return ok;
}

int run_constants(const std::string& format, std::ostream& out) {
    const auto c = application_constant();
    const auto split = split_constants();
    const std::vector<std::pair<const char*, double>> rows{{"transitive_random_class", c.value},
                                                           {"alternating", split.alternating},
                                                           {"symmetric", split.symmetric},
                                                           {"a", partition_a()},
                                                           {"b", partition_b()},
                                                           {"e1_b_squared", c.e1}};
    if (format == "json") {
        Json j = Json::object();
        for (const auto& [name, v] : rows) j[name] = v;
        j["quadrature"] = c.quadrature;
        j["quadrature_error"] = c.quadrature_error;
        out << j.dump(2) << '\n';
    } else {
        out << "name,value\n";
        for (const auto& [name, v] : rows) out << name << ',' << fixed(v) << '\n';
    }
    return ok;
}

struct PartitionArgs {
    std::size_t n = 0, sample = 0, samples = 10000;
    bool count = false;
    std::vector<double> tail;
    std::uint64_t seed = 0;
};

int run_partition(const PartitionArgs& a, std::ostream& out) {
    const int modes = (a.count ? 1 : 0) + (a.sample > 0 ? 1 : 0) + (a.tail.empty() ? 0 : 1);
    if (modes != 1) throw DomainError("partition needs exactly one of --count, --sample, --tail");
    if (a.count) {
        out << to_string(partition_count(a.n)) << '\n';
        return ok;
    }
    if (a.n == 0) throw DomainError("partition sampling needs n >= 1");
    if (a.sample > 0) {
        Rng rng(a.seed);
        for (std::size_t s = 0; s < a.sample; ++s) out << sample_uniform_partition(a.n, rng).to_string() << '\n';
        return ok;
    }
    const PartitionTail t{a.tail[0], a.tail[1]};
    const double limit = tail_probability_limit(t);
    const double root = std::sqrt(static_cast<double>(a.n));
    std::size_t hits = 0;
    for (std::size_t s = 0; s < a.samples; ++s) {
        auto rng = stream_for(a.seed, s);
        const auto ct = sample_uniform_partition(a.n, rng);
        hits += static_cast<double>(ct.count(1)) >= t.x * root && static_cast<double>(ct.count(2)) >= t.y * root;
    }
    const auto p = wilson_interval(hits, a.samples);
    out << "event,n,samples,estimate,ci_low,ci_high,limit,seed\n"
        << "tail," << a.n << ',' << a.samples << ',' << full(p.estimate) << ',' << full(p.ci_low) << ','
        << full(p.ci_high) << ',' << full(limit) << ',' << a.seed << '\n';
    return ok;
}

}  // namespace

std::string estimate_csv_header() { return "event,n,samples,estimate,ci_low,ci_high,limit,seed"; }

std::string estimate_csv_row(const EstimateResult& r) {
    return std::string(to_string(r.event)) + ',' + std::to_string(r.n) + ',' + std::to_string(r.samples) + ',' +
           full(r.estimate()) + ',' + full(r.ci_low()) + ',' + full(r.ci_high()) + ',' +
           (r.limit_value ? full(*r.limit_value) : std::string()) + ',' + std::to_string(r.seed);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generation probabilities for pairs of random permutations", "genprob"};
    app.require_subcommand(1);
    PTableFile table;
    const std::vector<std::string> formats{"csv", "json"};

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "Monte Carlo estimate for a pair of classes");
    est->add_option("--n", ea.n, "Degree")->required();
    est->add_option("--x", ea.x, "c1 / sqrt(n) for the first class");
    est->add_option("--y", ea.y, "2 c2 / n for the first class");
    est->add_option("--xp", ea.xp, "c1 / sqrt(n) for the second class");
    est->add_option("--yp", ea.yp, "2 c2 / n for the second class");
    est->add_option("--type", ea.type, "Explicit first class (`1^2 3^1`) or `random`");
    est->add_option("--type2", ea.type2, "Explicit second class or `random`");
    est->add_option("--filler", ea.filler, "Filler for scaled classes")
        ->check(CLI::IsMember({"long-cycle", "three-cycles", "mixed"}));
    est->add_option("--event", ea.event)->check(CLI::IsMember({"transitive", "alternating", "classify"}));
    est->add_option("--samples", ea.samples);
    est->add_option("--seed", ea.seed);
    est->add_option("--threads", ea.threads)->check(CLI::PositiveNumber);
    est->add_option("--kmax", ea.kmax, "Attach exact E N truncated at kmax (fixed classes only)");
    est->add_option("--exact-limit", ea.exact_limit, "Largest degree for exact A_n recognition");
    est->add_flag("--compare", ea.compare, "Transitive and alternating on the same samples");
    est->add_option("--format", ea.format)->check(CLI::IsMember(formats));
    est->add_option("--ptable", table.path, "P-table file to load and update");

    ExactArgs xa;
    auto* exact = app.add_subcommand("exact", "Exact expected short-orbit counts");
    exact->add_option("--n", xa.n)->required();
    exact->add_option("--type", xa.type)->required();
    exact->add_option("--type2", xa.type2)->required();
    exact->add_option("--kmax", xa.kmax);
    exact->add_option("--format", xa.format)->check(CLI::IsMember(formats));
    exact->add_option("--ptable", table.path, "P-table file to load and update");

    LimitArgs la;
    auto* limit = app.add_subcommand("limit", "Limiting generation probability");
    limit->add_option("--x", la.x);
    limit->add_option("--y", la.y);
    limit->add_option("--xp", la.xp);
    limit->add_option("--yp", la.yp);
    limit->add_option("--format", la.format)->check(CLI::IsMember(formats));

    RandomClassArgs ra;
    auto* rc = app.add_subcommand("random-class", "Pairs drawn from uniformly random classes");
    rc->add_option("--n", ra.n)->required();
    rc->add_option("--samples", ra.samples);
    rc->add_option("--seed", ra.seed);
    rc->add_option("--threads", ra.threads)->check(CLI::PositiveNumber);
    rc->add_option("--event", ra.event)->check(CLI::IsMember({"transitive", "classify"}));
    rc->add_option("--exact-limit", ra.exact_limit);
    rc->add_option("--format", ra.format)->check(CLI::IsMember(formats));

    std::string constants_format = "csv";
    auto* consts = app.add_subcommand("constants", "Limiting constants");
    consts->add_option("--format", constants_format)->check(CLI::IsMember(formats));

    PartitionArgs pa;
    auto* part = app.add_subcommand("partition", "Integer partitions");
    part->add_option("--n", pa.n)->required();
    part->add_flag("--count", pa.count);
    part->add_option("--sample", pa.sample, "Print this many uniform partitions");
    part->add_option("--tail", pa.tail, "Tail point X Y")->expected(2);
    part->add_option("--samples", pa.samples, "Samples for --tail");
    part->add_option("--seed", pa.seed);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*est) return run_estimate(ea, table, out);
        if (*exact) return run_exact(xa, table, out);
        if (*limit) return run_limit(la, out);
        if (*rc) return run_random_class(ra, out, err);
        if (*consts) return run_constants(constants_format, out);
        if (*part) return run_partition(pa, out);
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return capacity;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return infeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}

}  // namespace genprob::cli
