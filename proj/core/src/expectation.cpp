#include "genprob/expectation.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#include "genprob/errors.hpp"

namespace genprob {

namespace {

// Restricted partitions of k with d_i <= bound(i), lexicographically decreasing in (d_1, d_2, ...).
void restricted_partitions(std::size_t k, const CycleType& bound, std::size_t part, std::size_t remaining,
                           std::map<std::size_t, std::uint64_t>& current, std::vector<CycleType>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    if (part > k) return;
    const std::uint64_t max_here = std::min<std::uint64_t>(bound.count(part), remaining / part);
    for (std::uint64_t m = max_here + 1; m-- > 0;) {
        if (m > 0) current[part] = m;
        else current.erase(part);
        restricted_partitions(k, bound, part + 1, remaining - m * part, current, out);
    }
    current.erase(part);
}

std::vector<CycleType> restricted_partitions(std::size_t k, const CycleType& bound) {
    std::vector<CycleType> out;
    std::map<std::size_t, std::uint64_t> current;
    restricted_partitions(k, bound, 1, k, current, out);
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

BigInt double_factorial_like(std::uint64_t m) {
    // (2m)! / (2^m m!) = number of fixed-point-free involutions on 2m points
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, m);
    return factorial(2 * m) / (pw * factorial(m));
}

}  // namespace

std::vector<SolutionPair> enumerate_solutions(std::size_t k, const CycleType& c, const CycleType& c_prime) {
    if (k == 0) throw DomainError("enumerate_solutions: k must be at least 1");
    const auto ds = restricted_partitions(k, c);
    const auto dps = restricted_partitions(k, c_prime);
    std::vector<SolutionPair> out;
    out.reserve(ds.size() * dps.size());
    for (const auto& d : ds)
        for (const auto& dp : dps) out.push_back({d, dp, k});
    return out;
}

Rational brute_force_pair_probability(const CycleType& d, const CycleType& d_prime) {
    const std::size_t k = d.degree();
    if (d_prime.degree() != k) throw DegreeMismatch("pair probability: types of different degrees");
    if (k == 0) throw DomainError("pair probability: degree must be positive");
    if (k > 12) throw CapacityError("pair probability: brute force limited to degree 12");

    std::vector<Point> arrangement(k);
    std::iota(arrangement.begin(), arrangement.end(), Point{0});
    const auto tau = fill_skeleton(d, arrangement);

    // tau's orbits as a fixed starting forest; each arrangement adds tau' edges
    std::array<Point, 16> base_root{}, root{};
    {
        UnionFind uf(k);
        for (Point i = 0; i < k; ++i) uf.unite(i, tau(i));
        for (Point i = 0; i < k; ++i) base_root[i] = uf.find(i);
    }
    std::size_t base_sets = 0;
    for (Point i = 0; i < k; ++i) base_sets += base_root[i] == i;

    // tau' images written directly from the skeleton of d'
    std::vector<std::pair<std::size_t, std::size_t>> cycles;  // (start offset, length)
    for (std::size_t at = 0; const auto& [len, cnt] : d_prime.counts())
        for (std::uint64_t r = 0; r < cnt; ++r, at += len) cycles.emplace_back(at, len);

    auto find = [&](Point x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };

    std::uint64_t transitive = 0, total = 0;
    do {
        ++total;
        root = base_root;
        std::size_t sets = base_sets;
        for (const auto& [start, len] : cycles) {
            for (std::size_t j = 0; j + 1 < len && sets > 1; ++j) {
                const Point a = find(arrangement[start + j]), b = find(arrangement[start + j + 1]);
                if (a != b) {
                    root[a] = b;
                    --sets;
                }
            }
        }
        transitive += sets == 1;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));

    return make_rational(BigInt(static_cast<unsigned long>(transitive)), BigInt(static_cast<unsigned long>(total)));
}

std::size_t PTable::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::optional<Rational> PTable::lookup(const CycleType& d, const CycleType& d_prime) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find({d.to_string(), d_prime.to_string()});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

Rational PTable::probability(const CycleType& d, const CycleType& d_prime) {
    if (d.degree() != d_prime.degree()) throw DegreeMismatch("pair probability: types of different degrees");
    if (d.degree() > cap_)
        throw CapacityError("pair probability for k = " + std::to_string(d.degree()) +
                            " exceeds the brute-force cap k <= " + std::to_string(cap_));
    if (auto hit = lookup(d, d_prime)) return *hit;
    Rational value = brute_force_pair_probability(d, d_prime);
    std::unique_lock lock(mutex_);
    return entries_.emplace(Key{d.to_string(), d_prime.to_string()}, value).first->second;
}

bool PTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || trim(line) != file_header)
        throw ParseError("p-table " + path.string() + ": missing or unsupported version header");
    std::map<Key, Rational> loaded;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ';');) fields.push_back(trim(f));
        if (fields.size() != 4)
            throw ParseError("p-table " + path.string() + ":" + std::to_string(lineno) + ": expected 4 fields");
        std::size_t k = 0;
        try {
            k = std::stoul(fields[0]);
        } catch (const std::exception&) {
            throw ParseError("p-table " + path.string() + ":" + std::to_string(lineno) + ": bad degree");
        }
        const auto d = CycleType::parse(fields[1], k);
        const auto dp = CycleType::parse(fields[2], k);
        loaded.emplace(Key{d.to_string(), dp.to_string()}, parse_rational(fields[3]));
    }
    std::unique_lock lock(mutex_);
    for (auto& [key, value] : loaded) entries_.insert_or_assign(key, std::move(value));
    return true;
}

void PTable::save(const std::filesystem::path& path) const {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write p-table " + tmp.string());
        out << file_header << '\n';
        std::shared_lock lock(mutex_);
        for (const auto& [key, value] : entries_) {
            const auto d = CycleType::parse(key.first);
            out << d.degree() << "; " << key.first << "; " << key.second << "; " << to_string(value) << '\n';
        }
    }
    std::filesystem::rename(tmp, path);
}

PTable& PTable::global() {
    static PTable table;
    return table;
}

Rational transitive_pair_probability(const CycleType& d, const CycleType& d_prime, PTable& table) {
    return table.probability(d, d_prime);
}

Rational closed_form_p(ClosedFormVariant variant, std::uint64_t m) {
    switch (variant) {
        case ClosedFormVariant::odd: {
            const BigInt cls = (2 * m + 1) * double_factorial_like(m);  // (2m+1)! / (2^m m!)
            return make_rational(factorial(2 * m + 1), cls * cls);
        }
        case ClosedFormVariant::even_fixed_points: {
            if (m < 1) throw DomainError("closed_form_p(even_fixed_points): m must be at least 1");
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), 2, m - 1);
            const BigInt with_fixed = factorial(2 * m) / (pw * 2 * factorial(m - 1));
            return make_rational(factorial(2 * m) / 2, with_fixed * double_factorial_like(m));
        }
        case ClosedFormVariant::even_plain: {
            if (m < 1) throw DomainError("closed_form_p(even_plain): m must be at least 1");
            const BigInt cls = double_factorial_like(m);
            return make_rational(factorial(2 * m - 1), cls * cls);
        }
    }
    throw DomainError("closed_form_p: unknown variant");
}

Rational pair_probability(const CycleType& d, const CycleType& d_prime, PTable& table) {
    const std::size_t k = d.degree();
    if (k <= table.cap()) return table.probability(d, d_prime);
    if (d.supported_on_one_two() && d_prime.supported_on_one_two()) {
        const auto f = d.count(1), fp = d_prime.count(1);
        if (f + fp > 2) return Rational(0);
        if (k % 2 == 1) return closed_form_p(ClosedFormVariant::odd, k / 2);
        if (f == 0 && fp == 0) return closed_form_p(ClosedFormVariant::even_plain, k / 2);
        return closed_form_p(ClosedFormVariant::even_fixed_points, k / 2);
    }
    throw CapacityError("p(" + d.to_string() + "; " + d_prime.to_string() + ") needs k = " + std::to_string(k) +
                        " > cap " + std::to_string(table.cap()) + " and no closed form applies");
}

OrbitCountTerms expected_orbit_count_terms(std::size_t n, const CycleType& c, const CycleType& c_prime,
                                           std::size_t k, PTable& table) {
    if (c.degree() != n || c_prime.degree() != n)
        throw DegreeMismatch("expected_orbit_count: cycle types must have degree " + std::to_string(n));
    if (k < 1 || k > n / 2)
        throw DomainError("expected_orbit_count: need 1 <= k <= n/2, got k = " + std::to_string(k));

    OrbitCountTerms out{0, 0, 0};
    for (const auto& sol : enumerate_solutions(k, c, c_prime)) {
        const Rational p = pair_probability(sol.d, sol.d_prime, table);
        if (p == 0) continue;
        BigInt weight = 1;
        bool short_only = true;
        for (const auto& [len, cnt] : sol.d.counts()) {
            weight *= binomial(c.count(len), cnt);
            short_only = short_only && len <= 2;
        }
        for (const auto& [len, cnt] : sol.d_prime.counts()) {
            weight *= binomial(c_prime.count(len), cnt);
            short_only = short_only && len <= 2;
        }
        Rational term = p * Rational(weight);
        (short_only ? out.sigma1 : out.sigma2) += term;
    }
    const Rational inv_binom = make_rational(1, binomial(n, k));
    out.sigma1 *= inv_binom;
    out.sigma2 *= inv_binom;
    out.total = out.sigma1 + out.sigma2;
    return out;
}

Rational expected_orbit_count(std::size_t n, const CycleType& c, const CycleType& c_prime, std::size_t k,
                              PTable& table) {
    return expected_orbit_count_terms(n, c, c_prime, k, table).total;
}

Rational expected_orbit_total(std::size_t n, const CycleType& c, const CycleType& c_prime, std::size_t kmax,
                              PTable& table) {
    if (kmax > n / 2) throw DomainError("expected_orbit_total: kmax exceeds n/2");
    Rational total = 0;
    for (std::size_t k = 1; k <= kmax; ++k) total += expected_orbit_count(n, c, c_prime, k, table);
    return total;
}

}  // namespace genprob
