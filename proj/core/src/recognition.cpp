#include "genprob/recognition.hpp"

#include <algorithm>
#include <numeric>

#include "genprob/errors.hpp"
#include "genprob/rng.hpp"

namespace genprob {

namespace {

std::vector<std::uint32_t> smallest_prime_factors(std::size_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (std::size_t j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

std::uint64_t hash_generators(std::span<const Permutation> gens) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const auto& g : gens) {
        for (Point p : g.images()) {
            h ^= p;
            h *= 0x100000001B3ULL;
        }
        h = splitmix64(h);
    }
    return h;
}

bool is_identity(std::span<const Point> images) {
    for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i] != i) return false;
    return true;
}

void check_degrees(std::span<const Permutation> gens, std::size_t degree) {
    for (const auto& g : gens)
        if (g.degree() != degree)
            throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) + " on " +
                                 std::to_string(degree) + " points");
}

bool has_odd_generator(std::span<const Permutation> gens) {
    return std::any_of(gens.begin(), gens.end(), [](const Permutation& g) { return parity(g) == Parity::odd; });
}

}  // namespace

std::string_view to_string(GroupClass c) {
    switch (c) {
        case GroupClass::intransitive: return "intransitive";
        case GroupClass::transitive_proper: return "transitive_proper";
        case GroupClass::alternating: return "alternating";
        case GroupClass::symmetric: return "symmetric";
    }
    return "?";
}

StabilizerChain::StabilizerChain(std::size_t degree)
    : degree_(degree), smallest_prime_factor_(smallest_prime_factors(degree)), index_exponents_(degree + 1, 0) {
    // Legendre: exponent of p in n!
    for (std::size_t p = 2; p <= degree; ++p) {
        if (smallest_prime_factor_[p] != p) continue;
        std::int64_t e = 0;
        for (std::size_t q = p; q <= degree; q *= p) {
            e += static_cast<std::int64_t>(degree / q);
            if (q > degree / p) break;
        }
        index_exponents_[p] = e;
    }
}

std::vector<Point> StabilizerChain::base() const {
    std::vector<Point> out;
    for (const auto& l : levels_) out.push_back(l.base);
    return out;
}

std::vector<std::size_t> StabilizerChain::fundamental_orbit_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& l : levels_) out.push_back(l.orbit.size());
    return out;
}

std::span<const Point> StabilizerChain::fundamental_orbit(std::size_t level) const { return levels_.at(level).orbit; }

BigInt StabilizerChain::order() const {
    BigInt out = 1;
    for (const auto& l : levels_) out *= static_cast<unsigned long>(l.orbit.size());
    return out;
}

bool StabilizerChain::certifies_alternating() const {
    for (std::size_t p = 3; p < index_exponents_.size(); ++p)
        if (index_exponents_[p] != 0) return false;
    return index_exponents_.size() <= 2 || index_exponents_[2] <= 1;
}

void StabilizerChain::set_orbit_exponents(std::size_t old_size, std::size_t new_size) {
    for (std::size_t m = old_size; m > 1; m /= smallest_prime_factor_[m]) ++index_exponents_[smallest_prime_factor_[m]];
    for (std::size_t m = new_size; m > 1; m /= smallest_prime_factor_[m]) --index_exponents_[smallest_prime_factor_[m]];
}

std::uint32_t StabilizerChain::add_to_pool(std::vector<Point> perm) {
    std::vector<Point> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<Point>(i);
    pool_.push_back(std::move(perm));
    pool_inverse_.push_back(std::move(inv));
    return static_cast<std::uint32_t>(pool_.size() - 1);
}

void StabilizerChain::append_level(Point base) {
    Level l;
    l.base = base;
    l.orbit = {base};
    l.label.assign(degree_, -1);
    l.label[base] = -2;
    levels_.push_back(std::move(l));
}

void StabilizerChain::extend_orbit(std::size_t level, std::uint32_t pool_index) {
    Level& l = levels_[level];
    const std::size_t old_size = l.orbit.size();
    const auto& s = pool_[pool_index];
    for (std::size_t i = 0; i < old_size; ++i) {
        const Point next = s[l.orbit[i]];
        if (l.label[next] == -1) {
            l.label[next] = static_cast<std::int32_t>(pool_index);
            l.orbit.push_back(next);
        }
    }
    for (std::size_t i = old_size; i < l.orbit.size(); ++i) {
        const Point from = l.orbit[i];
        for (std::uint32_t g : l.gens) {
            const Point next = pool_[g][from];
            if (l.label[next] == -1) {
                l.label[next] = static_cast<std::int32_t>(g);
                l.orbit.push_back(next);
            }
        }
    }
    if (l.orbit.size() != old_size) set_orbit_exponents(old_size, l.orbit.size());
}

void StabilizerChain::add_generator(std::uint32_t pool_index, std::size_t first_level, std::size_t last_level) {
    for (std::size_t lv = first_level; lv <= last_level; ++lv) {
        levels_[lv].gens.push_back(pool_index);
        levels_[lv].tested.emplace_back();
        extend_orbit(lv, pool_index);
    }
}

std::size_t StabilizerChain::sift(std::vector<Point>& h, std::size_t start) const {
    for (std::size_t lv = start; lv < levels_.size(); ++lv) {
        const Level& l = levels_[lv];
        Point gamma = h[l.base];
        if (l.label[gamma] == -1) return lv;
        while (l.label[gamma] != -2) {
            const auto& inv = pool_inverse_[static_cast<std::size_t>(l.label[gamma])];
            for (auto& x : h) x = inv[x];
            gamma = inv[gamma];
        }
    }
    return levels_.size();
}

std::vector<Point> StabilizerChain::transversal_images(std::size_t level, Point point) const {
    const Level& l = levels_[level];
    std::vector<Point> w(degree_);
    std::iota(w.begin(), w.end(), Point{0});
    std::vector<Point> tmp(degree_);
    Point gamma = point;
    while (l.label[gamma] != -2) {
        const auto s = static_cast<std::size_t>(l.label[gamma]);
        for (std::size_t x = 0; x < degree_; ++x) tmp[x] = w[pool_[s][x]];
        w.swap(tmp);
        gamma = pool_inverse_[s][gamma];
    }
    return w;
}

std::optional<Permutation> StabilizerChain::transversal_element(std::size_t level, Point point) const {
    if (level >= levels_.size() || point >= degree_ || levels_[level].label[point] == -1) return std::nullopt;
    return Permutation(transversal_images(level, point));
}

bool StabilizerChain::contains(const Permutation& g) const {
    if (g.degree() != degree_) throw DegreeMismatch("contains: degree mismatch");
    std::vector<Point> h(g.images().begin(), g.images().end());
    sift(h, 0);
    return is_identity(h);
}

void StabilizerChain::randomized_phase(std::span<const Permutation> gens, const ChainOptions& options) {
    auto absorb = [&](std::vector<Point> h) -> bool {
        const std::size_t j = sift(h, 0);
        if (is_identity(h)) return false;
        if (j == levels_.size()) {
            const auto moved = static_cast<Point>(
                std::find_if(h.begin(), h.end(), [i = Point{0}](Point x) mutable { return x != i++; }) - h.begin());
            append_level(moved);
        }
        add_generator(add_to_pool(std::move(h)), 0, j);
        return true;
    };

    std::vector<std::vector<Point>> slots;
    for (const auto& g : gens) {
        if (g.is_identity()) continue;
        slots.emplace_back(g.images().begin(), g.images().end());
        absorb(slots.back());
    }
    if (slots.empty() || !options.randomized_phase) return;
    if (options.stop_at_alternating && certifies_alternating()) return;

    for (std::size_t i = 0; slots.size() < 10; ++i) slots.push_back(slots[i]);
    std::vector<Point> acc(degree_);
    std::iota(acc.begin(), acc.end(), Point{0});
    std::vector<Point> tmp(degree_);
    Rng rng(hash_generators(gens));
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    auto step = [&] {
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        auto& sa = slots[a];
        const auto& sb = slots[b];
        for (std::size_t x = 0; x < degree_; ++x) tmp[x] = sa[sb[x]];
        sa.swap(tmp);
        for (std::size_t x = 0; x < degree_; ++x) tmp[x] = acc[sa[x]];
        acc.swap(tmp);
    };
    for (int i = 0; i < 50; ++i) step();

    unsigned stall = 0;
    while (stall < options.stall_limit) {
        step();
        if (absorb(acc)) {
            stall = 0;
            if (options.stop_at_alternating && certifies_alternating()) return;
        } else {
            ++stall;
        }
    }
}

void StabilizerChain::deterministic_completion(const ChainOptions& options) {
    // Schreier generators of level i must sift through levels > i. Tested pairs stay
    // valid as the chain grows, so each (generator, orbit point) is checked once.
    auto test_level = [&](std::size_t i) -> std::optional<std::size_t> {
        for (std::size_t gp = 0; gp < levels_[i].gens.size(); ++gp) {
            for (std::size_t op = 0; op < levels_[i].orbit.size(); ++op) {
                auto& tested = levels_[i].tested[gp];
                if (tested.size() < levels_[i].orbit.size()) tested.resize(levels_[i].orbit.size(), 0);
                if (tested[op]) continue;
                tested[op] = 1;

                const auto& s = pool_[levels_[i].gens[gp]];
                const auto u = transversal_images(i, levels_[i].orbit[op]);
                std::vector<Point> h(degree_);
                for (std::size_t x = 0; x < degree_; ++x) h[x] = s[u[x]];
                const std::size_t j = sift(h, i);
                if (is_identity(h)) continue;
                if (j == levels_.size()) {
                    const auto moved = static_cast<Point>(
                        std::find_if(h.begin(), h.end(), [k = Point{0}](Point x) mutable { return x != k++; }) -
                        h.begin());
                    append_level(moved);
                }
                add_generator(add_to_pool(std::move(h)), i + 1, j);
                return j;
            }
        }
        return std::nullopt;
    };

    std::size_t i = levels_.size();
    while (i > 0) {
        if (const auto j = test_level(i - 1)) {
            if (options.stop_at_alternating && certifies_alternating()) return;
            i = *j + 1;
        } else {
            --i;
        }
    }
    complete_ = true;
}

StabilizerChain StabilizerChain::build(std::span<const Permutation> gens, std::size_t degree,
                                       const ChainOptions& options) {
    check_degrees(gens, degree);
    StabilizerChain chain(degree);
    chain.randomized_phase(gens, options);
    if (options.stop_at_alternating && chain.certifies_alternating()) return chain;
    chain.deterministic_completion(options);
    return chain;
}

bool is_transitive(std::span<const Permutation> gens, std::size_t degree) {
    check_degrees(gens, degree);
    if (degree <= 1) return true;
    UnionFind uf(degree);
    for (const auto& g : gens) {
        for (Point i = 0; i < degree; ++i) {
            uf.unite(i, g(i));
        }
        if (uf.set_count() == 1) return true;
    }
    return uf.set_count() == 1;
}

BigInt group_order(std::span<const Permutation> gens, std::size_t degree) {
    ChainOptions opts;
    opts.stop_at_alternating = true;
    const auto chain = StabilizerChain::build(gens, degree, opts);
    if (chain.complete()) return chain.order();
    // Index 1 or 2 in S_n: the generator parities decide which.
    const BigInt full = factorial(degree);
    if (chain.order() == full || has_odd_generator(gens)) return full;
    return full / 2;
}

bool is_primitive(std::span<const Permutation> gens, std::size_t degree) {
    if (!is_transitive(gens, degree)) return false;
    // Smallest block containing {0, x}, by closing the union of 0 and x under the generators.
    for (Point x = 1; x < degree; ++x) {
        UnionFind uf(degree);
        uf.unite(0, x);
        std::vector<std::pair<Point, Point>> pending{{0, x}};
        while (!pending.empty() && uf.set_count() > 1) {
            const auto [a, b] = pending.back();
            pending.pop_back();
            for (const auto& g : gens)
                if (uf.unite(g(a), g(b))) pending.emplace_back(g(a), g(b));
        }
        if (uf.set_count() > 1) return false;
    }
    return true;
}

bool find_prime_cycle_witness(std::span<const Permutation> gens, std::size_t degree, unsigned attempts) {
    check_degrees(gens, degree);
    if (degree < 8 || gens.empty()) return false;
    const auto spf = smallest_prime_factors(degree);
    const std::size_t lo = degree / 2 + 1, hi = degree - 3;
    std::vector<char> good(degree + 1, 0);
    bool any = false;
    for (std::size_t p = lo; p <= hi; ++p)
        if (spf[p] == p) good[p] = any = true;
    if (!any) return false;

    std::vector<char> seen(degree);
    auto has_witness_cycle = [&](std::span<const Point> im) {
        std::fill(seen.begin(), seen.end(), 0);
        for (Point start = 0; start < degree; ++start) {
            if (seen[start]) continue;
            std::size_t len = 0;
            for (Point x = start; !seen[x]; x = im[x]) {
                seen[x] = 1;
                ++len;
            }
            if (good[len]) return true;
            if (len >= lo) return false;  // no room left for a long cycle
        }
        return false;
    };

    for (const auto& g : gens)
        if (has_witness_cycle(g.images())) return true;

    std::vector<std::vector<Point>> slots;
    for (const auto& g : gens) slots.emplace_back(g.images().begin(), g.images().end());
    for (std::size_t i = 0; slots.size() < 5; ++i) slots.push_back(slots[i]);
    std::vector<Point> tmp(degree);
    Rng rng(hash_generators(gens) ^ 0x5DEECE66DULL);
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    for (unsigned t = 0; t < attempts; ++t) {
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        for (std::size_t x = 0; x < degree; ++x) tmp[x] = slots[a][slots[b][x]];
        slots[a].swap(tmp);
        if (has_witness_cycle(slots[a])) return true;
    }
    return false;
}

Verdict recognize_alternating(std::span<const Permutation> gens, std::size_t degree,
                              const RecognitionOptions& options) {
    check_degrees(gens, degree);
    if (degree <= 2) return Verdict::yes;
    // A_n is primitive for n >= 3, so both checks below are exact.
    if (!is_transitive(gens, degree)) return Verdict::no;
    if (options.fast_path && find_prime_cycle_witness(gens, degree, options.witness_attempts)) return Verdict::yes;
    if (degree > options.exact_degree_limit) return Verdict::unknown;
    if (!is_primitive(gens, degree)) return Verdict::no;
    ChainOptions chain_opts;
    chain_opts.stop_at_alternating = true;
    return StabilizerChain::build(gens, degree, chain_opts).certifies_alternating() ? Verdict::yes : Verdict::no;
}

bool contains_alternating(std::span<const Permutation> gens, std::size_t degree, bool fast_path) {
    RecognitionOptions opts;
    opts.fast_path = fast_path;
    return recognize_alternating(gens, degree, opts) == Verdict::yes;
}

GroupClass classify(std::span<const Permutation> gens, std::size_t degree, const RecognitionOptions& options) {
    if (degree < 3) throw DegenerateDegree("A_n/S_n distinction needs at least 3 points");
    if (!is_transitive(gens, degree)) return GroupClass::intransitive;
    switch (recognize_alternating(gens, degree, options)) {
        case Verdict::no: return GroupClass::transitive_proper;
        case Verdict::yes: return has_odd_generator(gens) ? GroupClass::symmetric : GroupClass::alternating;
        case Verdict::unknown: break;
    }
    throw CapacityError("degree " + std::to_string(degree) + " exceeds the exact recognition limit " +
                        std::to_string(options.exact_degree_limit) + " and no fast-path witness was found");
}

}  // namespace genprob
