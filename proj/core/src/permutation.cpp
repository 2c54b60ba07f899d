#include "genprob/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "genprob/errors.hpp"

namespace genprob {

namespace {

template <typename T>
bool parse_whole(std::string_view text, T& out) {
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (Point p : images_) {
        if (p >= images_.size() || seen[p]) throw DomainError("images are not a bijection on 0..n-1");
        seen[p] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<Point> im(n);
    std::iota(im.begin(), im.end(), Point{0});
    return Permutation(std::move(im), Unchecked{});
}

Permutation Permutation::from_cycles(std::size_t n,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
    std::vector<std::vector<Point>> cs;
    for (const auto& c : cycles) cs.emplace_back(c);
    return from_cycles(n, cs);
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> im(n);
    std::iota(im.begin(), im.end(), Point{0});
    std::vector<char> used(n, 0);
    for (const auto& c : cycles) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            const Point from = c[j];
            if (from >= n || used[from]) throw DomainError("cycles are not disjoint points of 0..n-1");
            used[from] = 1;
            im[from] = c[(j + 1) % c.size()];
        }
    }
    return Permutation(std::move(im), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv), Unchecked{});
}

std::vector<std::vector<Point>> Permutation::cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(images_.size(), 0);
    for (Point start = 0; start < images_.size(); ++start) {
        if (seen[start] || images_[start] == start) continue;
        std::vector<Point> cyc;
        for (Point p = start; !seen[p]; p = images_[p]) {
            seen[p] = 1;
            cyc.push_back(p);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string Permutation::to_string() const {
    const auto cs = cycles();
    if (cs.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cs) {
        os << '(';
        for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j];
        os << ')';
    }
    return os.str();
}

CycleType::CycleType(std::map<std::size_t, std::uint64_t> counts) {
    for (const auto& [len, c] : counts) {
        if (len == 0) throw DomainError("cycle length must be positive");
        if (c == 0) continue;
        counts_.emplace(len, c);
        degree_ += len * c;
    }
}

CycleType CycleType::parse(std::string_view text, std::optional<std::size_t> expected_degree) {
    std::map<std::size_t, std::uint64_t> counts;
    std::size_t pos = 0;
    auto is_space = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r'; };
    while (true) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos == text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && !is_space(text[end])) ++end;
        const std::string_view tok = text.substr(pos, end - pos);
        pos = end;

        const auto caret = tok.find('^');
        if (caret == std::string_view::npos)
            throw ParseError("cycle type factor '" + std::string(tok) + "' is not of the form i^c");
        std::size_t base = 0;
        std::uint64_t mult = 0;
        if (!parse_whole(tok.substr(0, caret), base) || !parse_whole(tok.substr(caret + 1), mult))
            throw ParseError("cycle type factor '" + std::string(tok) + "' is not of the form i^c");
        if (base == 0) throw ParseError("cycle length must be positive in '" + std::string(tok) + "'");
        if (!counts.emplace(base, mult).second)
            throw ParseError("duplicate cycle length " + std::to_string(base));
    }
    CycleType ct(std::move(counts));
    if (expected_degree && ct.degree() != *expected_degree)
        throw ParseError("cycle type '" + std::string(text) + "' has degree " + std::to_string(ct.degree()) +
                         ", expected " + std::to_string(*expected_degree));
    return ct;
}

std::uint64_t CycleType::count(std::size_t length) const {
    const auto it = counts_.find(length);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t CycleType::cycle_count() const noexcept {
    std::uint64_t total = 0;
    for (const auto& [len, c] : counts_) total += c;
    return total;
}

bool CycleType::supported_on_one_two() const noexcept {
    return counts_.empty() || counts_.rbegin()->first <= 2;
}

std::string CycleType::to_string() const {
    std::string out;
    for (const auto& [len, c] : counts_) {
        if (!out.empty()) out += ' ';
        out += std::to_string(len) + "^" + std::to_string(c);
    }
    return out;
}

std::size_t OrbitPartition::degree() const noexcept {
    std::size_t n = 0;
    for (const auto& [k, count] : size_histogram) n += k * count;
    return n;
}

std::size_t OrbitPartition::count_of_size(std::size_t k) const {
    const auto it = size_histogram.find(k);
    return it == size_histogram.end() ? 0 : it->second;
}

std::size_t OrbitPartition::short_orbit_total() const noexcept {
    const std::size_t half = degree() / 2;
    std::size_t total = 0;
    for (const auto& [k, count] : size_histogram)
        if (k <= half) total += count;
    return total;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree())
        throw DegreeMismatch("compose: degrees " + std::to_string(p.degree()) + " and " +
                             std::to_string(q.degree()));
    std::vector<Point> im(p.degree());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = p.images_[q.images_[i]];
    return Permutation(std::move(im), Permutation::Unchecked{});
}

CycleType cycle_type(const Permutation& p) {
    std::map<std::size_t, std::uint64_t> counts;
    std::vector<char> seen(p.degree(), 0);
    for (Point start = 0; start < p.degree(); ++start) {
        if (seen[start]) continue;
        std::size_t len = 0;
        for (Point x = start; !seen[x]; x = p(x)) {
            seen[x] = 1;
            ++len;
        }
        ++counts[len];
    }
    return CycleType(std::move(counts));
}

Parity parity(const Permutation& p) {
    std::vector<char> seen(p.degree(), 0);
    std::size_t cycles = 0;
    for (Point start = 0; start < p.degree(); ++start) {
        if (seen[start]) continue;
        ++cycles;
        for (Point x = start; !seen[x]; x = p(x)) seen[x] = 1;
    }
    return (p.degree() - cycles) % 2 == 0 ? Parity::even : Parity::odd;
}

BigInt class_size(const CycleType& ct) {
    BigInt denom = 1;
    for (const auto& [len, c] : ct.counts()) {
        BigInt pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), len, c);
        denom *= pw * factorial(c);
    }
    return factorial(ct.degree()) / denom;
}

Permutation fill_skeleton(const CycleType& ct, std::span<const Point> points) {
    if (points.size() != ct.degree())
        throw DegreeMismatch("fill_skeleton: arrangement size differs from cycle-type degree");
    std::vector<Point> im(points.size());
    std::size_t at = 0;
    for (const auto& [len, c] : ct.counts()) {
        for (std::uint64_t rep = 0; rep < c; ++rep) {
            for (std::size_t j = 0; j + 1 < len; ++j) im[points[at + j]] = points[at + j + 1];
            im[points[at + len - 1]] = points[at];
            at += len;
        }
    }
    return Permutation(std::move(im), Permutation::Unchecked{});
}

Permutation sample_with_cycle_type(const CycleType& ct, Rng& rng) {
    std::vector<Point> points(ct.degree());
    std::iota(points.begin(), points.end(), Point{0});
    std::shuffle(points.begin(), points.end(), rng);
    return fill_skeleton(ct, points);
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), Point{0});
}

Point UnionFind::find(Point x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(Point x, Point y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --sets_;
    return true;
}

OrbitPartition orbits(std::span<const Permutation> gens, std::size_t degree) {
    for (const auto& g : gens)
        if (g.degree() != degree)
            throw DegreeMismatch("orbits: generator of degree " + std::to_string(g.degree()) +
                                 " on " + std::to_string(degree) + " points");
    UnionFind uf(degree);
    for (const auto& g : gens)
        for (Point i = 0; i < degree; ++i) uf.unite(i, g(i));

    OrbitPartition out;
    std::vector<std::int64_t> block_of(degree, -1);
    for (Point i = 0; i < degree; ++i) {
        const Point root = uf.find(i);
        if (block_of[root] < 0) {
            block_of[root] = static_cast<std::int64_t>(out.blocks.size());
            out.blocks.emplace_back();
        }
        out.blocks[static_cast<std::size_t>(block_of[root])].push_back(i);
    }
    for (const auto& b : out.blocks) ++out.size_histogram[b.size()];
    return out;
}

}  // namespace genprob
