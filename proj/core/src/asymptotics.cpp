#include "genprob/asymptotics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "genprob/errors.hpp"
#include "genprob/quadrature.hpp"

namespace genprob {

namespace {

constexpr const char* indeterminate_message =
    "limit is indeterminate at (x, x') = (0, inf) or (inf, 0) with yy' < 1: "
    "the generation probability can be close to 0 or to 1 there";

}  // namespace

ExtendedReal ExtendedReal::parse(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "inf" || lower == "infinity" || lower == "+inf") return infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(lower, &used);
        if (used != lower.size() || !std::isfinite(v)) throw ParseError("");
        return ExtendedReal(v);
    } catch (const std::exception&) {
        throw ParseError("not a number or 'inf': '" + std::string(text) + "'");
    }
}

double ExtendedReal::value() const {
    if (infinite_) throw DomainError("value() of an infinite extended real");
    return value_;
}

std::string ExtendedReal::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os << value_;
    return os.str();
}

void LimitParams::validate() const {
    if (!(y >= 0.0 && y <= 1.0) || !(y_prime >= 0.0 && y_prime <= 1.0))
        throw DomainError("y and y' must lie in [0, 1]");
    if ((!x.is_infinite() && !(x.value() >= 0.0)) || (!x_prime.is_infinite() && !(x_prime.value() >= 0.0)))
        throw DomainError("x and x' must be nonnegative");
}

bool LimitParams::indeterminate() const {
    if (y * y_prime >= 1.0) return false;
    return (x.is_zero() && x_prime.is_infinite()) || (x.is_infinite() && x_prime.is_zero());
}

double generation_probability_limit(const LimitParams& p) {
    p.validate();
    if (p.indeterminate()) throw IndeterminateLimit(indeterminate_message);
    if (p.x.is_infinite() || p.x_prime.is_infinite()) return 0.0;
    const double yy = p.y * p.y_prime;
    if (yy >= 1.0) return 0.0;
    const double x = p.x.value(), xp = p.x_prime.value();
    const double q = 1.0 - yy;
    return std::sqrt(q) * std::exp(-(x * xp + 0.5 * x * x * p.y_prime + 0.5 * xp * xp * p.y) / q);
}

ExtendedReal expected_N_limit(const LimitParams& p) {
    p.validate();
    if (p.indeterminate()) throw IndeterminateLimit(indeterminate_message);
    if (p.x.is_infinite() || p.x_prime.is_infinite()) return ExtendedReal::infinity();
    const double yy = p.y * p.y_prime;
    if (yy >= 1.0) return ExtendedReal::infinity();
    const double x = p.x.value(), xp = p.x_prime.value();
    const double q = 1.0 - yy;
    return (x * xp + 0.5 * x * x * p.y_prime + 0.5 * xp * xp * p.y) / q - 0.5 * std::log1p(-yy);
}

double sigma1_limit(const LimitParams& p, std::size_t k) {
    p.validate();
    if (k == 0) throw DomainError("sigma1_limit: k must be at least 1");
    if (p.x.is_infinite() || p.x_prime.is_infinite()) throw DomainError("sigma1_limit: x and x' must be finite");
    const double x = p.x.value(), xp = p.x_prime.value(), y = p.y, yp = p.y_prime;
    const auto m = static_cast<double>(k / 2);
    if (k % 2 == 1) return x * xp * std::pow(y * yp, m);
    return 0.5 * x * x * std::pow(y, m - 1) * std::pow(yp, m) + 0.5 * xp * xp * std::pow(yp, m - 1) * std::pow(y, m) +
           std::pow(y * yp, m) / (2.0 * m);
}

LimitConsistency limit_consistency_check(const LimitParams& p, std::size_t kmax) {
    p.validate();
    if (p.x.is_infinite() || p.x_prime.is_infinite() || p.y * p.y_prime >= 1.0)
        throw DomainError("limit_consistency_check: needs finite x, x' and yy' < 1");
    LimitConsistency out;
    out.limit = generation_probability_limit(p);
    for (std::size_t k = 1; k <= kmax; ++k) out.partial_sum += sigma1_limit(p, k);
    out.partial_prediction = std::exp(-out.partial_sum);
    out.partial_gap = std::abs(out.partial_prediction - out.limit);
    out.identity_gap = std::abs(std::exp(-expected_N_limit(p).value()) - out.limit);
    return out;
}

double expint_e1(double t) {
    if (!(t > 0.0)) throw DomainError("expint_e1: argument must be positive");
    if (t <= 1.5) {
        // E1(t) = -gamma - ln t - sum_{k>=1} (-t)^k / (k k!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -t / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -std::numbers::egamma - std::log(t) - sum;
    }
    // Modified Lentz on e^-t / (t + 1 - 1^2/(t + 3 - 2^2/(t + 5 - ...)))
    constexpr double tiny = 1e-300;
    double b = t + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return h * std::exp(-t);
    }
    throw NumericError("expint_e1: continued fraction did not converge");
}

double partition_b() { return std::numbers::pi / std::sqrt(6.0); }
double partition_a() { return 1.0 / (4.0 * std::sqrt(3.0)); }

ApplicationConstant application_constant() {
    const double b = partition_b(), b2 = b * b;
    ApplicationConstant out;
    out.e1 = expint_e1(b2);
    out.value = b2 * std::exp(b2) * out.e1;

    // Box [0, L]^2 with L = 40/b; outside it the integrand is below e^{-b(x+x')},
    // so the neglected mass is at most 2 b^2 (1/b)(e^{-bL}/b) = 2 e^{-40}.
    const double limit = 40.0 / b;
    out.tail_bound = 2.0 * std::exp(-b * limit);
    double inner_error = 0.0;
    bool inner_ok = true;
    auto outer = [&](double xp) {
        const auto inner = integrate_adaptive([&](double x) { return std::exp(-x * xp - b * (x + xp)); }, 0.0, limit,
                                              1e-15, 1e-12);
        inner_ok = inner_ok && inner.converged;
        inner_error = std::max(inner_error, inner.error_estimate);
        return inner.value;
    };
    const auto res = integrate_adaptive(outer, 0.0, limit, 1e-14, 1e-12);
    out.quadrature = b2 * res.value;
    out.quadrature_error = b2 * (res.error_estimate + limit * inner_error);
    if (!res.converged || !inner_ok) throw NumericError("application_constant: quadrature did not converge");
    if (std::abs(out.quadrature - out.value) > 1e-6)
        throw NumericError("application_constant: quadrature and E1 routes disagree");
    return out;
}

SplitConstants split_constants() {
    const double c = application_constant().value;
    return {c / 4.0, 3.0 * c / 4.0};
}

}  // namespace genprob
