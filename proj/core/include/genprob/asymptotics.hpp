#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace genprob {

/// Nonnegative extended real: a finite value or +infinity. Infinity is a tag,
/// not a floating-point inf, so comparisons against the indeterminate corner
/// are exact.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double value) : value_(value) {}  // NOLINT: implicit from finite values

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }
    /// Accepts a decimal number or "inf"/"infinity" (case-insensitive).
    static ExtendedReal parse(std::string_view text);

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_zero() const noexcept { return !infinite_ && value_ == 0.0; }
    /// Finite value; throws DomainError when infinite.
    double value() const;

    std::string to_string() const;

    friend constexpr bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// (x, y, x', y'): c1 ~ x sqrt(n), 2 c2 ~ y n, and likewise for the second class.
struct LimitParams {
    ExtendedReal x;
    double y = 0.0;
    ExtendedReal x_prime;
    double y_prime = 0.0;

    /// Throws DomainError unless 0 <= y, y' <= 1 and x, x' >= 0.
    void validate() const;
    /// (x, x') in {(0, inf), (inf, 0)} with yy' < 1.
    bool indeterminate() const;
    LimitParams swapped() const { return {x_prime, y_prime, x, y}; }
};

/// Limit of P(G transitive) and P(G >= A_n):
/// (1 - yy')^(1/2) exp(-(xx' + x^2 y'/2 + x'^2 y/2) / (1 - yy')), and 0 when
/// y = y' = 1 or either x is infinite. Throws IndeterminateLimit at the corner.
double generation_probability_limit(const LimitParams& p);

/// Limit of E N: (xx' + x^2 y'/2 + x'^2 y/2)/(1 - yy') - log(1 - yy')/2,
/// infinite on the zero-probability edges.
ExtendedReal expected_N_limit(const LimitParams& p);

/// Limit of the 1- and 2-cycle part of E N_k, written without the 1/y pole:
/// odd k = 2m+1: x x' (yy')^m; even k = 2m:
/// x^2 y^(m-1) y'^m / 2 + x'^2 y'^(m-1) y^m / 2 + (yy')^m / (2m).
double sigma1_limit(const LimitParams& p, std::size_t k);

struct LimitConsistency {
    double limit = 0.0;               // generation_probability_limit
    double partial_sum = 0.0;         // sum of sigma1_limit over k <= kmax
    double partial_prediction = 0.0;  // exp(-partial_sum)
    double partial_gap = 0.0;         // |partial_prediction - limit|
    double identity_gap = 0.0;        // |exp(-expected_N_limit) - limit|
};

/// Requires finite x, x' and yy' < 1.
LimitConsistency limit_consistency_check(const LimitParams& p, std::size_t kmax);

/// Exponential integral E1(t) = int_t^inf e^-u / u du, t > 0: power series for
/// t <= 1.5, continued fraction beyond.
double expint_e1(double t);

/// b = pi / sqrt(6), the partition-asymptotic constant.
double partition_b();
/// a = 1 / (4 sqrt(3)).
double partition_a();

struct ApplicationConstant {
    double value = 0.0;             // b^2 e^(b^2) E1(b^2)
    double e1 = 0.0;                // E1(b^2)
    double quadrature = 0.0;        // b^2 * double integral over the truncated box
    double quadrature_error = 0.0;  // estimated quadrature error
    double tail_bound = 0.0;        // mass outside the box
};

/// Limiting probability that random elements of random classes generate a
/// group containing A_n. Throws NumericError if the quadrature does not
/// converge or disagrees with the E1 route by more than 1e-6.
ApplicationConstant application_constant();

struct SplitConstants {
    double alternating = 0.0;  // C/4
    double symmetric = 0.0;    // 3C/4
};

SplitConstants split_constants();

}  // namespace genprob
