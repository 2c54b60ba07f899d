#include "genprob/exact.hpp"

#include "genprob/errors.hpp"

namespace genprob {

BigInt factorial(std::uint64_t n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational: '" + text + "'");
    }
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace genprob
