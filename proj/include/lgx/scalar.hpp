#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace lgx {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Exact rational carrying a p-adic absolute value. Values are never
/// rounded; only comparisons look at the precision window (N digits).
class Padic {
public:
    Padic() : value_(0), prime_(2), prec_(24) {}
    Padic(cpp_rational v, long prime, int prec)
        : value_(std::move(v)), prime_(prime), prec_(prec) {
        if (prime < 2) throw std::invalid_argument("Padic: prime must be >= 2");
        if (prec < 1) throw std::invalid_argument("Padic: precision must be >= 1");
    }

    const cpp_rational& value() const { return value_; }
    long prime() const { return prime_; }
    int precision() const { return prec_; }
    bool is_zero() const { return value_ == 0; }

    /// p-adic valuation; LONG_MAX for 0.
    long valuation() const {
        if (value_ == 0) return std::numeric_limits<long>::max();
        return int_valuation(numerator(value_)) - int_valuation(denominator(value_));
    }

    /// |x|_p = p^{-v_p(x)} as a real number; |p|_p = 1/p.
    double abs() const {
        if (value_ == 0) return 0.0;
        return std::pow(static_cast<double>(prime_), -static_cast<double>(valuation()));
    }

    /// Equality within the precision window: |x-y|_p <= p^{-N}.
    bool eq_window(const Padic& o) const {
        return (*this - o).abs() <= std::pow(static_cast<double>(prime_), -prec_) + 0.0;
    }

    Padic operator-() const { return Padic(-value_, prime_, prec_); }
    Padic operator+(const Padic& o) const { return bin(o, value_ + o.value_); }
    Padic operator-(const Padic& o) const { return bin(o, value_ - o.value_); }
    Padic operator*(const Padic& o) const { return bin(o, value_ * o.value_); }
    Padic operator/(const Padic& o) const {
        if (o.value_ == 0) throw std::domain_error("Padic: division by zero");
        return bin(o, value_ / o.value_);
    }
    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }
    Padic& operator/=(const Padic& o) { return *this = *this / o; }
    bool operator==(const Padic& o) const { return prime_ == o.prime_ && value_ == o.value_; }
    bool operator!=(const Padic& o) const { return !(*this == o); }

    std::string str() const { return value_.str(); }

private:
    long int_valuation(cpp_int n) const {
        long v = 0;
        const cpp_int p(prime_);
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        return v;
    }

    Padic bin(const Padic& o, cpp_rational v) const {
        if (prime_ != o.prime_)
            throw std::invalid_argument("Padic: mixing different primes");
        return Padic(std::move(v), prime_, std::min(prec_, o.prec_));
    }

    cpp_rational value_;
    long prime_;
    int prec_;
};

/// The real ground field: plain doubles with the standard absolute value.
struct RealField {
    using scalar = double;
    static constexpr bool ultrametric = false;

    double from_int(long n) const { return static_cast<double>(n); }
    double from_ratio(long a, long b) const { return static_cast<double>(a) / static_cast<double>(b); }
    double abs(double x) const { return std::fabs(x); }
    double zero() const { return 0.0; }
    double one() const { return 1.0; }
    bool eq(double a, double b, double tol) const { return std::fabs(a - b) <= tol; }
    std::string kind() const { return "real"; }
};

/// The p-adic ground field Q_p at a fixed prime, precision window N digits.
struct PadicField {
    long p = 2;
    int prec = 24;
    using scalar = Padic;
    static constexpr bool ultrametric = true;

    PadicField() = default;
    PadicField(long prime, int precision) : p(prime), prec(precision) {
        if (prime < 2) throw std::invalid_argument("PadicField: prime must be >= 2");
    }

    Padic from_int(long n) const { return Padic(cpp_rational(n), p, prec); }
    Padic from_ratio(long a, long b) const { return Padic(cpp_rational(a, b), p, prec); }
    double abs(const Padic& x) const { return x.abs(); }
    Padic zero() const { return from_int(0); }
    Padic one() const { return from_int(1); }
    bool eq(const Padic& a, const Padic& b, double /*tol*/) const { return a.eq_window(b); }
    std::string kind() const { return "padic"; }
};

} // namespace lgx
