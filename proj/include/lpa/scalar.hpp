#ifndef LPA_SCALAR_HPP
#define LPA_SCALAR_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "lpa/error.hpp"

namespace lpa {

/// Exact rational number on 64-bit numerator/denominator, always reduced,
/// denominator > 0.  Intermediate products go through 128-bit integers; a
/// result that does not fit back into 64 bits raises Error.  Coefficient
/// growth in this library is tiny (structure constants are 0/±1), so the
/// fixed width is not a practical limit.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT: implicit on purpose
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make_reduced((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return make_reduced((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "n" or "n/d" with an optional leading minus.
    static Rational parse(std::string_view s) {
        if (s.empty()) throw ParseError("empty rational literal");
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(std::stoll(std::string(s)));
            long long n = std::stoll(std::string(s.substr(0, slash)));
            long long d = std::stoll(std::string(s.substr(slash + 1)));
            if (d <= 0) throw ParseError("rational denominator must be positive: " + std::string(s));
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal: " + std::string(s));
        } catch (const std::out_of_range&) {
            throw ParseError("rational literal out of range: " + std::string(s));
        }
    }

private:
    static Rational make_reduced(__int128 n, __int128 d) {
        if (d == 0) throw Error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = -(((__int128)1) << 63), hi = (((__int128)1) << 63) - 1;
        if (n < lo || n > hi || d > hi) throw Error("rational overflow");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void reduce() {
        if (den_ == 0) throw Error("zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

enum class ScalarMode { Rationals, Integers, GFp };

/// The coefficient domain of an algebra context: Q, Z, or GF(p).
/// Values are carried as Rational; GF(p) values are residues k/1 with
/// 0 <= k < p, and Z values keep denominator 1.  All arithmetic funnels
/// through normalize() so the representation stays canonical.
class ScalarField {
public:
    static ScalarField rationals() { return ScalarField(ScalarMode::Rationals, 0); }
    static ScalarField integers() { return ScalarField(ScalarMode::Integers, 0); }
    static ScalarField gfp(long long p) {
        if (p < 2) throw Error("GF(p): p must be a prime >= 2");
        for (long long q = 2; q * q <= p; ++q)
            if (p % q == 0) throw Error("GF(p): " + std::to_string(p) + " is not prime");
        return ScalarField(ScalarMode::GFp, p);
    }

    ScalarMode mode() const { return mode_; }
    long long prime() const { return p_; }
    bool is_field() const { return mode_ != ScalarMode::Integers; }

    bool operator==(const ScalarField& o) const { return mode_ == o.mode_ && p_ == o.p_; }

    /// Canonical representative of an externally supplied value.
    /// GF(p): n/d becomes n * d^-1 mod p (error if p | d).
    /// Z: rejects non-integers.
    Rational normalize(const Rational& x) const {
        switch (mode_) {
            case ScalarMode::Rationals: return x;
            case ScalarMode::Integers:
                if (!x.is_integer()) throw Error("integer scalars required, got " + x.str());
                return x;
            case ScalarMode::GFp: {
                long long d = mod(x.den());
                if (d == 0) throw Error("denominator divisible by p in GF(" + std::to_string(p_) + ")");
                long long n = mod(x.num());
                return Rational(mulmod(n, inverse(d)));
            }
        }
        return x;
    }

    Rational add(const Rational& a, const Rational& b) const { return normalize_fast(a + b); }
    Rational mul(const Rational& a, const Rational& b) const {
        if (mode_ == ScalarMode::GFp) return Rational(mulmod(a.num(), b.num()));
        return a * b;
    }
    Rational neg(const Rational& a) const { return normalize_fast(-a); }
    Rational inv(const Rational& a) const {
        if (!is_field()) throw Error("division is not available over the integers");
        if (a.is_zero()) throw Error("division by zero");
        if (mode_ == ScalarMode::GFp) return Rational(inverse(a.num()));
        return Rational(1) / a;
    }

    std::string str(const Rational& a) const { return a.str(); }

private:
    ScalarField(ScalarMode m, long long p) : mode_(m), p_(p) {}

    Rational normalize_fast(const Rational& x) const {
        if (mode_ == ScalarMode::GFp) return Rational(mod(x.num()));  // inputs are residues
        return x;
    }
    long long mod(long long x) const {
        long long r = x % p_;
        return r < 0 ? r + p_ : r;
    }
    long long mulmod(long long a, long long b) const {
        return (long long)(((__int128)a * b) % p_);
    }
    long long inverse(long long a) const {
        // extended Euclid; a is nonzero mod p
        long long t = 0, nt = 1, r = p_, nr = mod(a);
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (r != 1) throw Error("not invertible mod p");
        return mod(t);
    }

    ScalarMode mode_;
    long long p_;
};

}  // namespace lpa

#endif
