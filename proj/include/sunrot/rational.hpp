#pragma once

// Exact rational arithmetic. Thin value wrapper over an arbitrary-precision
// rational kept in canonical form (reduced, denominator > 0). Serialization
// is "p/q", or "p" when the denominator is 1.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sunrot {

using BigInt = boost::multiprecision::cpp_int;

class Rat {
public:
    Rat() : v_(0) {}
    Rat(long long n) : v_(n) {}
    explicit Rat(const BigInt& n) : v_(n) {}
    Rat(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_ = boost::multiprecision::cpp_rational(n, d);
    }
    Rat(const BigInt& n, const BigInt& d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_ = boost::multiprecision::cpp_rational(n, d);
    }

    // Accepts "p", "-p", "p/q"; whitespace is not tolerated.
    static Rat parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rat: empty string");
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                check_int(s);
                return Rat(BigInt(s), BigInt(1));
            }
            std::string num = s.substr(0, slash);
            std::string den = s.substr(slash + 1);
            check_int(num);
            check_int(den);
            return Rat(BigInt(num), BigInt(den));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("Rat: bad literal '" + s + "'");
        }
    }

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    std::string str() const {
        if (den() == 1) return num().str();
        return num().str() + "/" + den().str();
    }

    double to_double() const { return static_cast<double>(v_); }

    // Largest integer <= value.
    BigInt floor() const {
        BigInt q = num() / den();
        if (num() < 0 && q * den() != num()) --q;
        return q;
    }
    long long floor_ll() const {
        BigInt f = floor();
        if (f < std::numeric_limits<long long>::min() ||
            f > std::numeric_limits<long long>::max())
            throw std::overflow_error("Rat: floor out of integer range");
        return static_cast<long long>(f);
    }
    bool is_integer() const { return den() == 1; }

    Rat operator-() const { Rat r; r.v_ = -v_; return r; }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.v_ == 0) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

private:
    static void check_int(const std::string& s) {
        if (s.empty()) throw std::runtime_error("empty");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::runtime_error("sign only");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::runtime_error("digit");
    }

    boost::multiprecision::cpp_rational v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat abs(const Rat& a) { return a < Rat(0) ? -a : a; }

}  // namespace sunrot
