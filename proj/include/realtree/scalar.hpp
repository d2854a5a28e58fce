#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>

namespace realtree {

// Exact length type. All acceptance-grade identities (four-point booleans,
// zero hyperbolicity of tree metrics, realization round trips) hold with no
// tolerance when lengths are Rat; `double` mode uses an epsilon instead.
using Rat = boost::rational<long long>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double half(double x) { return 0.5 * x; }
    static double abs(double x) { return std::fabs(x); }
    static double default_tol() { return 1e-9; }
    static double from_int(long long k) { return static_cast<double>(k); }
    static double to_double(double x) { return x; }
};

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat half(const Rat& x) { return x / 2; }
    static Rat abs(const Rat& x) { return x < Rat(0) ? -x : x; }
    static Rat default_tol() { return Rat(0); }
    static Rat from_int(long long k) { return Rat(k); }
    static double to_double(const Rat& x) { return boost::rational_cast<double>(x); }
};

template <>
struct scalar_traits<long long> {
    static constexpr bool exact = true;
    static long long zero() { return 0; }
    static long long abs(long long x) { return x < 0 ? -x : x; }
    static long long default_tol() { return 0; }
    static long long from_int(long long k) { return k; }
    static double to_double(long long x) { return static_cast<double>(x); }
    // intentionally no half(): integer mode works with doubled quantities
};

// Canonical text form used by all serialized output: 12 significant digits
// for doubles, exact fractions otherwise.
inline std::string format_length(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_length(long long x) { return std::to_string(x); }

inline std::string format_length(const Rat& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

inline bool parse_length(const std::string& text, double& out) {
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end && *end == '\0' && end != text.c_str();
}

inline bool parse_length(const std::string& text, long long& out) {
    char* end = nullptr;
    out = std::strtoll(text.c_str(), &end, 10);
    return end && *end == '\0' && end != text.c_str();
}

inline bool parse_length(const std::string& text, Rat& out) {
    auto slash = text.find('/');
    long long num = 0, den = 1;
    if (slash == std::string::npos) {
        if (!parse_length(text, num)) return false;
    } else {
        if (!parse_length(text.substr(0, slash), num)) return false;
        if (!parse_length(text.substr(slash + 1), den)) return false;
        if (den == 0) return false;
    }
    out = Rat(num, den);
    return true;
}

// gcd of positive lengths; used to place contour samples on a uniform grid.
inline long long length_gcd(long long a, long long b) { return std::gcd(a, b); }

inline Rat length_gcd(const Rat& a, const Rat& b) {
    if (a == Rat(0)) return b;
    if (b == Rat(0)) return a;
    long long num = std::gcd(a.numerator() * b.denominator(), b.numerator() * a.denominator());
    return Rat(num, a.denominator() * b.denominator());
}

inline double length_gcd(double a, double b) {
    // Euclid with a cutoff; incommensurable inputs drive the result to ~0 and
    // are rejected by the caller via a grid-size cap.
    a = std::fabs(a);
    b = std::fabs(b);
    if (a < b) std::swap(a, b);
    while (b > 1e-9) {
        double r = std::fmod(a, b);
        if (r > b - 1e-9) r = 0.0;  // fmod landed just under b
        a = b;
        b = r;
    }
    return a;
}

}  // namespace realtree
