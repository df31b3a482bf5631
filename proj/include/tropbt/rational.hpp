#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tropbt {

using Rational = mpq_class;
using Integer = mpz_class;

enum class ErrorCode {
    MalformedRational,
    DuplicateTerm,
    NotOfDeclaredDegree,
    TermOutsideTriangle,
    MalformedInput,
    DegenerateGeometry,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::MalformedRational: return "malformed_rational";
    case ErrorCode::DuplicateTerm: return "duplicate_term";
    case ErrorCode::NotOfDeclaredDegree: return "not_of_declared_degree";
    case ErrorCode::TermOutsideTriangle: return "term_outside_triangle";
    case ErrorCode::MalformedInput: return "malformed_input";
    case ErrorCode::DegenerateGeometry: return "degenerate_geometry";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Rational rat(long num, long den = 1) {
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q" with q > 0 written in decimal digits.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { return Error(ErrorCode::MalformedRational, "malformed rational: '" + std::string(s) + "'"); };
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
    if (digits == 0) throw bad();
    std::size_t slash = std::string_view::npos;
    if (i < s.size() && s[i] == '/') {
        slash = i++;
        std::size_t dd = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++dd; }
        if (dd == 0) throw bad();
    }
    if (i != s.size()) throw bad();
    std::string text(s[0] == '+' ? s.substr(1) : s);
    if (slash != std::string_view::npos) {
        std::string den(s.substr(slash + 1));
        if (Integer(den) == 0) throw bad();
    }
    Rational r(text, 10);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational abs_value(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct Point2 {
    Rational x, y;

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    friend bool operator<(const Point2& a, const Point2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

// Primitive integer direction vector.
struct Direction {
    std::int64_t dx = 0, dy = 0;

    friend bool operator==(const Direction& a, const Direction& b) { return a.dx == b.dx && a.dy == b.dy; }
    friend bool operator!=(const Direction& a, const Direction& b) { return !(a == b); }
    friend bool operator<(const Direction& a, const Direction& b) {
        return a.dx != b.dx ? a.dx < b.dx : a.dy < b.dy;
    }
    Direction operator-() const { return {-dx, -dy}; }
};

inline Direction primitive(std::int64_t dx, std::int64_t dy) {
    std::int64_t g = gcd64(dx, dy);
    if (g == 0) throw Error(ErrorCode::DegenerateGeometry, "zero vector has no primitive direction");
    return {dx / g, dy / g};
}

inline std::int64_t cross(const Direction& a, const Direction& b) { return a.dx * b.dy - a.dy * b.dx; }

inline Point2 offset_point(const Point2& p, const Direction& u, const Rational& t) {
    return {Rational(p.x + t * u.dx), Rational(p.y + t * u.dy)};
}

// Parameter t with p = base + t·u; requires p on that line.
inline Rational param_along(const Point2& base, const Direction& u, const Point2& p) {
    if (u.dx != 0) return Rational((p.x - base.x) / u.dx);
    return Rational((p.y - base.y) / u.dy);
}

}  // namespace tropbt
