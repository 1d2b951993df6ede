/// @file arith.hpp
/// Exact integer and rational types shared by every module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qhp {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Input that is well-formed but outside an operation's domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that does not parse or violates a structural invariant.
struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("zero denominator");
    return Rational(num, den);
}

inline Int numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Exact integer square root; returns false when v is not a perfect square.
inline bool exact_sqrt(const Int& v, Int& root) {
    if (v < 0) return false;
    root = boost::multiprecision::sqrt(v);
    return root * root == v;
}

}  // namespace qhp
