#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bicrit {

// Exact rational arithmetic for all scheduling-side quantities. Completion
// times, makespans and ratio checks stay exact; floating point appears only
// in the analysis module.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
Rat rat_from_double(double v);

// Largest multiple of 1/den that is <= v. Used to pin a real-valued rho to a
// rational from below so that exact comparisons against 1+rho stay safe.
Rat floor_to_denominator(double v, long long den);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& r);

// Accepts "p" or "p/q" (optional sign, q > 0 after normalization).
Rat rat_parse(std::string_view s);

}  // namespace bicrit
