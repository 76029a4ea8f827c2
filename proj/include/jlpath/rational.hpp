#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace jlpath {

using Rational = mpq_class;

// Parses "p", "p/q" or "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

// Floor/ceil for rationals; throws if the result does not fit a long.
long floor_long(const Rational& value);
long ceil_long(const Rational& value);

// Converts an integral rational to long; throws OutOfRange otherwise.
long to_long(const Rational& value);

void hash_combine(std::size_t& seed, std::size_t value);
std::size_t hash_rational(const Rational& value);

}  // namespace jlpath
