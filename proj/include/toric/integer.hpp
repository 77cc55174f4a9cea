#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Floor division and the matching nonnegative remainder (for b > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

Integer ceil_of(const Rational& q);
Integer floor_of(const Rational& q);

Integer gcd_of(std::span<const Integer> v);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);
bool is_zero(std::span<const Integer> v);

/// Divides out the content; the zero vector is returned unchanged.
IntVector primitive(std::span<const Integer> v);

IntVector to_integers(const std::vector<long>& v);
std::string to_string(std::span<const Integer> v);
std::string to_string(std::span<const Rational> v);

}  // namespace toric
