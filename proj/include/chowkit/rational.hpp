// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chowkit {

// GMP keeps mpq_class canonical (lowest terms, positive denominator) as long
// as every write goes through its arithmetic operators.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "a" or "a/b" with optional leading sign.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace chowkit
