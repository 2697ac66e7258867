// Copyright 2026 The multient Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file rational.hpp
 * Arbitrary-precision integers and exact rationals used for counts,
 * copy ratios and certificate verification.
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace multient {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational exact_rational(double x);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents).
Rational approximate_rational(double x, std::int64_t max_denominator);

double to_double(const Rational &q);

/// "p" or "p/q".
std::string to_string(const Rational &q);
std::string to_string(const Integer &z);

/// Accepts "p", "p/q" and finite decimal literals such as "0.25" or "1e-3".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

} // namespace multient
