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
#include "multient/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace multient {

Rational exact_rational(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("exact_rational: non-finite value");
    }
    if (x == 0.0) {
        return Rational(0);
    }
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    // mantissa * 2^53 is an integer for IEEE doubles.
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Integer num(scaled);
    Integer den(1);
    if (exponent >= 0) {
        num <<= exponent;
    } else {
        den <<= -exponent;
    }
    return Rational(num, den);
}

Rational approximate_rational(double x, std::int64_t max_denominator) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("approximate_rational: non-finite value");
    }
    if (max_denominator < 1) {
        throw std::invalid_argument("approximate_rational: max_denominator < 1");
    }
    const Rational target = exact_rational(x);
    // Convergents h/k of the continued fraction of the exact value.
    Integer h_prev(1), h(0), k_prev(0), k(1);
    Rational rest = target;
    Rational best(0);
    for (int step = 0; step < 64; ++step) {
        Integer a = boost::multiprecision::numerator(rest) /
                    boost::multiprecision::denominator(rest);
        if (rest < 0 && a * boost::multiprecision::denominator(rest) !=
                            boost::multiprecision::numerator(rest)) {
            a -= 1; // floor for negatives
        }
        Integer h_next = a * h_prev + h;
        Integer k_next = a * k_prev + k;
        if (k_next > max_denominator) {
            break;
        }
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        best = Rational(h_prev, k_prev);
        Rational frac = rest - Rational(a);
        if (frac == 0) {
            break;
        }
        rest = 1 / frac;
    }
    return best;
}

double to_double(const Rational &q) { return q.convert_to<double>(); }

std::string to_string(const Rational &q) {
    if (boost::multiprecision::denominator(q) == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

std::string to_string(const Integer &z) { return z.str(); }

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    Integer value(0);
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        text = text.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        const Integer mag = parse_integer(exp_part, whole);
        if (mag > 4000) {
            throw std::invalid_argument("rational exponent out of range");
        }
        exponent = mag.convert_to<long>() * (exp_negative ? -1 : 1);
    }
    std::string digits;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view frac = text.substr(dot + 1);
        digits = std::string(text.substr(0, dot)) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        digits = std::string(text);
    }
    Integer num = parse_integer(digits, whole);
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
    Rational value = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Rational num = parse_decimal(text.substr(0, slash), whole);
        const Rational den = parse_decimal(text.substr(slash + 1), whole);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        }
        return num / den;
    }
    return parse_decimal(text, whole);
}

} // namespace multient
