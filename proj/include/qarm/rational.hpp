// Copyright 2026 The qarm-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qarm {

/// Exact fraction for support values and thresholds. Frequent/infrequent
/// decisions at boundaries like 1/2 must not hinge on binary rounding, so
/// supports stay rational internally and become floats only for reporting.
class Rational {
  public:
    Rational() = default;
    Rational(int64_t numerator, int64_t denominator) : num_(numerator), den_(denominator) {
        if (den_ == 0) {
            throw std::invalid_argument("zero denominator");
        }
        normalize();
    }

    /// Parses a plain decimal like "0.8", "1", or ".25" into an exact
    /// fraction (8/10, 1/1, 25/100 before reduction).
    static Rational from_decimal(const std::string &text) {
        if (text.empty()) {
            throw std::invalid_argument("empty decimal string");
        }
        size_t pos = 0;
        bool negative = false;
        if (text[pos] == '+' || text[pos] == '-') {
            negative = text[pos] == '-';
            ++pos;
        }
        int64_t value = 0;
        int64_t scale = 1;
        bool seen_digit = false;
        bool seen_dot = false;
        for (; pos < text.size(); ++pos) {
            const char ch = text[pos];
            if (ch == '.') {
                if (seen_dot) {
                    throw std::invalid_argument("malformed decimal: " + text);
                }
                seen_dot = true;
            } else if (ch >= '0' && ch <= '9') {
                if (value > (INT64_MAX - 9) / 10) {
                    throw std::invalid_argument("decimal out of range: " + text);
                }
                value = value * 10 + (ch - '0');
                if (seen_dot) {
                    if (scale > INT64_MAX / 10) {
                        throw std::invalid_argument("decimal too precise: " + text);
                    }
                    scale *= 10;
                }
                seen_digit = true;
            } else {
                throw std::invalid_argument("malformed decimal: " + text);
            }
        }
        if (!seen_digit) {
            throw std::invalid_argument("malformed decimal: " + text);
        }
        return Rational(negative ? -value : value, scale);
    }

    int64_t numerator() const { return num_; }
    int64_t denominator() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend bool operator==(const Rational &a, const Rational &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational &a, const Rational &b) { return !(a == b); }
    friend bool operator<(const Rational &a, const Rational &b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
    friend bool operator>(const Rational &a, const Rational &b) { return b < a; }
    friend bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }

  private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    int64_t num_ = 0;
    int64_t den_ = 1;
};

} // namespace qarm
