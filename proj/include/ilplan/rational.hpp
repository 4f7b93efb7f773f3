// Copyright 2026 The ilplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ILPLAN_RATIONAL_HPP_
#define ILPLAN_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace ilplan {

// Exact non-overflowing-in-practice rational with a positive denominator.
// Used for skill costs so the constraint model stays integral.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT
  Rational(int64_t n, int64_t d);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  // Accepts "7", "-3", "1.25", "3/2".
  static Rational parse(std::string_view text);
  std::string str() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace ilplan

#endif  // ILPLAN_RATIONAL_HPP_
