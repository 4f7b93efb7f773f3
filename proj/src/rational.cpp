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

#include "ilplan/rational.hpp"

#include <charconv>

#include "ilplan/error.hpp"

namespace ilplan {
namespace {

int64_t parse_int(std::string_view s, std::string_view whole) {
  int64_t v = 0;
  if (s.empty()) throw ParseError("", "invalid rational '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("", "invalid rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) throw PreconditionError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const int64_t g = std::gcd(n < 0 ? -n : n, d);
  num_ = g == 0 ? 0 : n / g;
  den_ = g == 0 ? 1 : d / g;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 12) frac = frac.substr(0, 12);
    bool negative = !whole.empty() && whole.front() == '-';
    int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole, text);
    int64_t f = frac.empty() ? 0 : parse_int(frac, text);
    int64_t scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    int64_t magnitude = (w < 0 ? -w : w) * scale + f;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text, text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(Rational a, Rational b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

}  // namespace ilplan
