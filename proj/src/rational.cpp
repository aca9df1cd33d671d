// Copyright 2026 The otlab authors
//
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

#include "otlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "otlab/error.hpp"

namespace otlab {

Rat rat_of(double x) {
  if (!std::isfinite(x)) throw InstanceError("non-finite value has no rational form");
  Rat q(x);
  q.canonicalize();
  return q;
}

double to_double(const Rat& q) { return q.get_d(); }

std::string rat_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Exact decimal parse: [+-]digits[.digits][(e|E)[+-]digits]
Rat parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::string int_part, frac_part, exp_part;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) int_part += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) frac_part += s[pos++];
  }
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    if (pos >= s.size()) throw ConfigError("bad numeric literal: '" + s + "'");
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) exp_part += s[pos++];
    if (exp_part.empty()) throw ConfigError("bad numeric literal: '" + s + "'");
    exp10 = std::strtol(exp_part.c_str(), nullptr, 10);
    if (eneg) exp10 = -exp10;
  }
  if (pos != s.size() || (int_part.empty() && frac_part.empty()))
    throw ConfigError("bad numeric literal: '" + s + "'");

  mpz_class mantissa((int_part.empty() ? "0" : int_part) + frac_part, 10);
  long shift = exp10 - static_cast<long>(frac_part.size());
  mpz_class num = mantissa, den = 1;
  mpz_class ten = 10;
  if (shift >= 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
    num *= scale;
  } else {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  Rat q(num, den);
  q.canonicalize();
  return neg ? Rat(-q) : q;
}

}  // namespace

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw ConfigError("empty numeric literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    std::string num_digits = (!num.empty() && (num[0] == '+' || num[0] == '-')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den))
      throw ConfigError("bad rational literal: '" + s + "'");
    Rat q(mpz_class(num, 10), mpz_class(den, 10));
    if (q.get_den() == 0) throw ConfigError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  return parse_decimal(s);
}

}  // namespace otlab
