// Copyright 2026 The steercert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "steercert/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "steercert/errors.hpp"

namespace steercert {

namespace {

constexpr double kMinMarginal = 1e-12;

SteeringValue make_value(double value, double bound, double tol) {
  SteeringValue v;
  v.value = value;
  v.bound = bound;
  v.violated = value > bound + tol;
  v.witness_detail["tol"] = tol;
  return v;
}

}  // namespace

SteeringValue linear_si(const CorrelationTable& table, double tol) {
  auto v = make_value(correlator(table, 0, 0) + correlator(table, 1, 1), kLinearBound, tol);
  // Bob's settings are assumed to be sigma_z (y=0) and sigma_x (y=1).
  v.witness_detail["bob_y0_is_sigma_z"] = 1.0;
  v.witness_detail["bob_y1_is_sigma_x"] = 1.0;
  return v;
}

SteeringValue cffw(const CorrelationTable& table, double tol) {
  const double e00 = correlator(table, 0, 0), e01 = correlator(table, 0, 1);
  const double e10 = correlator(table, 1, 0), e11 = correlator(table, 1, 1);
  const double plus = std::hypot(e00 + e10, e01 + e11);
  const double minus = std::hypot(e00 - e10, e01 - e11);
  auto v = make_value(plus + minus, kCffwBound, tol);
  v.witness_detail["plus_term"] = plus;
  v.witness_detail["minus_term"] = minus;
  return v;
}

double conditional_probability(const CorrelationTable& table, int a, int b, int x, int y) {
  const double marginal = table.alice_marginal(a, x, y);
  if (marginal < kMinMarginal)
    throw InvalidArgument("conditional probability undefined: Alice marginal is zero");
  return table.p(a, b, x, y) / marginal;
}

SteeringValue fgi(const CorrelationTable& table, double tol) {
  // Best (a, b) per diagonal setting pair; the two terms are independent so
  // the max over the 16 pairings factorizes.
  struct Best {
    double value = -1.0;
    int a = -1, b = -1;
  };
  std::array<Best, 2> best;
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) {
      if (table.alice_marginal(a, s, s) < kMinMarginal) continue;
      for (int b = 0; b < 2; ++b) {
        const double pc = conditional_probability(table, a, b, s, s);
        if (pc > best[s].value) best[s] = {pc, a, b};
      }
    }
    if (best[s].a < 0)
      throw MalformedInput("fgi: every Alice outcome has zero marginal for setting " +
                           std::to_string(s));
  }
  auto v = make_value(best[0].value + best[1].value, kFgiBound, tol);
  v.witness_detail["a0"] = best[0].a;
  v.witness_detail["b0"] = best[0].b;
  v.witness_detail["a1"] = best[1].a;
  v.witness_detail["b1"] = best[1].b;
  return v;
}

double mutual_predictability(const CorrelationTable& table, int x, int y) {
  return std::clamp(table.p(0, 0, x, y) + table.p(1, 1, x, y), 0.0, 1.0);
}

double e_quantity(const CorrelationTable& table) {
  return std::min(mutual_predictability(table, 0, 0), mutual_predictability(table, 1, 1));
}

}  // namespace steercert
