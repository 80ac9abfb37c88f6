/*
 * Copyright 2026 The costeval Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "costeval/polynomial.h"

#include <algorithm>
#include <utility>

namespace costeval {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  Trim();
}

Polynomial::Polynomial(std::initializer_list<double> coefficients)
    : coefficients_(coefficients) {
  Trim();
}

void Polynomial::Trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0.0) {
    coefficients_.pop_back();
  }
}

double Polynomial::operator()(double x) const {
  double value = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    value = value * x + *it;
  }
  return value;
}

Polynomial Polynomial::Derivative() const {
  std::vector<double> out;
  for (size_t i = 1; i < coefficients_.size(); ++i) {
    out.push_back(coefficients_[i] * static_cast<double>(i));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::Antiderivative() const {
  std::vector<double> out(coefficients_.size() + 1, 0.0);
  for (size_t i = 0; i < coefficients_.size(); ++i) {
    out[i + 1] = coefficients_[i] / static_cast<double>(i + 1);
  }
  return Polynomial(std::move(out));
}

double Polynomial::Integral(double a, double b) const {
  const Polynomial primitive = Antiderivative();
  return primitive(b) - primitive(a);
}

Polynomial Polynomial::Shifted(double x0) const {
  // Repeated synthetic division by (x - x0) yields the Taylor coefficients.
  std::vector<double> work = coefficients_;
  std::vector<double> out(work.size(), 0.0);
  for (size_t k = 0; k < out.size(); ++k) {
    double carry = 0;
    for (size_t i = work.size(); i-- > k;) {
      carry = carry * x0 + work[i];
      work[i] = carry;
    }
    out[k] = work[k];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> out(
      std::max(coefficients_.size(), other.coefficients_.size()), 0.0);
  for (size_t i = 0; i < coefficients_.size(); ++i) out[i] += coefficients_[i];
  for (size_t i = 0; i < other.coefficients_.size(); ++i) {
    out[i] += other.coefficients_[i];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (IsZero() || other.IsZero()) return Polynomial();
  std::vector<double> out(
      coefficients_.size() + other.coefficients_.size() - 1, 0.0);
  for (size_t i = 0; i < coefficients_.size(); ++i) {
    for (size_t j = 0; j < other.coefficients_.size(); ++j) {
      out[i + j] += coefficients_[i] * other.coefficients_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double factor) const {
  std::vector<double> out = coefficients_;
  for (double& c : out) c *= factor;
  return Polynomial(std::move(out));
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<Polynomial> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  cumulative_.assign(pieces_.size() + 1, 0.0);
  for (size_t i = 0; i < pieces_.size(); ++i) {
    cumulative_[i + 1] =
        cumulative_[i] +
        pieces_[i].Integral(breakpoints_[i], breakpoints_[i + 1]);
  }
}

int PiecewisePolynomial::PieceAt(double x) const {
  if (pieces_.empty() || x < lower() || x > upper()) return -1;
  if (x == upper()) return num_pieces() - 1;
  const auto it =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return static_cast<int>(it - breakpoints_.begin()) - 1;
}

double PiecewisePolynomial::operator()(double x) const {
  const int piece = PieceAt(x);
  return piece < 0 ? 0.0 : pieces_[piece](x);
}

double PiecewisePolynomial::Cumulative(double x) const {
  if (pieces_.empty() || x <= lower()) return 0.0;
  if (x >= upper()) return cumulative_.back();
  const int piece = PieceAt(x);
  return cumulative_[piece] + pieces_[piece].Integral(breakpoints_[piece], x);
}

PiecewisePolynomial PiecewisePolynomial::Refined(
    const std::vector<double>& points) const {
  std::vector<double> grid = breakpoints_;
  for (double x : points) {
    if (x > lower() && x < upper()) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Polynomial> pieces;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    pieces.push_back(pieces_[PieceAt(0.5 * (grid[i] + grid[i + 1]))]);
  }
  return PiecewisePolynomial(std::move(grid), std::move(pieces));
}

}  // namespace costeval
