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

// Polynomials in the power basis and piecewise polynomials on a breakpoint
// grid.

#ifndef COSTEVAL_POLYNOMIAL_H_
#define COSTEVAL_POLYNOMIAL_H_

#include <initializer_list>
#include <vector>

namespace costeval {

class Polynomial {
 public:
  Polynomial() = default;
  // Coefficients from the constant term upwards.
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients);

  const std::vector<double>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool IsZero() const { return coefficients_.empty(); }

  double operator()(double x) const;
  Polynomial Derivative() const;
  // Antiderivative vanishing at zero.
  Polynomial Antiderivative() const;
  double Integral(double a, double b) const;
  // Coefficients of p(x0 + u) in u.
  Polynomial Shifted(double x0) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double factor) const;

 private:
  void Trim();

  std::vector<double> coefficients_;
};

// Piecewise polynomial on [breakpoints.front(), breakpoints.back()], zero
// outside. Piece i covers [breakpoints[i], breakpoints[i+1]).
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<double> breakpoints,
                      std::vector<Polynomial> pieces);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  int num_pieces() const { return static_cast<int>(pieces_.size()); }
  double lower() const { return breakpoints_.front(); }
  double upper() const { return breakpoints_.back(); }

  // Index of the piece holding x; the last piece also holds its upper end.
  // -1 outside the domain.
  int PieceAt(double x) const;
  double operator()(double x) const;
  // Integral from lower() to x.
  double Cumulative(double x) const;
  double Integral(double a, double b) const {
    return Cumulative(b) - Cumulative(a);
  }
  double Total() const { return cumulative_.back(); }

  // Same function on a refined grid; "points" inside the domain are added.
  PiecewisePolynomial Refined(const std::vector<double>& points) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Polynomial> pieces_;
  // Integral over the first i pieces.
  std::vector<double> cumulative_;
};

}  // namespace costeval

#endif  // COSTEVAL_POLYNOMIAL_H_
