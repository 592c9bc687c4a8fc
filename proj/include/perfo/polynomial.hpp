// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace perfo {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in one variable t with rational coefficients; coeffs_[k] is
/// the coefficient of t^k and the representation carries no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational constant);  // NOLINT(google-explicit-constructor)

  static Polynomial monomial(Rational coefficient, std::size_t degree);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the polynomial; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  /// Exact quotient; returns false when `divisor` does not divide *this.
  bool divide_exact(const Polynomial& divisor, Polynomial& quotient) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// "0", "1", "-t", "t^2", "3/2t^2 - t + 1".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Dense row-major matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Polynomial& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const Polynomial& at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> cells_;
};

}  // namespace perfo
