// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "perfo/error.hpp"
#include "perfo/persistence.hpp"
#include "perfo/polynomial.hpp"

namespace perfo {

Polynomial::Polynomial(Rational constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

Polynomial Polynomial::monomial(Rational coefficient, std::size_t degree) {
  Polynomial p;
  if (coefficient == 0) return p;
  p.coeffs_.assign(degree + 1, Rational(0));
  p.coeffs_[degree] = std::move(coefficient);
  return p;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  out.trim();
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool Polynomial::divide_exact(const Polynomial& divisor, Polynomial& quotient) const {
  if (divisor.is_zero()) return false;
  quotient = Polynomial();
  Polynomial remainder = *this;
  while (!remainder.is_zero() && remainder.degree() >= divisor.degree()) {
    const Polynomial term = monomial(remainder.leading() / divisor.leading(),
                                     remainder.degree() - divisor.degree());
    quotient += term;
    remainder -= term * divisor;
  }
  return remainder.is_zero();
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0 || magnitude != 1) out << magnitude;
    if (k >= 1) out << 't';
    if (k >= 2) out << '^' << k;
  }
  return out.str();
}

std::string PolyMatrix::to_string() const {
  std::vector<std::string> cells(rows_ * cols_);
  std::size_t width = 1;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = cells_[i].to_string();
    width = std::max(width, cells[i].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      const std::string& s = cells[r * cols_ + c];
      out << (c ? " " : "") << std::string(width - s.size(), ' ') << s;
    }
    out << "]\n";
  }
  return out.str();
}

PolyBoundaryResult persistent_boundary_rank(std::span<const std::size_t> face_steps,
                                            std::span<const GradedCell> cells) {
  const std::size_t rows = face_steps.size();
  const std::size_t cols = cells.size();
  if (rows * cols > 4'000'000) {
    throw Error(ErrorCode::kTooLarge, "polynomial boundary matrix too large");
  }

  PolyBoundaryResult result;
  result.boundary = PolyMatrix(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const GradedCell& cell = cells[c];
    if (c > 0 && cell.step < cells[c - 1].step) {
      throw Error(ErrorCode::kInvalidFiltration, "cells must be listed by nondecreasing step");
    }
    for (std::size_t i = 0; i < cell.faces.size(); ++i) {
      const std::size_t r = cell.faces[i];
      if (r >= rows) throw Error(ErrorCode::kInvalidFiltration, "face row out of range");
      if (face_steps[r] > cell.step) {
        throw Error(ErrorCode::kInvalidFiltration, "face born after its cell");
      }
      const Rational sign = (i % 2 == 0) ? 1 : -1;
      result.boundary.at(r, c) += Polynomial::monomial(sign, cell.step - face_steps[r]);
    }
  }

  // Left-to-right reduction on the lowest nonzero row.
  std::vector<std::vector<Polynomial>> columns(cols, std::vector<Polynomial>(rows));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) columns[c][r] = result.boundary.at(r, c);
  }
  auto low = [&](const std::vector<Polynomial>& column) -> std::ptrdiff_t {
    for (std::size_t r = rows; r-- > 0;) {
      if (!column[r].is_zero()) return static_cast<std::ptrdiff_t>(r);
    }
    return -1;
  };
  std::map<std::ptrdiff_t, std::size_t> owner;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::ptrdiff_t l = low(columns[j]); l >= 0; l = low(columns[j])) {
      const auto it = owner.find(l);
      if (it == owner.end()) {
        owner.emplace(l, j);
        break;
      }
      const auto& pivot = columns[it->second];
      Polynomial factor;
      if (!columns[j][static_cast<std::size_t>(l)].divide_exact(pivot[static_cast<std::size_t>(l)],
                                                                factor)) {
        throw Error(ErrorCode::kInvalidFiltration,
                    "pivot does not divide; cells are not in graded order");
      }
      for (std::size_t r = 0; r < rows; ++r) {
        if (!pivot[r].is_zero()) columns[j][r] -= factor * pivot[r];
      }
    }
  }

  result.reduced = PolyMatrix(rows, cols);
  std::size_t next = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    if (low(columns[j]) < 0) continue;
    for (std::size_t r = 0; r < rows; ++r) result.reduced.at(r, next) = columns[j][r];
    ++next;
  }
  result.rank = next;
  return result;
}

PolyBoundaryResult persistent_boundary_rank(const Filtration& filtration, std::size_t dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "boundary dimension must be >= 1");
  if (filtration.n_points() > kPolynomialMaxPoints) {
    throw Error(ErrorCode::kTooLarge, "polynomial boundary limited to " +
                                          std::to_string(kPolynomialMaxPoints) + " points");
  }
  std::vector<double> births;
  for (std::size_t i = 0; i < filtration.size(); ++i) births.push_back(filtration.birth(i));
  std::sort(births.begin(), births.end());
  births.erase(std::unique(births.begin(), births.end()), births.end());
  auto step_of = [&](double birth) {
    return static_cast<std::size_t>(std::lower_bound(births.begin(), births.end(), birth) -
                                    births.begin());
  };

  std::vector<std::size_t> row_of(filtration.size(), 0);
  std::vector<std::size_t> face_steps;
  std::vector<GradedCell> cells;
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    if (filtration.dim(i) == dim - 1) {
      row_of[i] = face_steps.size();
      face_steps.push_back(step_of(filtration.birth(i)));
    }
  }
  std::vector<std::uint32_t> face;
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    if (filtration.dim(i) != dim) continue;
    GradedCell cell;
    cell.step = step_of(filtration.birth(i));
    const auto vs = filtration.vertices(i);
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      face.clear();
      for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k != drop) face.push_back(vs[k]);
      }
      cell.faces.push_back(row_of[filtration.find(face)]);
    }
    cells.push_back(std::move(cell));
  }
  return persistent_boundary_rank(face_steps, cells);
}

}  // namespace perfo
