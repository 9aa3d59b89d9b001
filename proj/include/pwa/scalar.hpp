// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pwa {

/// Exact rational number. Every quantity in the toolkit is one of these.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Dense row-major rational matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector apply(const Vector& x) const;

    bool operator==(const Matrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Parses "p/q", an integer, or an exact decimal such as "-0.125".
/// Throws ParseError for anything else (exponents and binary floats are rejected).
Scalar parse_scalar(std::string_view text);
/// num / den in lowest terms. Throws DimensionMismatch for a zero denominator.
Scalar frac(long num, long den);
std::string to_string(const Scalar& value);
double to_double(const Scalar& value);

Scalar dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const Scalar& s);
Scalar norm_inf(const Vector& a);

/// Rank of a list of vectors of equal length.
std::size_t rank(std::vector<Vector> rows);

/// Affine dimension of a point set; -1 for an empty set.
int affine_dimension(const std::vector<Vector>& points);

} // namespace pwa
