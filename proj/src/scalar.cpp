// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "pwa/errors.hpp"

namespace pwa {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionMismatch("matrix row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                    " entries, expected " + std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols_) {
        throw DimensionMismatch("matrix-vector product with mismatched sizes");
    }
    Vector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Scalar acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += (*this)(r, c) * x[c];
        }
        y[r] = acc;
    }
    return y;
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    bool negative = false;
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Scalar value;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        value = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (const auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
        const auto whole = body.substr(0, dot_pos);
        const auto frac = body.substr(dot_pos + 1);
        if (!all_digits(whole) || !all_digits(frac)) {
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        }
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            den *= 10;
        }
        value = mpq_class(mpz_class(std::string(whole) + std::string(frac), 10), den);
    } else {
        if (!all_digits(body)) {
            throw ParseError("malformed number '" + std::string(text) + "'");
        }
        value = mpq_class(mpz_class(std::string(body), 10));
    }
    value.canonicalize();
    if (negative) {
        value = -value;
    }
    return value;
}

Scalar frac(long num, long den) {
    if (den == 0) {
        throw DimensionMismatch("zero denominator");
    }
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& value) {
    return value.get_str();
}

double to_double(const Scalar& value) {
    return value.get_d();
}

Scalar dot(const Vector& a, const Vector& b) {
    Scalar acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

Vector add(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

Vector sub(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

Vector scale(const Vector& a, const Scalar& s) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] * s;
    }
    return r;
}

Scalar norm_inf(const Vector& a) {
    Scalar m = 0;
    for (const auto& v : a) {
        const Scalar mag = abs(v);
        if (mag > m) {
            m = mag;
        }
    }
    return m;
}

std::size_t rank(std::vector<Vector> rows) {
    if (rows.empty()) {
        return 0;
    }
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (sgn(rows[i][c]) == 0) {
                continue;
            }
            const Scalar factor = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[i][k] -= factor * rows[r][k];
            }
        }
        ++r;
    }
    return r;
}

int affine_dimension(const std::vector<Vector>& points) {
    if (points.empty()) {
        return -1;
    }
    std::vector<Vector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        diffs.push_back(sub(points[i], points[0]));
    }
    return static_cast<int>(rank(std::move(diffs)));
}

} // namespace pwa
