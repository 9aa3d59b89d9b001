// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/lp.hpp"

#include <optional>

#include "pwa/errors.hpp"
#include "pwa/geometry.hpp"

namespace pwa::lp {

namespace {

// Dense tableau over rows A_eq z = rhs, z >= 0, rhs >= 0.
class Tableau {
  public:
    Tableau(std::vector<Vector> rows, Vector rhs, std::vector<std::size_t> basis, std::size_t cols)
        : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), cols_(cols),
          blocked_(cols, false) {}

    void block(std::size_t col) { blocked_[col] = true; }

    // Maximizes cost . z. Returns false when unbounded.
    bool optimize(const Vector& cost) {
        while (true) {
            const Vector reduced = reduced_costs(cost);
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!blocked_[j] && sgn(reduced[j]) > 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) {
                return true;
            }
            std::optional<std::size_t> leaving;
            Scalar best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (sgn(rows_[i][*entering]) <= 0) {
                    continue;
                }
                const Scalar ratio = rhs_[i] / rows_[i][*entering];
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving) {
                return false;
            }
            pivot(*leaving, *entering);
        }
    }

    Scalar value(const Vector& cost) const {
        Scalar v = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            v += cost[basis_[i]] * rhs_[i];
        }
        return v;
    }

    Vector solution() const {
        Vector z(cols_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            z[basis_[i]] = rhs_[i];
        }
        return z;
    }

    // Pivots artificial columns [first, cols) out of the basis or drops their rows.
    void expel(std::size_t first_artificial) {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_artificial) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < first_artificial; ++j) {
                if (sgn(rows_[i][j]) != 0) {
                    col = j;
                    break;
                }
            }
            if (col) {
                pivot(i, *col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        for (std::size_t j = first_artificial; j < cols_; ++j) {
            blocked_[j] = true;
        }
    }

  private:
    Vector reduced_costs(const Vector& cost) const {
        Vector r = cost;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar& cb = cost[basis_[i]];
            if (sgn(cb) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < cols_; ++j) {
                r[j] -= cb * rows_[i][j];
            }
        }
        return r;
    }

    void pivot(std::size_t r, std::size_t c) {
        const Scalar p = rows_[r][c];
        for (auto& v : rows_[r]) {
            v /= p;
        }
        rhs_[r] /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || sgn(rows_[i][c]) == 0) {
                continue;
            }
            const Scalar f = rows_[i][c];
            for (std::size_t j = 0; j < cols_; ++j) {
                rows_[i][j] -= f * rows_[r][j];
            }
            rhs_[i] -= f * rhs_[r];
        }
        basis_[r] = c;
    }

    std::vector<Vector> rows_;
    Vector rhs_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    std::vector<bool> blocked_;
};

} // namespace

Result maximize(const Vector& objective, std::span<const Halfspace> constraints, std::size_t dim) {
    if (objective.size() != dim) {
        throw DimensionMismatch("objective length differs from LP dimension");
    }
    const std::size_t m = constraints.size();
    std::size_t artificial_count = 0;
    for (const auto& h : constraints) {
        if (h.normal.size() != dim) {
            throw DimensionMismatch("constraint normal length differs from LP dimension");
        }
        if (sgn(h.offset) < 0) {
            ++artificial_count;
        }
    }
    // Columns: x+ (dim), x- (dim), slack (m), artificial.
    const std::size_t first_artificial = 2 * dim + m;
    const std::size_t cols = first_artificial + artificial_count;
    std::vector<Vector> rows(m, Vector(cols));
    Vector rhs(m);
    std::vector<std::size_t> basis(m);
    std::size_t next_artificial = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& h = constraints[i];
        const int sign = sgn(h.offset) < 0 ? -1 : 1;
        for (std::size_t k = 0; k < dim; ++k) {
            rows[i][k] = sign * h.normal[k];
            rows[i][dim + k] = -sign * h.normal[k];
        }
        rows[i][2 * dim + i] = sign;
        rhs[i] = sign * h.offset;
        if (sign < 0) {
            rows[i][next_artificial] = 1;
            basis[i] = next_artificial++;
        } else {
            basis[i] = 2 * dim + i;
        }
    }
    Tableau tableau(std::move(rows), std::move(rhs), std::move(basis), cols);

    if (artificial_count > 0) {
        Vector phase1(cols);
        for (std::size_t j = first_artificial; j < cols; ++j) {
            phase1[j] = -1;
        }
        tableau.optimize(phase1);
        if (sgn(tableau.value(phase1)) < 0) {
            return Result{Status::Infeasible, 0, {}};
        }
        tableau.expel(first_artificial);
    }

    Vector cost(cols);
    for (std::size_t k = 0; k < dim; ++k) {
        cost[k] = objective[k];
        cost[dim + k] = -objective[k];
    }
    if (!tableau.optimize(cost)) {
        return Result{Status::Unbounded, 0, {}};
    }
    const Vector z = tableau.solution();
    Vector x(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        x[k] = z[k] - z[dim + k];
    }
    return Result{Status::Optimal, tableau.value(cost), std::move(x)};
}

bool feasible(std::span<const Halfspace> constraints, std::size_t dim) {
    return maximize(Vector(dim), constraints, dim).status != Status::Infeasible;
}

} // namespace pwa::lp
