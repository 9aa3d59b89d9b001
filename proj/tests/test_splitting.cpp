// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"
#include "pwa/errors.hpp"
#include "pwa/splitting.hpp"

using namespace pwa;

TEST_CASE("make_policy takes the smallest diameter") {
    auto u = Polytope::box({0, 0}, {1, 1});
    CHECK(make_policy({u}, Scalar(1, 2)).rho == 1);
    CHECK(make_policy({u, Polytope::box({0, 0}, {2, 1})}, Scalar(1, 2)).rho == 1);
    CHECK_THROWS_AS(make_policy({u}, Scalar(1)), LambdaOutOfRange);
    CHECK_THROWS_AS(make_policy({u}, Scalar(0)), LambdaOutOfRange);
    CHECK_THROWS_AS(make_policy({}, Scalar(1, 2)), EmptyCollection);
}

TEST_CASE("unit square into four cells") {
    auto u = Polytope::box({0, 0}, {1, 1});
    auto parts = split(make_policy({u}, Scalar(1, 2)), u);
    REQUIRE(parts.size() == 4);
    for (const auto& p : parts) {
        CHECK(diameter(p) == Scalar(1, 2));
        CHECK(diameter(p) <= Scalar(1, 2) * diameter(u));
    }
    // Lattice order: first coordinate slowest.
    CHECK(parts[0].same_set(Polytope::box({0, 0}, {Scalar(1, 2), Scalar(1, 2)})));
    CHECK(parts[1].same_set(Polytope::box({0, Scalar(1, 2)}, {Scalar(1, 2), 1})));
}

TEST_CASE("a grid cell is left whole by the grid of its own side") {
    auto cell = Polytope::box({Scalar(1, 2), 0}, {1, Scalar(1, 2)});
    auto parts = grid_split(cell, Scalar(1, 2));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].same_set(cell));
}

TEST_CASE("triangle splits into one square and two triangles") {
    auto tri = Polytope::from_halfspaces(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 1}});
    auto parts = grid_split(tri, Scalar(1, 2));
    REQUIRE(parts.size() == 3);
    int squares = 0;
    int triangles = 0;
    for (const auto& p : parts) {
        squares += p.vertices().size() == 4;
        triangles += p.vertices().size() == 3;
    }
    CHECK(squares == 1);
    CHECK(triangles == 2);
    // Cell-by-cell oracle: each part is the triangle cut by one lattice cell.
    for (int i = -1; i <= 2; ++i) {
        for (int j = -1; j <= 2; ++j) {
            auto cell = Polytope::box({frac(i, 2), frac(j, 2)}, {frac(i + 1, 2), frac(j + 1, 2)});
            auto piece = intersect(tri, cell);
            if (piece.is_full_dimensional()) {
                bool found = false;
                for (const auto& p : parts) {
                    found = found || p.same_set(piece);
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("split recomputes the scale for small arguments") {
    auto policy = make_policy({Polytope::box({0}, {4})}, Scalar(1, 2));
    auto small = Polytope::box({0}, {Scalar(1, 4)});
    auto parts = split(policy, small);
    REQUIRE(parts.size() == 2);
    for (const auto& p : parts) {
        CHECK(diameter(p) <= Scalar(1, 2) * diameter(small));
    }
    auto dot = Polytope::point({Scalar(1, 3)});
    CHECK(split(policy, dot).size() == 1);
}

TEST_CASE("property: splitting contracts, covers and is deterministic") {
    std::mt19937_64 rng(201);
    for (const Scalar& lambda : {Scalar(1, 2), Scalar(1, 3), Scalar(3, 4)}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto p = oracle::random_polygon(rng, 0, 10);
            auto q = oracle::random_polygon(rng, 0, 10);
            auto policy = make_policy({p, q}, lambda);
            auto parts = split(policy, p);
            Scalar vol = 0;
            for (const auto& part : parts) {
                CHECK(diameter(part) <= lambda * diameter(p));
                CHECK(p.contains(part));
                vol += volume(part);
            }
            CHECK(vol == volume(p));
            for (std::size_t i = 0; i < parts.size(); ++i) {
                for (std::size_t j = i + 1; j < parts.size(); ++j) {
                    CHECK_FALSE(overlaps(parts[i], parts[j], 2));
                }
            }
            auto again = split(policy, p);
            REQUIRE(again.size() == parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) {
                CHECK(again[i].vertices() == parts[i].vertices());
            }
        }
    }
}
