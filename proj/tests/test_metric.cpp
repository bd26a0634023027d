// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <vector>

#include <doctest.h>

#include "ampd/metric.hpp"

#include "oracle.hpp"

using namespace ampd;

namespace {

SparseVector sv(std::vector<double> dense) { return make_sparse(dense); }

}  // namespace

TEST_CASE("p_size hand values") {
    CHECK(p_size(sv({3, 4}), 2.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(p_size(sv({1, 1}), 0.5) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(p_size(sv({0, 0, 0}), 3.3) == 0.0);
    CHECK_THROWS_AS(p_size(sv({1, 2}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(p_size(sv({1, 2}), -1.0), std::invalid_argument);
}

TEST_CASE("rootless p_size hand values") {
    CHECK(rootless_p_size(sv({3, 4}), 2.0) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(rootless_p_size(sv({1, 1}), 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rootless_p_size(sv({2, 0, 0}), 0.5) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("p_normalize pins single-support, simplex and zero vectors") {
    for (double p : {0.5, 1.0, 2.0, 3.7}) {
        const NormalizedVector n = p_normalize(sv({2, 0}), p);
        REQUIRE(n.ids.size() == 1);
        CHECK(n.values[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(n.powered[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    const NormalizedVector half = p_normalize(sv({1, 1}), 1.0);
    CHECK(half.values[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.values[1] == doctest::Approx(0.5).epsilon(1e-12));

    const NormalizedVector zero = p_normalize(sv({0, 0}), 2.0);
    CHECK(zero.is_zero());
    CHECK(zero.dim == 2);
}

TEST_CASE("normalized powered mass sums to one") {
    oracle::Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const SparseVector v = rng.sparse(32, 12);
        if (v.is_zero()) continue;
        for (double p : {0.3, 1.0, 2.0, 3.7}) {
            const NormalizedVector n = p_normalize(v, p);
            double mass = 0.0;
            for (double w : n.powered) mass += w;
            CHECK(std::fabs(mass - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("angular distance hand values") {
    const MetricSpec rooted2(2.0, false);
    CHECK(angular_distance(sv({1, 0}), sv({0, 1}), rooted2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // identical directions; fractional p gets slack for the two
    // independent normalizations
    for (double p : {1.0, 2.0})
        for (bool rl : {false, true})
            CHECK(std::fabs(angular_distance(sv({2, 2}), sv({1, 1}), MetricSpec(p, rl))) <=
                  1e-12);
    for (bool rl : {false, true})
        CHECK(std::fabs(angular_distance(sv({2, 2}), sv({1, 1}), MetricSpec(0.5, rl))) <= 1e-6);

    CHECK(angular_distance(sv({1, 0}), sv({1, 1}), MetricSpec(2.0, true)) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));

    // zero-vector conventions are exact
    CHECK(angular_distance(sv({1, 0}), sv({0, 0}), rooted2) == 1.0);
    CHECK(angular_distance(sv({0, 0}), sv({1, 0}), MetricSpec(0.7, true)) == 1.0);
    CHECK(angular_distance(sv({0, 0}), sv({0, 0}), rooted2) == 0.0);

    CHECK_THROWS_AS(angular_distance(sv({1, 0}), sv({1, 0, 0}), rooted2),
                    std::invalid_argument);
}

TEST_CASE("cosine dissimilarity hand values") {
    CHECK(cosine_dissimilarity(sv({1, 2, 3}), sv({1, 2, 3})) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cosine_dissimilarity(sv({1, 0}), sv({0, 1})) == doctest::Approx(1.0));
    CHECK(cosine_dissimilarity(sv({1, 0}), sv({1, 1})) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(cosine_dissimilarity(sv({0, 0}), sv({1, 1})), std::invalid_argument);
}

TEST_CASE("cosine equals half the rootless angular 2-distance") {
    oracle::Rng rng(17);
    for (int t = 0; t < 500; ++t) {
        const SparseVector x = rng.sparse(48, 16);
        const SparseVector y = rng.sparse(48, 16);
        if (x.is_zero() || y.is_zero()) continue;
        const double lhs = cosine_dissimilarity(x, y);
        const double rhs = 0.5 * angular_distance(x, y, MetricSpec(2.0, true));
        CHECK(std::fabs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("sparse fast path: pinned cases") {
    const MetricSpec spec(1.0, true);
    const NormalizedVector a = p_normalize(sv({1, 1, 0, 0}), 1.0);
    const NormalizedVector b = p_normalize(sv({0, 0, 1, 1}), 1.0);
    CHECK(angular_distance_sparse_fast(a, b, spec) == 2.0);  // disjoint supports

    const NormalizedVector c = p_normalize(sv({2, 3, 0, 1}), 1.0);
    CHECK(std::fabs(angular_distance_sparse_fast(c, c, spec)) <= 1e-12);

    const NormalizedVector z = p_normalize(sv({0, 0, 0, 0}), 1.0);
    CHECK(angular_distance_sparse_fast(z, c, spec) == 1.0);
    CHECK(angular_distance_sparse_fast(z, z, spec) == 0.0);

    const NormalizedVector wrong_p = p_normalize(sv({1, 1, 0, 0}), 2.0);
    CHECK_THROWS_AS(angular_distance_sparse_fast(wrong_p, b, spec), std::invalid_argument);
}

TEST_CASE("sparse fast path agrees with the dense oracle") {
    oracle::Rng rng(23);
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        for (int t = 0; t < 250; ++t) {
            const SparseVector x = rng.sparse(40, 14, 0.02);
            const SparseVector y = rng.sparse(40, 14, 0.02);
            const NormalizedVector nx = p_normalize(x, p);
            const NormalizedVector ny = p_normalize(y, p);
            for (bool rl : {false, true}) {
                const double fast = angular_distance_sparse_fast(nx, ny, MetricSpec(p, rl));
                const double naive = oracle::angular_dense(densify(x), densify(y), p, rl);
                CHECK(std::fabs(fast - naive) <= 1e-9);
            }
        }
    }
}

TEST_CASE("distance is symmetric, bitwise") {
    oracle::Rng rng(29);
    for (int t = 0; t < 100; ++t) {
        const SparseVector x = rng.sparse(24, 10);
        const SparseVector y = rng.sparse(24, 10);
        for (double p : {0.7, 2.0}) {
            const NormalizedVector nx = p_normalize(x, p);
            const NormalizedVector ny = p_normalize(y, p);
            const MetricSpec spec(p, true);
            CHECK(angular_distance_sparse_fast(nx, ny, spec) ==
                  angular_distance_sparse_fast(ny, nx, spec));
        }
    }
}

TEST_CASE("scale invariance of the angular distance") {
    oracle::Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const SparseVector x = rng.sparse(24, 10);
        const SparseVector y = rng.sparse(24, 10);
        if (x.is_zero() || y.is_zero()) continue;
        const double a = rng.uniform(0.1, 30.0);
        const double b = rng.uniform(0.1, 30.0);
        SparseVector ax = x, by = y;
        for (double& v : ax.values) v *= a;
        for (double& v : by.values) v *= b;
        for (double p : {0.5, 1.0, 2.0, 3.7}) {
            const MetricSpec spec(p, true);
            CHECK(std::fabs(angular_distance(ax, by, spec) - angular_distance(x, y, spec)) <=
                  1e-12);
        }
    }
}

TEST_CASE("rootless range [0,2], rooted range [0,2^(1/p)]") {
    oracle::Rng rng(37);
    for (int t = 0; t < 300; ++t) {
        const SparseVector x = rng.sparse(16, 8, 0.05);
        const SparseVector y = rng.sparse(16, 8, 0.05);
        for (double p : {0.3, 1.0, 2.0, 4.0}) {
            const double rl = angular_distance(x, y, MetricSpec(p, true));
            CHECK(rl >= 0.0);
            CHECK(rl <= 2.0 + 1e-12);
            const double rt = angular_distance(x, y, MetricSpec(p, false));
            CHECK(rt >= 0.0);
            CHECK(rt <= std::pow(2.0, 1.0 / p) + 1e-12);
        }
    }
}

TEST_CASE("sampled triangle inequality in the metric regimes") {
    oracle::Rng rng(41);
    const double slack = 1e-12;
    for (int t = 0; t < 500; ++t) {
        const SparseVector x = rng.sparse(12, 6, 0.01);
        const SparseVector y = rng.sparse(12, 6, 0.01);
        const SparseVector z = rng.sparse(12, 6, 0.01);
        for (double p : {1.0, 2.0, 4.0}) {  // rooted is a metric for p >= 1
            const MetricSpec spec(p, false);
            CHECK(angular_distance(x, z, spec) <=
                  angular_distance(x, y, spec) + angular_distance(y, z, spec) + slack);
        }
        for (double p : {0.3, 0.5, 1.0}) {  // rootless is a metric for p <= 1
            const MetricSpec spec(p, true);
            CHECK(angular_distance(x, z, spec) <=
                  angular_distance(x, y, spec) + angular_distance(y, z, spec) + slack);
        }
    }
}
