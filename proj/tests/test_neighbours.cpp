// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <vector>

#include <doctest.h>

#include "ampd/neighbours.hpp"

#include "oracle.hpp"

using namespace ampd;

namespace {

LabeledDataset random_pool(oracle::Rng& rng, std::size_t n, std::size_t dim,
                           std::size_t n_classes) {
    std::vector<SparseVector> vecs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        vecs.push_back(rng.counts(dim, dim / 2));
        labels.push_back("c" + std::to_string(rng.index(n_classes)));
    }
    return LabeledDataset(std::move(vecs), labels);
}

// Indexes of the restricted pool; the test fills distances through the
// public metric entry point and full-sorts them.
NeighbourList restricted_indexes(const NeighbourSearcher& s, Restrict restrict, ClassId rc) {
    NeighbourList all;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (restrict == Restrict::in_class && s.label(i) != rc) continue;
        if (restrict == Restrict::out_class && s.label(i) == rc) continue;
        all.push_back({0.0, static_cast<std::uint32_t>(i)});
    }
    return all;
}

}  // namespace

TEST_CASE("top_k orders by distance and breaks ties by index") {
    // four identical vectors and one farther one: ties resolved upward
    std::vector<SparseVector> vecs;
    for (int i = 0; i < 4; ++i) vecs.push_back(make_sparse(std::vector<double>{1, 1, 0}));
    vecs.push_back(make_sparse(std::vector<double>{0, 0, 5}));
    const LabeledDataset pool(std::move(vecs), {"a", "a", "b", "b", "b"});

    const SparseVector query = make_sparse(std::vector<double>{2, 2, 0});
    const MetricSpec spec(2.0, false);

    const NeighbourList l = top_k(query, pool, Restrict::all, 0, 3, spec);
    REQUIRE(l.size() == 3);
    CHECK(l[0].index == 0);
    CHECK(l[1].index == 1);
    CHECK(l[2].index == 2);
    CHECK(l[0].distance == l[2].distance);

    const NeighbourList k1 = top_k(query, pool, Restrict::all, 0, 1, spec);
    CHECK(k1.size() == 1);
    CHECK(k1[0].index == 0);
}

TEST_CASE("top_k truncates when k exceeds the pool and rejects empty pools") {
    std::vector<SparseVector> vecs{make_sparse(std::vector<double>{1, 0}),
                                   make_sparse(std::vector<double>{0, 1})};
    const LabeledDataset pool(std::move(vecs), {"a", "a"});
    const SparseVector q = make_sparse(std::vector<double>{1, 1});
    const MetricSpec spec(1.0, true);

    CHECK(top_k(q, pool, Restrict::all, 0, 10, spec).size() == 2);
    CHECK(top_k(q, pool, Restrict::in_class, 0, 5, spec).size() == 2);
    // single-class pool: the out-of-class restriction is empty
    CHECK_THROWS_WITH_AS(top_k(q, pool, Restrict::out_class, 0, 1, spec),
                         doctest::Contains("'a'"), std::invalid_argument);
    CHECK_THROWS_AS(top_k(q, pool, Restrict::all, 0, 0, spec), std::invalid_argument);
}

TEST_CASE("top_k equals a full sort, every restrict mode, ties included") {
    oracle::Rng rng(53);
    const LabeledDataset pool = random_pool(rng, 200, 12, 3);
    const NeighbourSearcher searcher(pool, MetricSpec(0.7, false));

    for (int t = 0; t < 40; ++t) {
        const NormalizedVector q = searcher.normalize_query(rng.counts(12, 6));
        for (std::size_t k : {std::size_t(1), std::size_t(5), std::size_t(16)}) {
            for (Restrict r : {Restrict::all, Restrict::in_class, Restrict::out_class}) {
                const ClassId rc = static_cast<ClassId>(t % 3);
                NeighbourList expect = restricted_indexes(searcher, r, rc);
                for (auto& nb : expect)
                    nb.distance = angular_distance_sparse_fast(
                        q, p_normalize(pool.vector(nb.index), 0.7), searcher.spec());
                std::sort(expect.begin(), expect.end());
                if (expect.size() > k) expect.resize(k);

                const NeighbourList got = searcher.top_k(q, r, rc, k);
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("the k-list is a prefix of the (k+1)-list") {
    oracle::Rng rng(59);
    const LabeledDataset pool = random_pool(rng, 64, 10, 2);
    const NeighbourSearcher searcher(pool, MetricSpec(1.3, true));
    for (int t = 0; t < 20; ++t) {
        const NormalizedVector q = searcher.normalize_query(rng.counts(10, 5));
        NeighbourList prev;
        for (std::size_t k = 1; k <= 12; ++k) {
            const NeighbourList cur = searcher.top_k(q, Restrict::all, 0, k);
            REQUIRE(cur.size() >= prev.size());
            CHECK(std::equal(prev.begin(), prev.end(), cur.begin()));
            prev = cur;
        }
    }
}

TEST_CASE("per_class_top_k matches per-class direct searches") {
    oracle::Rng rng(61);
    const LabeledDataset pool = random_pool(rng, 120, 10, 4);
    const NeighbourSearcher searcher(pool, MetricSpec(2.0, true));

    for (int t = 0; t < 15; ++t) {
        const NormalizedVector q = searcher.normalize_query(rng.counts(10, 5));
        const auto lists = searcher.per_class_top_k(q, 7);
        REQUIRE(lists.size() == searcher.n_classes());
        for (ClassId c = 0; c < searcher.n_classes(); ++c)
            CHECK(lists[c] == searcher.top_k(q, Restrict::in_class, c, 7));

        // out-of-class via merge equals the direct search
        for (ClassId c = 0; c < searcher.n_classes(); ++c) {
            std::vector<const NeighbourList*> others;
            for (ClassId o = 0; o < searcher.n_classes(); ++o)
                if (o != c) others.push_back(&lists[o]);
            CHECK(merge_k_smallest(others, 7) == searcher.top_k(q, Restrict::out_class, c, 7));
        }

        // whole-set via merge equals the direct search
        std::vector<const NeighbourList*> all;
        for (const auto& l : lists) all.push_back(&l);
        CHECK(merge_k_smallest(all, 7) == searcher.top_k(q, Restrict::all, 0, 7));
    }
}
