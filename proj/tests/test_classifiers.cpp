// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "ampd/classifiers.hpp"

#include "oracle.hpp"

using namespace ampd;

namespace {

LabeledDataset toy_train() {
    // six points in two dimensions, two classes
    std::vector<SparseVector> vecs{
        make_sparse(std::vector<double>{4, 1}), make_sparse(std::vector<double>{5, 1}),
        make_sparse(std::vector<double>{3, 2}), make_sparse(std::vector<double>{1, 4}),
        make_sparse(std::vector<double>{1, 5}), make_sparse(std::vector<double>{2, 3})};
    return LabeledDataset(std::move(vecs), {"pos", "pos", "pos", "neg", "neg", "neg"});
}

}  // namespace

TEST_CASE("nn weights: linear and reciprocal hand values") {
    const std::vector<double> d{0.2, 0.4, 0.6};
    const auto lin = nn_weights(d, WeightKind::linear);
    CHECK(lin[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lin[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lin[2] == doctest::Approx(0.0).epsilon(1e-15));

    const std::vector<double> flat{0.5, 0.5, 0.5};
    CHECK(nn_weights(flat, WeightKind::linear) == std::vector<double>{1.0, 1.0, 1.0});

    const std::vector<double> two{0.5, 1.0};
    const auto rec = nn_weights(two, WeightKind::reciprocal);
    CHECK(rec[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rec[1] == doctest::Approx(1.0).epsilon(1e-15));

    const std::vector<double> one{0.7};
    CHECK(nn_weights(one, WeightKind::linear) == std::vector<double>{1.0});

    // zero distance stays finite under the reciprocal scheme
    const std::vector<double> zero{0.0, 0.5};
    CHECK(nn_weights(zero, WeightKind::reciprocal)[0] == doctest::Approx(1e12));
}

TEST_CASE("frnn weights: exact k=3 values and normalization") {
    const auto lin = frnn_weights(3, WeightKind::linear);
    CHECK(lin[0] == 0.5);
    CHECK(lin[1] == 1.0 / 3.0);
    CHECK(lin[2] == 1.0 / 6.0);

    const auto rec = frnn_weights(3, WeightKind::reciprocal);
    CHECK(std::fabs(rec[0] - 6.0 / 11.0) <= 1e-15);
    CHECK(std::fabs(rec[1] - 3.0 / 11.0) <= 1e-15);
    CHECK(std::fabs(rec[2] - 2.0 / 11.0) <= 1e-15);

    CHECK(frnn_weights(1, WeightKind::linear) == std::vector<double>{1.0});
    CHECK(frnn_weights(1, WeightKind::reciprocal) == std::vector<double>{1.0});
    CHECK_THROWS_AS(frnn_weights(0, WeightKind::linear), std::invalid_argument);

    for (std::size_t k = 1; k <= 256; ++k) {
        for (WeightKind kind : {WeightKind::linear, WeightKind::reciprocal}) {
            const auto w = frnn_weights(k, kind);
            double sum = 0.0;
            for (double v : w) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                sum += v;
            }
            CHECK(std::fabs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("truncated frnn weights renormalize the prefix") {
    const auto full = frnn_weights(4, WeightKind::linear);
    const auto trunc = scoring::frnn_weights_truncated(4, WeightKind::linear, 2);
    REQUIRE(trunc.size() == 2);
    const double head = full[0] + full[1];
    CHECK(trunc[0] == doctest::Approx(full[0] / head).epsilon(1e-15));
    CHECK(trunc[1] == doctest::Approx(full[1] / head).epsilon(1e-15));
    CHECK(trunc[0] + trunc[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("nn vote mass: hand values from the weight schemes") {
    // classes [C, C, !C] at d=(0.2,0.4,0.6) with linear weights -> 1.0
    const NeighbourList nbrs{{0.2, 0}, {0.4, 1}, {0.6, 2}};
    const std::vector<ClassId> labels{0, 0, 1};
    const auto lin = nn_weights(std::vector<double>{0.2, 0.4, 0.6}, WeightKind::linear);
    CHECK(scoring::nn_class_mass(nbrs, lin, labels, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scoring::nn_class_mass(nbrs, lin, labels, 1) == doctest::Approx(0.0).epsilon(1e-12));

    // classes [C, !C] at d=(0.5,1.0) with reciprocal weights -> 2/3
    const NeighbourList two{{0.5, 0}, {1.0, 1}};
    const std::vector<ClassId> lab2{0, 1};
    const auto rec = nn_weights(std::vector<double>{0.5, 1.0}, WeightKind::reciprocal);
    CHECK(scoring::nn_class_mass(two, rec, lab2, 0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("frnn upper/lower/mean: hand values") {
    const std::vector<double> w{2.0 / 3.0, 1.0 / 3.0};  // linear k=2
    CHECK(frnn_weights(2, WeightKind::linear) == w);

    const std::vector<double> din{0.3, 0.9};
    CHECK(scoring::upper_from_distances(din, w) == doctest::Approx(0.75).epsilon(1e-12));

    const std::vector<double> dout{1.2, 1.8};
    CHECK(scoring::lower_from_distances(dout, w) == doctest::Approx(0.7).epsilon(1e-12));

    CHECK(0.5 * (0.75 + 0.7) == doctest::Approx(0.725).epsilon(1e-12));

    // clamp floor and ceiling
    const std::vector<double> far{2.5, 3.0};
    CHECK(scoring::upper_from_distances(far, w) == 0.0);
    CHECK(scoring::lower_from_distances(far, w) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> zero{0.0, 0.0};
    CHECK(scoring::upper_from_distances(zero, w) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scoring::lower_from_distances(zero, w) == 0.0);
}

TEST_CASE("monotone response of the approximations") {
    const auto w = frnn_weights(3, WeightKind::reciprocal);
    const std::vector<double> base{0.4, 0.8, 1.2};
    const double upper0 = scoring::upper_from_distances(base, w);
    const double lower0 = scoring::lower_from_distances(base, w);
    for (std::size_t i = 0; i < base.size(); ++i) {
        auto closer = base;
        closer[i] -= 0.3;
        CHECK(scoring::upper_from_distances(closer, w) >= upper0);
        auto farther = base;
        farther[i] += 0.3;
        CHECK(scoring::lower_from_distances(farther, w) >= lower0);
    }
}

TEST_CASE("single-instance ops on the toy dataset") {
    const LabeledDataset train = toy_train();
    const MetricSpec metric(2.0, false);

    const SparseVector q = make_sparse(std::vector<double>{5, 2});
    const ClassifierSpec nn_spec(Family::nn, 3, WeightKind::reciprocal, metric);
    const double s_pos = nn_score(q, train, "pos", nn_spec);
    const double s_neg = nn_score(q, train, "neg", nn_spec);
    CHECK(s_pos >= 0.0);
    CHECK(s_pos <= 1.0);
    CHECK(s_pos + s_neg == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s_pos > s_neg);  // q points along the "pos" direction

    const ClassifierSpec up_spec(Family::frnn_upper, 2, WeightKind::linear, metric);
    const ClassifierSpec lo_spec(Family::frnn_lower, 2, WeightKind::linear, metric);
    const ClassifierSpec mean_spec(Family::frnn_mean, 2, WeightKind::linear, metric);
    const double up = frnn_upper(q, train, "pos", up_spec);
    const double lo = frnn_lower(q, train, "pos", lo_spec);
    CHECK(frnn_mean(q, train, "pos", mean_spec) ==
          doctest::Approx(0.5 * (up + lo)).epsilon(1e-15));
    CHECK(up >= 0.0);
    CHECK(up <= 1.0);
    CHECK(lo >= 0.0);
    CHECK(lo <= 1.0);

    CHECK_THROWS_WITH_AS(nn_score(q, train, "nope", nn_spec), doctest::Contains("'nope'"),
                         std::invalid_argument);

    // query identical to a training member of the class: upper hits 1
    const SparseVector member = make_sparse(std::vector<double>{4, 1});
    const ClassifierSpec up1(Family::frnn_upper, 1, WeightKind::linear, metric);
    CHECK(frnn_upper(member, train, "pos", up1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frnn lower family needs a second class") {
    std::vector<SparseVector> vecs{make_sparse(std::vector<double>{1, 0}),
                                   make_sparse(std::vector<double>{0, 1})};
    const LabeledDataset single(std::move(vecs), {"only", "only"});
    const SparseVector q = make_sparse(std::vector<double>{1, 1});
    const ClassifierSpec spec(Family::frnn_lower, 1, WeightKind::linear, MetricSpec(2.0, false));
    CHECK_THROWS_AS(frnn_lower(q, single, "only", spec), std::invalid_argument);

    const ClassifierSpec mean_spec(Family::frnn_mean, 1, WeightKind::linear,
                                   MetricSpec(2.0, false));
    CHECK_THROWS_AS(frnn_mean(q, single, "only", mean_spec), std::invalid_argument);
}

TEST_CASE("score_all matches the single-instance ops and keeps its shape") {
    oracle::Rng rng(67);
    std::vector<SparseVector> train_vecs, test_vecs;
    std::vector<std::string> train_labels, test_labels;
    const char* names[3] = {"a", "b", "c"};
    for (int i = 0; i < 18; ++i) {
        train_vecs.push_back(rng.counts(8, 5));
        train_labels.push_back(names[i % 3]);
    }
    for (int i = 0; i < 7; ++i) {
        test_vecs.push_back(rng.counts(8, 5));
        test_labels.push_back(names[i % 3]);
    }
    const LabeledDataset train(std::move(train_vecs), train_labels);
    const LabeledDataset test(std::move(test_vecs), test_labels);

    for (Family fam : {Family::nn, Family::frnn_upper, Family::frnn_lower, Family::frnn_mean}) {
        for (WeightKind wk : {WeightKind::linear, WeightKind::reciprocal}) {
            const ClassifierSpec spec(fam, 3, wk, MetricSpec(1.3, false));
            const ScoreMatrix scores = score_all(test, train, spec, 2);
            REQUIRE(scores.n_rows == test.size());
            REQUIRE(scores.n_cols() == train.n_classes());

            for (std::size_t r = 0; r < scores.n_rows; ++r) {
                double row_sum = 0.0;
                for (std::size_t c = 0; c < scores.n_cols(); ++c) {
                    const double got = scores.at(r, c);
                    CHECK(std::isfinite(got));
                    CHECK(got >= 0.0);
                    CHECK(got <= 1.0);
                    row_sum += got;
                    double want = 0.0;
                    const std::string& cls = scores.class_names[c];
                    switch (fam) {
                        case Family::nn: want = nn_score(test.vector(r), train, cls, spec); break;
                        case Family::frnn_upper:
                            want = frnn_upper(test.vector(r), train, cls, spec);
                            break;
                        case Family::frnn_lower:
                            want = frnn_lower(test.vector(r), train, cls, spec);
                            break;
                        case Family::frnn_mean:
                            want = frnn_mean(test.vector(r), train, cls, spec);
                            break;
                    }
                    CHECK(std::fabs(got - want) <= 1e-12);
                }
                if (fam == Family::nn) CHECK(std::fabs(row_sum - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("nn with k=1 is plain 1-NN") {
    oracle::Rng rng(71);
    std::vector<SparseVector> train_vecs;
    std::vector<std::string> train_labels;
    for (int i = 0; i < 20; ++i) {
        train_vecs.push_back(rng.counts(6, 4));
        train_labels.push_back(i % 2 ? "x" : "y");
    }
    const LabeledDataset train(std::move(train_vecs), train_labels);

    for (int t = 0; t < 10; ++t) {
        const SparseVector q = rng.counts(6, 4);
        for (WeightKind wk : {WeightKind::linear, WeightKind::reciprocal}) {
            const ClassifierSpec spec(Family::nn, 1, wk, MetricSpec(0.9, true));
            const NeighbourList l = top_k(q, train, Restrict::all, 0, 1, spec.metric);
            const std::string nearest = train.class_name(train.label(l[0].index));
            CHECK(nn_score(q, train, nearest, spec) == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("rootless distances with p >= 1 never reach the clamp bounds") {
    // counter-style check: every distance that feeds the approximations
    // stays in [0,2], so clamp(1-d/2) and clamp(d/2) operate inside [0,1]
    oracle::Rng rng(107);
    std::vector<SparseVector> vecs;
    std::vector<std::string> labels;
    for (int i = 0; i < 40; ++i) {
        vecs.push_back(rng.counts(10, 6));
        labels.push_back(i % 3 ? "in" : "out");
    }
    const LabeledDataset train(std::move(vecs), labels);

    std::size_t clamp_hits = 0, checked = 0;
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
        const NeighbourSearcher searcher(train, MetricSpec(p, true));
        for (int t = 0; t < 10; ++t) {
            const NormalizedVector q = searcher.normalize_query(rng.counts(10, 6));
            for (Restrict r : {Restrict::in_class, Restrict::out_class}) {
                for (const auto& nb : searcher.top_k(q, r, 0, 8)) {
                    ++checked;
                    if (nb.distance < 0.0 || nb.distance > 2.0) ++clamp_hits;
                }
            }
        }
    }
    CHECK(checked > 0);
    CHECK(clamp_hits == 0);
}

TEST_CASE("score_all is bitwise independent of the worker count") {
    oracle::Rng rng(109);
    std::vector<SparseVector> train_vecs, test_vecs;
    std::vector<std::string> train_labels, test_labels;
    for (int i = 0; i < 24; ++i) {
        train_vecs.push_back(rng.counts(8, 5));
        train_labels.push_back(i % 2 ? "x" : "y");
    }
    for (int i = 0; i < 9; ++i) {
        test_vecs.push_back(rng.counts(8, 5));
        test_labels.push_back(i % 2 ? "x" : "y");
    }
    const LabeledDataset train(std::move(train_vecs), train_labels);
    const LabeledDataset test(std::move(test_vecs), test_labels);

    const ClassifierSpec spec(Family::frnn_mean, 3, WeightKind::linear, MetricSpec(1.7, false));
    const ScoreMatrix one = score_all(test, train, spec, 1);
    const ScoreMatrix four = score_all(test, train, spec, 4);
    CHECK(one.values == four.values);
}

TEST_CASE("score csv export and import round-trip") {
    ScoreMatrix m;
    m.n_rows = 2;
    m.class_names = {"alpha", "beta"};
    m.values = {0.123456789123, 0.5, 1.0, 0.0};

    std::ostringstream out;
    write_scores_csv(m, out);
    const std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) == "instance_id,alpha,beta");
    CHECK(text.find("0.123456789") != std::string::npos);

    std::istringstream in(text);
    const ScoreMatrix back = read_scores_csv(in);
    REQUIRE(back.n_rows == 2);
    CHECK(back.class_names == m.class_names);
    CHECK(std::fabs(back.at(0, 0) - m.at(0, 0)) <= 1e-9);
    CHECK(back.at(1, 0) == 1.0);
}

TEST_CASE("labels csv round-trip") {
    const std::vector<std::string> labels{"sci.space", "rec.autos"};
    std::ostringstream out;
    write_labels_csv(labels, out);
    CHECK(out.str() == "instance_id,label\n0,sci.space\n1,rec.autos\n");
    std::istringstream in(out.str());
    CHECK(read_labels_csv(in) == labels);
}

TEST_CASE("predicted labels take the argmax with low-id ties") {
    ScoreMatrix m;
    m.n_rows = 3;
    m.class_names = {"a", "b", "c"};
    m.values = {0.2, 0.5, 0.3, 0.4, 0.4, 0.2, 0.1, 0.2, 0.7};
    CHECK(predict_labels(m) == std::vector<ClassId>{1, 0, 2});
}

TEST_CASE("family and weight names round-trip") {
    for (Family f : {Family::nn, Family::frnn_upper, Family::frnn_lower, Family::frnn_mean})
        CHECK(parse_family(family_name(f)) == f);
    for (WeightKind w : {WeightKind::linear, WeightKind::reciprocal})
        CHECK(parse_weight_kind(weight_kind_name(w)) == w);
    CHECK_THROWS_AS(parse_family("knn"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_kind("uniform"), std::invalid_argument);
}
