#include <doctest.h>

#include <cmath>

#include "adp/dataset.hpp"
#include "adp/harness.hpp"
#include "adp/solver.hpp"
#include "test_support.hpp"

using namespace adp;

namespace {

// Two disjoint 2-cliques with one labeled point per clique.
struct CliquePair {
    WeightGraph w;
    LabelMatrix y;
};

CliquePair clique_pair() {
    Matrix w = Matrix::Zero(4, 4);
    w(0, 1) = w(1, 0) = 1.0;
    w(2, 3) = w(3, 2) = 1.0;
    return {WeightGraph{w, 1, {}}, one_hot({0, kUnlabeled, 1, kUnlabeled}, 2)};
}

}  // namespace

TEST_CASE("adp config validation") {
    const CliquePair inst = clique_pair();
    AdpConfig cfg;
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(adp::adp(inst.w, inst.y, cfg), ValidationError);
    cfg.alpha = 0.9;
    cfg.beta = 0.0;
    CHECK_THROWS_AS(adp::adp(inst.w, inst.y, cfg), ValidationError);
    cfg.beta = 1e-2;
    cfg.max_outer = 0;
    CHECK_THROWS_AS(adp::adp1(inst.w, inst.y, cfg), ValidationError);
    cfg.max_outer = 1;
    CHECK_THROWS_AS(adp::adp(inst.w, one_hot({0, 1}, 2), cfg), ValidationError);
}

TEST_CASE("single outer pass is exactly one label diffusion on the round-1 graph") {
    const Dataset data = testing::random_points(12, 2, 300);
    const WeightGraph w = build_knn_gaussian(data, 3, 4);
    const LabelMatrix y = testing::random_labels(12, 2, 1, 301);

    AdpConfig cfg;
    cfg.alpha = 0.9;
    cfg.beta = 1e-2;
    cfg.max_outer = 1;
    const AdpResult res = adp::adp(w, y, cfg);

    const NormalizedGraph s = symmetric_normalize(w.w);
    const NormalizedGraph round1 = symmetric_normalize(s.s);
    const Classification direct = lgc_iterate(round1, y, cfg.alpha, cfg.inner_tol, 1000);
    CHECK(res.f.f == direct.f);  // same code path, bit-exact
    CHECK(res.outer_iterations == 1);

    // And the prediction agrees with plain LGC on the initial graph.
    const Classification plain = lgc_iterate(s, y, cfg.alpha, cfg.inner_tol, 1000);
    CHECK(predict(res.f) == predict(plain));
}

TEST_CASE("huge beta degenerates adp to a single outer pass") {
    const CliquePair inst = clique_pair();
    AdpConfig cfg;
    cfg.alpha = 0.9;
    cfg.beta = 1e9;
    const AdpResult res = adp::adp(inst.w, inst.y, cfg);
    CHECK(res.converged);
    CHECK(res.outer_iterations == 1);
    CHECK(res.outer_residuals.size() == 1);
}

TEST_CASE("adp separates disjoint cliques") {
    const CliquePair inst = clique_pair();
    AdpConfig cfg;
    cfg.alpha = 0.9;
    for (AdpVariant variant : {AdpVariant::adp, AdpVariant::adp1}) {
        cfg.variant = variant;
        const AdpResult res = run_adp(inst.w, inst.y, cfg);
        CHECK(predict(res.f) == std::vector<int>{0, 0, 1, 1});
    }
}

TEST_CASE("block separation: no cross-clique mass ever appears") {
    const CliquePair inst = clique_pair();
    AdpConfig cfg;
    cfg.alpha = 0.9;
    cfg.beta = 1e-12;  // force several outer rounds
    cfg.max_outer = 4;
    for (AdpVariant variant : {AdpVariant::adp, AdpVariant::adp1}) {
        cfg.variant = variant;
        const AdpResult res = run_adp(inst.w, inst.y, cfg);
        for (Index i : {0, 1}) {
            for (Index j : {2, 3}) {
                CHECK(res.a.a(i, j) == 0.0);
                CHECK(res.a.a(j, i) == 0.0);
            }
            CHECK(res.f.f(i, 1) == 0.0);  // clique 0 never sees class 1
        }
        for (Index j : {2, 3}) {
            CHECK(res.f.f(j, 0) == 0.0);  // clique 1 never sees class 0
        }
    }
}

TEST_CASE("adp1 first step is the hand-evaluated joint update") {
    const Dataset data = testing::random_points(3, 2, 310);
    const WeightGraph w = build_knn_gaussian(data, 1, 1);
    const LabelMatrix y = one_hot({0, 1, kUnlabeled}, 2);

    AdpConfig cfg;
    cfg.alpha = 0.8;
    cfg.beta = 1e9;
    const AdpResult res = adp::adp1(w, y, cfg);
    CHECK(res.outer_iterations == 1);

    // Hand oracle: S0 = normalize(normalize(W)); F1 = alpha S0 Y + (1-alpha) Y.
    const NormalizedGraph s = symmetric_normalize(w.w);
    const NormalizedGraph s0 = symmetric_normalize(s.s);
    Matrix expected = Matrix::Zero(3, 2);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 2; ++j) {
            double acc = 0.0;
            for (Index l = 0; l < 3; ++l) acc += s0.s(i, l) * y.y(l, j);
            expected(i, j) = cfg.alpha * acc + (1.0 - cfg.alpha) * y.y(i, j);
        }
    }
    CHECK((res.f.f - expected).cwiseAbs().maxCoeff() <= 1e-14);

    // The affinity took exactly one step from A0 = S.
    const LabelSimilarity z = label_similarity(res.f.f);
    const Affinity manual = diffusion_step(s, Affinity{s.s, 0, true, {}}, z, cfg.alpha);
    CHECK(res.a.a == manual.a);
}

TEST_CASE("adp converges in no more outer rounds than adp1 on blobs") {
    SynthSpec spec;
    spec.kind = SynthKind::blobs;
    spec.n = 60;
    spec.classes = 2;
    spec.noise = 1.2;
    spec.seed = 42;
    const SynthData synth = make_synthetic(spec);
    const WeightGraph w = build_knn_gaussian(synth.data, 5, 7);
    const LabelMatrix y = sample_labels(synth.truth, 1, 7);
    AdpConfig cfg;
    cfg.alpha = 0.9;
    cfg.beta = 1e-3;
    cfg.variant = AdpVariant::adp;
    const AdpResult a = run_adp(w, y, cfg);
    cfg.variant = AdpVariant::adp1;
    const AdpResult b = run_adp(w, y, cfg);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(a.outer_iterations <= b.outer_iterations);
    CHECK(predict(a.f) == predict(b.f));
}

TEST_CASE("result bookkeeping invariants") {
    const CliquePair inst = clique_pair();
    AdpConfig cfg;
    cfg.alpha = 0.9;
    cfg.beta = 1e-8;
    cfg.max_outer = 6;
    for (AdpVariant variant : {AdpVariant::adp, AdpVariant::adp1}) {
        cfg.variant = variant;
        const AdpResult res = run_adp(inst.w, inst.y, cfg);
        CHECK(res.outer_residuals.size() ==
              static_cast<std::size_t>(res.outer_iterations));
        CHECK(res.diagnostics.size() == res.outer_residuals.size());
        if (res.converged) {
            CHECK(res.outer_residuals.back() <= cfg.beta);
        } else {
            CHECK(res.outer_iterations == cfg.max_outer);
        }
    }
}

TEST_CASE("permutation equivariance on an 8-node instance") {
    const Dataset data = testing::random_points(8, 2, 320);
    const WeightGraph w = build_knn_gaussian(data, 3, 3);
    const LabelMatrix y = testing::random_labels(8, 2, 1, 321);

    // A fixed permutation, applied to rows/columns of every input.
    const std::vector<Index> perm{3, 7, 0, 4, 1, 6, 2, 5};
    Matrix pw(8, 8);
    Matrix py = Matrix::Zero(8, 2);
    std::vector<int> original(8, kUnlabeled);
    for (Index i = 0; i < 8; ++i) {
        for (Index j = 0; j < 8; ++j) {
            pw(i, j) = w.w(perm[static_cast<std::size_t>(i)],
                           perm[static_cast<std::size_t>(j)]);
        }
        py.row(i) = y.y.row(perm[static_cast<std::size_t>(i)]);
    }
    LabelMatrix y_perm;
    y_perm.y = py;
    y_perm.classes = 2;
    for (Index i = 0; i < 8; ++i) {
        if (py.row(i).sum() > 0.0) y_perm.labeled.push_back(i);
    }

    AdpConfig cfg;
    cfg.alpha = 0.5;
    cfg.beta = 1e-6;
    cfg.inner_tol = 1e-10;
    const AdpResult base = adp::adp(w, y, cfg);
    const AdpResult permuted = adp::adp(WeightGraph{pw, 3, {}}, y_perm, cfg);
    for (Index i = 0; i < 8; ++i) {
        const Index pi = perm[static_cast<std::size_t>(i)];
        CHECK((permuted.f.f.row(i) - base.f.f.row(pi)).cwiseAbs().maxCoeff() <= 1e-6);
        for (Index j = 0; j < 8; ++j) {
            const Index pj = perm[static_cast<std::size_t>(j)];
            CHECK(permuted.a.a(i, j) == doctest::Approx(base.a.a(pi, pj)).epsilon(1e-6));
        }
    }
}

TEST_CASE("all-zero label matrix degenerates to unsupervised diffusion") {
    const CliquePair inst = clique_pair();
    const LabelMatrix empty = one_hot({kUnlabeled, kUnlabeled, kUnlabeled, kUnlabeled}, 2);
    AdpConfig cfg;
    cfg.alpha = 0.9;
    const AdpResult res = adp::adp(inst.w, empty, cfg);
    CHECK(res.converged);
    CHECK(res.f.f.isZero(0.0));
    const auto pred = predict(res.f);
    for (int p : pred) CHECK(p == kUndecided);
    // The affinity is the pure tensor-graph limit, still a valid matrix.
    CHECK((res.a.a.array() >= 0.0).all());
}
