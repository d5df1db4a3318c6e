#include "subrepair/scoring.hpp"

#include "subrepair/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace subrepair;

TEST_CASE("entropy of a column") {
    SUBCASE("single-valued column has zero entropy") {
        const Dataset d = Dataset::from_rows({"c"}, {{"x"}, {"x"}, {"x"}});
        CHECK(attribute_entropy(d, 0) == doctest::Approx(0.0));
    }
    SUBCASE("employee Position column, natural log") {
        // manage x3, technology x2, operate x5:
        // H = -(0.3 ln 0.3 + 0.2 ln 0.2 + 0.5 ln 0.5) = 1.0296530140645735…
        const Dataset d = testing::employee_dataset();
        CHECK(attribute_entropy(d, 2) ==
              doctest::Approx(1.0296530140645735).epsilon(1e-12));
    }
}

TEST_CASE("attribute weights blend rule frequency and entropy") {
    const Dataset d = testing::employee_dataset();

    SUBCASE("cfd part normalizes by the max frequency") {
        // walkthrough CFDs: f = {3,1,3,3}; alpha=0.5; Salary: 0.5 * 1/3
        const auto w = compute_attribute_weights(d, testing::employee_cfds(d), 0.5);
        CHECK(w.cfd_part[1] == doctest::Approx(0.5 / 3.0).epsilon(1e-12));
        CHECK(w.cfd_part[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(w.alpha + w.beta == doctest::Approx(1.0));
    }
    SUBCASE("combined weight never drops below the floor") {
        const auto w = compute_attribute_weights(d, testing::employee_cfds(d), 0.5);
        for (double c : w.combined) CHECK(c >= kWeightFloor);
        for (int i = 0; i < 4; ++i)
            CHECK(w.combined[i] ==
                  doctest::Approx(std::max(w.cfd_part[i] + w.entropy_part[i], kWeightFloor)));
    }
    SUBCASE("no rules: cfd part is zero, entropy still weighs") {
        const auto w = compute_attribute_weights(d, {}, 0.5);
        for (double c : w.cfd_part) CHECK(c == 0.0);
        double entropy_total = 0.0;
        for (double e : w.entropy_part) entropy_total += e;
        CHECK(entropy_total == doctest::Approx(0.5)); // beta
    }
    SUBCASE("all-constant columns: entropy part is zero") {
        const Dataset flat = Dataset::from_rows({"a", "b"}, {{"x", "y"}, {"x", "y"}});
        const auto w = compute_attribute_weights(flat, {}, 0.5);
        for (double e : w.entropy_part) CHECK(e == 0.0);
        for (double c : w.combined) CHECK(c == doctest::Approx(kWeightFloor));
    }
    SUBCASE("entropy part is invariant to the log base") {
        const auto w = compute_attribute_weights(d, testing::employee_fds(d), 0.5);
        for (double base : {2.0, 10.0, 27.18}) {
            double sum = 0.0;
            std::vector<double> h(4);
            for (int i = 0; i < 4; ++i) {
                h[i] = oracle::entropy(d, i, base);
                sum += h[i];
            }
            for (int i = 0; i < 4; ++i)
                CHECK(w.entropy_part[i] ==
                      doctest::Approx(w.beta * h[i] / sum).epsilon(1e-12));
        }
    }
    SUBCASE("alpha outside (0,1) is rejected") {
        CHECK_THROWS_AS(compute_attribute_weights(d, {}, 0.0), Error);
        CHECK_THROWS_AS(compute_attribute_weights(d, {}, 1.0), Error);
    }
}

TEST_CASE("pairwise similarity cases") {
    const Dataset d = testing::employee_dataset();
    const auto w = compute_attribute_weights(d, testing::employee_fds(d), 0.5);

    SUBCASE("identical rows score the full weight sum") {
        double total = 0.0;
        for (double c : w.combined) total += c;
        CHECK(pair_similarity(0, 1, w, d) == doctest::Approx(total).epsilon(1e-12));
    }
    SUBCASE("numeric cells decay as 1/(1+|delta|)") {
        // t0 and t2 differ only in Salary: 6500 vs 6600 -> s = 1/101
        double expected = 0.0;
        for (int j = 0; j < 4; ++j)
            expected += w.combined[j] * (j == 1 ? 1.0 / 101.0 : 1.0);
        CHECK(pair_similarity(0, 2, w, d) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("missing cells: both missing is 1, one missing is 0") {
        const Dataset m = Dataset::from_rows({"a", "b"},
                                             {{"", "1"}, {"", ""}, {"x", "1"}}, "");
        const auto mw = compute_attribute_weights(m, {}, 0.5);
        // rows 0,1: a both missing (s=1), b one missing (s=0)
        CHECK(pair_similarity(0, 1, mw, m) == doctest::Approx(mw.combined[0]));
        // rows 0,2: a one missing (s=0), b equal "1" numeric (s=1)
        CHECK(pair_similarity(0, 2, mw, m) == doctest::Approx(mw.combined[1]));
    }
}

TEST_CASE("density aggregates the K nearest pool similarities") {
    SUBCASE("identical rows: rho = K * total weight") {
        const Dataset d = Dataset::from_rows(
            {"a", "b"}, {{"x", "1"}, {"x", "1"}, {"x", "1"}, {"x", "1"}, {"x", "1"}});
        const auto w = compute_attribute_weights(d, {}, 0.5);
        double total = 0.0;
        for (double c : w.combined) total += c;
        const auto table = compute_density(d, ConflictGraph::from_edges({}), w, 3);
        for (double rho : table.rho) CHECK(rho == doctest::Approx(3.0 * total));
    }
    SUBCASE("K larger than the pool sums the whole pool") {
        const Dataset d = Dataset::from_rows({"a"}, {{"x"}, {"x"}, {"y"}});
        const auto w = compute_attribute_weights(d, {}, 0.5);
        const auto table = compute_density(d, ConflictGraph::from_edges({}), w, 50);
        CHECK(table.neighbor_ids[0].size() == 2);
        CHECK(table.rho[0] ==
              doctest::Approx(pair_similarity(0, 1, w, d) + pair_similarity(0, 2, w, d)));
    }
    SUBCASE("matches the exhaustive sort oracle on random data") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 8; ++trial) {
            auto inst = testing::random_instance(rng, 60, 6, 4);
            const auto groups = group_rules(inst.rules);
            const auto detection = detect_conflicts(inst.dataset, groups);
            const auto w = compute_attribute_weights(inst.dataset, inst.rules, 0.5);
            const auto table = compute_density(inst.dataset, detection.graph, w, 3);
            const auto expected =
                oracle::knn_density(inst.dataset, table.pool, w, 3);
            for (int r = 0; r < inst.dataset.row_count(); ++r)
                CHECK(table.rho[r] == doctest::Approx(expected[r]).epsilon(1e-12));
        }
    }
    SUBCASE("pool falls back to all rows when everything conflicts") {
        const Dataset d = testing::employee_dataset();
        const auto detection = detect_conflicts(d, group_rules(testing::employee_fds(d)));
        REQUIRE(detection.graph.vertex_count() == 10);
        const auto w = compute_attribute_weights(d, testing::employee_fds(d), 0.5);
        const auto table = compute_density(d, detection.graph, w, 3);
        CHECK(table.pool_is_fallback);
        CHECK(table.pool.size() == 10);
        CHECK(table.num_non_conflicting == 0);
        for (int r = 0; r < 10; ++r) {
            CHECK(table.rho[r] > 0.0);
            for (int nb : table.neighbor_ids[r]) CHECK(nb != r); // never itself
        }
    }
    SUBCASE("tiny datasets are refused") {
        const Dataset d = Dataset::from_rows({"a"}, {{"x"}});
        const auto w = compute_attribute_weights(d, {}, 0.5);
        CHECK_THROWS_AS(compute_density(d, ConflictGraph::from_edges({}), w, 3),
                        EmptyPoolError);
    }
    SUBCASE("similarity matrix cache changes nothing") {
        std::mt19937_64 rng(10);
        auto inst = testing::random_instance(rng, 40, 5, 3);
        const auto detection = detect_conflicts(inst.dataset, group_rules(inst.rules));
        const auto w = compute_attribute_weights(inst.dataset, inst.rules, 0.5);
        const auto on_demand =
            compute_density(inst.dataset, detection.graph, w, 3, 1, /*matrix_budget=*/0);
        const auto cached = compute_density(inst.dataset, detection.graph, w, 3, 1,
                                            /*matrix_budget=*/1u << 30);
        CHECK(on_demand.rho == cached.rho);
        CHECK(on_demand.neighbor_ids == cached.neighbor_ids);
    }
    SUBCASE("threads do not change the result") {
        std::mt19937_64 rng(12);
        auto inst = testing::random_instance(rng, 50, 5, 3);
        const auto detection = detect_conflicts(inst.dataset, group_rules(inst.rules));
        const auto w = compute_attribute_weights(inst.dataset, inst.rules, 0.5);
        const auto seq = compute_density(inst.dataset, detection.graph, w, 3, 1);
        const auto par = compute_density(inst.dataset, detection.graph, w, 3, 4);
        CHECK(seq.rho == par.rho);
    }
}

TEST_CASE("component weights from coefficients of variation") {
    SUBCASE("uniform members give the neutral split") {
        const ConflictGraph g = ConflictGraph::from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        Component comp;
        comp.members = {0, 1, 2, 3};
        comp.is_clique = false;
        DensityTable density;
        density.rho = {2.0, 2.0, 2.0, 2.0};
        const auto w = component_weights(comp, density, g);
        CHECK(w.w_density == doctest::Approx(0.5));
        CHECK(w.w_conflict == doctest::Approx(0.5));
    }
    SUBCASE("hand-computed three-stage example") {
        // densities {1,1}: CV_d = 0; degrees {1,3}: CV_c = 0.5
        // -> raw (0.5, 0.75) -> normalized (0.4, 0.6)
        const ConflictGraph g = ConflictGraph::from_edges({{0, 1}, {1, 2}, {1, 3}});
        Component comp;
        comp.members = {0, 1};
        comp.is_clique = false;
        DensityTable density;
        density.rho = {1.0, 1.0, 1.0, 1.0};
        const auto w = component_weights(comp, density, g);
        CHECK(w.cv_density == doctest::Approx(0.0));
        CHECK(w.cv_conflict == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(w.w_density == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(w.w_conflict == doctest::Approx(0.6).epsilon(1e-12));
    }
    SUBCASE("cliques pin density-only weights") {
        const ConflictGraph g = ConflictGraph::from_edges({{0, 1}, {1, 2}, {0, 2}});
        Component comp;
        comp.members = {0, 1, 2};
        comp.is_clique = true;
        DensityTable density;
        density.rho = {1.0, 5.0, 9.0};
        const auto w = component_weights(comp, density, g);
        CHECK(w.w_density == 1.0);
        CHECK(w.w_conflict == 0.0);
    }
    SUBCASE("weights clamp to [0.1, 0.9] and normalize to 1") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 50; ++trial) {
            const int size = 2 + static_cast<int>(rng() % 10);
            const auto edges = testing::random_connected_edges(rng, size);
            const ConflictGraph g = ConflictGraph::from_edges(edges);
            const auto comps = decompose(g);
            DensityTable density;
            density.rho.resize(size);
            for (double& r : density.rho)
                r = static_cast<double>(rng() % 1000) / 100.0;
            for (const Component& comp : comps) {
                if (comp.is_clique) continue;
                const auto w = component_weights(comp, density, g);
                const double raw_d = 0.5 * (1.0 + w.cv_density);
                const double raw_c = 0.5 * (1.0 + w.cv_conflict);
                const double cd = std::clamp(raw_d, 0.1, 0.9);
                const double cc = std::clamp(raw_c, 0.1, 0.9);
                CHECK(cd >= 0.1);
                CHECK(cd <= 0.9);
                CHECK(cc >= 0.1);
                CHECK(cc <= 0.9);
                CHECK(w.w_density + w.w_conflict == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(w.w_density == doctest::Approx(cd / (cd + cc)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("penalty formula") {
    const ConflictGraph g = ConflictGraph::from_edges({{0, 1}, {0, 2}});
    Component comp;
    comp.members = {0, 1, 2};
    comp.is_clique = false;

    SUBCASE("hand value: w=(0.5,0.5), rho=1, CD=2") {
        DensityTable density;
        density.rho = {1.0, 1.0, 1.0};
        ComponentWeights w;
        w.w_density = 0.5;
        w.w_conflict = 0.5;
        const auto scores = score_component(comp, density, g, w, 1e-9);
        CHECK(scores.at(0).penalty == doctest::Approx(1.5).epsilon(1e-6));
        CHECK(scores.at(0).conflict_degree == 2);
    }
    SUBCASE("clique weighting reduces to reciprocal density") {
        DensityTable density;
        density.rho = {2.0, 4.0, 8.0};
        ComponentWeights w;
        w.w_density = 1.0;
        w.w_conflict = 0.0;
        const double eps = 1e-6;
        const auto scores = score_component(comp, density, g, w, eps);
        for (int v : comp.members)
            CHECK(scores.at(v).penalty == doctest::Approx(1.0 / (density.rho[v] + eps)));
    }
    SUBCASE("zero density stays finite through epsilon") {
        DensityTable density;
        density.rho = {0.0, 1.0, 1.0};
        ComponentWeights w;
        w.w_density = 0.5;
        w.w_conflict = 0.5;
        const auto scores = score_component(comp, density, g, w, 1e-6);
        CHECK(std::isfinite(scores.at(0).penalty));
        CHECK(scores.at(0).penalty == doctest::Approx(0.5 * 1e6 + 0.5 * 2).epsilon(1e-9));
    }
    SUBCASE("monotone in density and conflict degree") {
        std::mt19937_64 rng(14);
        for (int trial = 0; trial < 100; ++trial) {
            const double w1 = 0.1 + (rng() % 80) / 100.0;
            ComponentWeights w;
            w.w_density = w1;
            w.w_conflict = 1.0 - w1;
            const double rho_low = (rng() % 100) / 10.0;
            const double rho_high = rho_low + 0.5 + (rng() % 100) / 10.0;
            const int cd = static_cast<int>(rng() % 50);
            auto penalty = [&](double rho, int degree) {
                return w.w_density / (rho + 1e-6) + w.w_conflict * degree;
            };
            CHECK(penalty(rho_high, cd) < penalty(rho_low, cd));
            CHECK(penalty(rho_low, cd) < penalty(rho_low, cd + 1));
        }
    }
}
