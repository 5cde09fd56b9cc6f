#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "abloc/detection.hpp"
#include "abloc/experiments.hpp"

using namespace abloc;

namespace {

SystemConfig desk() { return desk_detection_config(); }

}  // namespace

TEST_CASE("H0 slot probabilities: geometric noise law") {
    SystemConfig cfg = desk();
    const Geometry geom = build_geometry(cfg);

    SUBCASE("no noise puts all mass on the empty slot") {
        cfg.delta = 0;
        const SlotProbs probs = slot_probs_h0(cfg, geom);
        for (int i = 0; i < geom.slot_count; ++i) CHECK(probs.p[i] == 0.0);
        CHECK(probs.p.back() == 1.0);
    }
    SUBCASE("hand-evaluated entry") {
        const SlotProbs probs = slot_probs_h0(cfg, geom);  // delta = 0.002
        CHECK(probs.p[1] == doctest::Approx(0.002 * 0.998).epsilon(1e-12));
    }
    SUBCASE("probabilities sum to one") {
        for (double delta : {0.0, 0.002, 0.1, 0.7}) {
            cfg.delta = delta;
            cfg.alpha = std::min(cfg.alpha, 1.0 - delta);
            const SlotProbs probs = slot_probs_h0(cfg, geom);
            double sum = 0;
            for (double p : probs.p) sum += p;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("H1 slot probabilities: four-branch law") {
    SystemConfig cfg = desk();
    const Geometry geom = build_geometry(cfg);

    SUBCASE("hand-evaluated abnormality-slot entry") {
        const SlotProbs probs = slot_probs_h1(3, cfg, geom);
        CHECK(probs.p[2] == doctest::Approx(0.302 * 0.998 * 0.998).epsilon(1e-9));
        CHECK(probs.p[2] == doctest::Approx(0.300793).epsilon(1e-5));
    }
    SUBCASE("alpha = 0 collapses the pre-abnormality branch to the H0 law") {
        cfg.alpha = 0;
        const SlotProbs h1 = slot_probs_h1(4, cfg, geom);
        const SlotProbs h0 = slot_probs_h0(cfg, geom);
        for (int i = 0; i < 4; ++i)
            CHECK(h1.p[i] == doctest::Approx(h0.p[i]).epsilon(1e-12));
        double sum = 0;
        for (double p : h1.p) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("perfect sensing concentrates on the abnormality slot") {
        cfg.delta = 0;
        for (int j = 1; j <= geom.slot_count; ++j) {
            const SlotProbs probs = slot_probs_h1(j, cfg, geom);
            for (int i = 0; i < geom.slot_count; ++i)
                CHECK(probs.p[i] == (i == j - 1 ? cfg.alpha : 0.0));
            CHECK(probs.p.back() == doctest::Approx(1.0 - cfg.alpha));
        }
    }
    SUBCASE("probabilities sum to one for every abnormality slot") {
        for (int j = 1; j <= geom.slot_count; ++j) {
            const SlotProbs probs = slot_probs_h1(j, cfg, geom);
            double sum = 0;
            for (double p : probs.p) sum += p;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("abnormality slot out of range is rejected") {
        CHECK_THROWS_AS(slot_probs_h1(0, cfg, geom), std::invalid_argument);
        CHECK_THROWS_AS(slot_probs_h1(geom.slot_count + 1, cfg, geom),
                        std::invalid_argument);
    }
}

TEST_CASE("source vector pmf: binomial special case and normalization") {
    SystemConfig cfg = desk();
    SUBCASE("two sensors, one slot, symmetric split") {
        cfg.n_sensors = 2;
        SlotProbs probs;
        probs.p = {0.5, 0.5};
        CHECK(source_vector_pmf({1}, probs, cfg) == doctest::Approx(0.5));
        CHECK(source_vector_pmf({0}, probs, cfg) == doctest::Approx(0.25));
        CHECK(source_vector_pmf({2}, probs, cfg) == doctest::Approx(0.25));
    }
    SUBCASE("empty vector carries all mass when delta = 0") {
        cfg.delta = 0;
        const Geometry geom = build_geometry(cfg);
        const SlotProbs probs = slot_probs_h0(cfg, geom);
        CHECK(source_vector_pmf(SourceVector(geom.slot_count, 0), probs, cfg) == 1.0);
    }
    SUBCASE("exhaustive pmf sum is one") {
        cfg.n_sensors = 5;
        cfg.x_fc = 240;  // K = 4
        const Geometry geom = build_geometry(cfg);
        const SlotProbs probs = slot_probs_h1(2, cfg, geom);
        double sum = 0;
        enumerate_source_vectors(5, 4, 5, [&](const SourceVector& r) {
            sum += source_vector_pmf(r, probs, cfg);
        });
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("over-full vectors are rejected") {
        cfg.n_sensors = 2;
        SlotProbs probs;
        probs.p = {0.5, 0.5};
        CHECK_THROWS_AS(source_vector_pmf({3}, probs, cfg), std::invalid_argument);
    }
}

TEST_CASE("source vector enumeration") {
    SUBCASE("two sensors, two slots: six vectors, hand enumerated") {
        std::set<SourceVector> seen;
        enumerate_source_vectors(2, 2, 2, [&](const SourceVector& r) {
            CHECK(seen.insert(r).second);  // no duplicates
        });
        const std::set<SourceVector> expected = {
            {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
        CHECK(seen == expected);
    }
    SUBCASE("counts follow stars and bars") {
        CHECK(count_source_vectors(6, 5) == 462);
        CHECK(count_source_vectors(2, 2) == 6);
        std::uint64_t visited = 0;
        enumerate_source_vectors(6, 5, 6, [&](const SourceVector&) { ++visited; });
        CHECK(visited == 462);
    }
    SUBCASE("cap zero leaves only the empty vector") {
        std::uint64_t visited = 0;
        enumerate_source_vectors(6, 5, 0, [&](const SourceVector& r) {
            ++visited;
            for (int ri : r) CHECK(ri == 0);
        });
        CHECK(visited == 1);
    }
    SUBCASE("exact budget is enforced") {
        EnumerationPolicy policy = EnumerationPolicy::exact();
        policy.exact_budget = 100;
        CHECK_THROWS_AS(check_exact_budget(6, 5, policy), std::runtime_error);
        CHECK_NOTHROW(check_exact_budget(2, 2, policy));
    }
}

TEST_CASE("truncation residual bounds the omitted mass") {
    SystemConfig cfg = desk();
    cfg.delta = 0.05;
    const Geometry geom = build_geometry(cfg);
    const SlotProbs probs = slot_probs_h1(2, cfg, geom);
    for (int cap = 0; cap <= 4; ++cap) {
        double omitted = 0;
        enumerate_source_vectors(cfg.n_sensors, geom.slot_count, cfg.n_sensors,
                                 [&](const SourceVector& r) {
                                     int n1 = 0;
                                     for (int ri : r) n1 += ri;
                                     if (n1 > cap)
                                         omitted += source_vector_pmf(r, probs, cfg);
                                 });
        CHECK(truncation_residual(probs, cfg.n_sensors, cap) >= omitted - 1e-12);
    }
}

TEST_CASE("marker activation probability closed forms") {
    SystemConfig cfg = desk();
    const DetectionModel model(cfg);
    const Geometry geom = model.geometry();
    const SourceVector zero(geom.slot_count, 0);

    SUBCASE("noise-only memoryless activation") {
        const double q = count_tail(cfg.tau2, cfg.lambda, TailMode::ExactPoisson);
        const double expected = 1.0 - std::pow(1.0 - q, geom.slot_count);
        CHECK(model.marker_activation_prob(zero, SensorType::Memoryless,
                                           TailMode::ExactPoisson) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("M = 0 makes the source vector irrelevant") {
        SystemConfig flat = cfg;
        flat.storage_m = 0;
        const DetectionModel m0(flat);
        SourceVector r = zero;
        r[0] = 3;
        r[2] = 2;
        for (SensorType type : {SensorType::Memoryless, SensorType::Aggregate})
            CHECK(m0.marker_activation_prob(r, type, TailMode::ExactPoisson) ==
                  doctest::Approx(m0.marker_activation_prob(zero, type,
                                                            TailMode::ExactPoisson)));
    }
    SUBCASE("no noise, no sources, exact mode: zero") {
        SystemConfig quiet = cfg;
        quiet.lambda = 0;
        const DetectionModel mq(quiet);
        for (SensorType type : {SensorType::Memoryless, SensorType::Aggregate})
            CHECK(mq.marker_activation_prob(zero, type, TailMode::ExactPoisson) == 0.0);
    }
    SUBCASE("monotone in M, lambda, and threshold") {
        SourceVector r = zero;
        r[1] = 2;
        double prev = -1;
        for (double m : {0.0, 1e6, 1e7, 1e8}) {
            SystemConfig c = cfg;
            c.storage_m = m;
            c.beta = 0;  // keep M > beta K T valid as M grows
            c.beta = m > 0 ? m / (7.0 * c.slot_t) : 1.0;
            c.k_s = 7;
            const double p = DetectionModel(c).marker_activation_prob(
                r, SensorType::Memoryless, TailMode::ExactPoisson);
            CHECK(p >= prev - 1e-12);
            prev = p;
        }
        prev = -1;
        for (double lambda : {0.0, 1.0, 2.0, 5.0}) {
            SystemConfig c = cfg;
            c.lambda = lambda;
            const double p = DetectionModel(c).marker_activation_prob(
                r, SensorType::Aggregate, TailMode::ExactPoisson);
            CHECK(p >= prev - 1e-12);
            prev = p;
        }
        prev = 2;
        for (double tau2 : {2.0, 4.0, 8.0, 16.0}) {
            SystemConfig c = cfg;
            c.tau2 = tau2;
            const double p = DetectionModel(c).marker_activation_prob(
                r, SensorType::Memoryless, TailMode::ExactPoisson);
            CHECK(p <= prev + 1e-12);
            prev = p;
        }
    }
}

TEST_CASE("false alarm and miss detection degenerate cases") {
    SystemConfig cfg = desk();
    const EnumerationPolicy policy = EnumerationPolicy::exact();

    SUBCASE("tau1 = 0 always alarms") {
        cfg.tau1 = 0;
        const DetectionModel model(cfg);
        for (SensorType type : {SensorType::Memoryless, SensorType::Aggregate}) {
            CHECK(model.false_alarm_prob(type, TailMode::ExactPoisson, policy).value ==
                  doctest::Approx(1.0));
            CHECK(model.miss_detection_prob(type, TailMode::ExactPoisson, policy).value ==
                  doctest::Approx(0.0));
        }
    }
    SUBCASE("no activation channel: zero false alarm") {
        cfg.delta = 0;
        cfg.storage_m = 0;
        cfg.lambda = 0;
        const DetectionModel model(cfg);
        CHECK(model.false_alarm_prob(SensorType::Memoryless, TailMode::ExactPoisson,
                                     policy).value == doctest::Approx(0.0));
    }
    SUBCASE("certain direct activation: zero miss") {
        cfg.alpha = 1.0;
        cfg.delta = 0;
        const DetectionModel model(cfg);
        CHECK(model.miss_detection_prob(SensorType::Memoryless, TailMode::ExactPoisson,
                                        policy).value == doctest::Approx(0.0));
    }
    SUBCASE("unreachable tau1: certain miss") {
        cfg.tau1 = cfg.n_sensors + 1;
        const DetectionModel model(cfg);
        CHECK(model.miss_detection_prob(SensorType::Memoryless, TailMode::ExactPoisson,
                                        policy).value == doctest::Approx(1.0));
    }
}

TEST_CASE("detection error prior weighting") {
    SystemConfig cfg = desk();
    const EnumerationPolicy policy = EnumerationPolicy::exact();
    const DetectionModel base(cfg);
    const double fa = base.false_alarm_prob(SensorType::Memoryless,
                                            TailMode::ExactPoisson, policy).value;
    const double md = base.miss_detection_prob(SensorType::Memoryless,
                                               TailMode::ExactPoisson, policy).value;
    for (double prior : {0.0, 0.1, 1.0}) {
        cfg.prior_h0 = prior;
        const DetectionModel model(cfg);
        CHECK(model.detection_error_prob(SensorType::Memoryless, TailMode::ExactPoisson,
                                         policy).value ==
              doctest::Approx(prior * fa + (1 - prior) * md).epsilon(1e-12));
    }
}

TEST_CASE("error probabilities are monotone in tau1") {
    SystemConfig cfg = desk();
    const EnumerationPolicy policy = EnumerationPolicy::exact();
    for (SensorType type : {SensorType::Memoryless, SensorType::Aggregate}) {
        double prev_fa = 2, prev_md = -1;
        for (int tau1 = 0; tau1 <= cfg.n_sensors + 1; ++tau1) {
            cfg.tau1 = tau1;
            const DetectionModel model(cfg);
            const double fa =
                model.false_alarm_prob(type, TailMode::ExactPoisson, policy).value;
            const double md =
                model.miss_detection_prob(type, TailMode::ExactPoisson, policy).value;
            CHECK(fa <= prev_fa + 1e-12);
            CHECK(md >= prev_md - 1e-12);
            prev_fa = fa;
            prev_md = md;
        }
    }
}

TEST_CASE("policies agree: truncated converges to exact, sampled is unbiased") {
    const SystemConfig cfg = desk();
    const DetectionModel model(cfg);
    const double exact = model.false_alarm_prob(SensorType::Memoryless,
                                                TailMode::ExactPoisson,
                                                EnumerationPolicy::exact()).value;
    SUBCASE("full-cap truncation equals exact with zero residual") {
        const ErrorEstimate full = model.false_alarm_prob(
            SensorType::Memoryless, TailMode::ExactPoisson,
            EnumerationPolicy::truncated(cfg.n_sensors));
        CHECK(full.value == doctest::Approx(exact).epsilon(1e-12));
        CHECK(full.residual_bound == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("truncated value is within its residual bound of exact") {
        const ErrorEstimate trunc = model.false_alarm_prob(
            SensorType::Memoryless, TailMode::ExactPoisson,
            EnumerationPolicy::truncated(1));
        CHECK(trunc.provenance == Provenance::AnalyticTruncated);
        CHECK(trunc.value <= exact + 1e-12);
        CHECK(exact - trunc.value <= trunc.residual_bound + 1e-12);
    }
    SUBCASE("sampled estimate lands within four standard errors") {
        const ErrorEstimate sampled = model.false_alarm_prob(
            SensorType::Memoryless, TailMode::ExactPoisson,
            EnumerationPolicy::sampled(20000, 7));
        CHECK(sampled.provenance == Provenance::AnalyticSampled);
        CHECK(std::abs(sampled.value - exact) <=
              std::max(1e-4, 4.0 * sampled.std_err));
    }
}

TEST_CASE("threshold search: argmin, ties, and swept-noise behavior") {
    SystemConfig cfg = desk();
    SUBCASE("single-point grid returns that point") {
        const ThresholdSearchResult res = optimize_thresholds(
            cfg, SensorType::Memoryless, {2}, {8.0}, TailMode::ExactPoisson,
            EnumerationPolicy::exact());
        CHECK(res.best_tau1 == 2);
        CHECK(res.best_tau2 == 8.0);
        CHECK(res.surface.size() == 1);
    }
    SUBCASE("optimal tau1 is non-decreasing in the noise rate") {
        std::vector<int> tau1_grid;
        for (int t = 0; t <= cfg.n_sensors + 1; ++t) tau1_grid.push_back(t);
        int prev = 0;
        for (double lambda : {2.0, 6.0, 10.0}) {
            SystemConfig c = cfg;
            c.lambda = lambda;
            c.tau2 = lambda + 4;  // keep the sensor threshold above the noise mean
            const ThresholdSearchResult res = optimize_thresholds(
                c, SensorType::Memoryless, tau1_grid, {c.tau2},
                TailMode::ExactPoisson, EnumerationPolicy::exact());
            CHECK(res.best_tau1 >= prev);
            prev = res.best_tau1;
        }
    }
    SUBCASE("storage never hurts the minimized error") {
        std::vector<int> tau1_grid = {0, 1, 2, 3, 4};
        const std::vector<double> tau2_grid = {3, 4, 6, 8, 12, 17};
        SystemConfig with = cfg;
        SystemConfig without = cfg;
        without.storage_m = 0;
        without.beta = 1;
        const double pe_with =
            optimize_thresholds(with, SensorType::Memoryless, tau1_grid, tau2_grid,
                                TailMode::ExactPoisson, EnumerationPolicy::exact())
                .best_error;
        const double pe_without =
            optimize_thresholds(without, SensorType::Memoryless, tau1_grid, tau2_grid,
                                TailMode::ExactPoisson, EnumerationPolicy::exact())
                .best_error;
        CHECK(pe_with <= pe_without + 1e-12);
    }
}
