#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "abloc/config.hpp"
#include "abloc/experiments.hpp"
#include "abloc/tail.hpp"

using namespace abloc;

TEST_CASE("geometry derives slot count and FC noise rate") {
    SystemConfig cfg = reference_config();
    const Geometry geom = build_geometry(cfg);
    CHECK(geom.slot_count == 10);
    CHECK(geom.subregion_len == doctest::Approx(60.0));
    CHECK(geom.fc_scale == doctest::Approx(1.0));
    CHECK(geom.lambda_fc == doctest::Approx(cfg.lambda));
    REQUIRE(geom.sampling_times.size() == 10);
    CHECK(geom.sampling_times[0] == doctest::Approx(3000 + 2700));
    for (std::size_t i = 1; i < geom.sampling_times.size(); ++i)
        CHECK(geom.sampling_times[i] > geom.sampling_times[i - 1]);
}

TEST_CASE("single-slot region when the region spans exactly one slot") {
    SystemConfig cfg = reference_config();
    cfg.x_fc = cfg.x_0 + cfg.v * cfg.slot_t;
    CHECK(build_geometry(cfg).slot_count == 1);
}

TEST_CASE("fc scaling follows the volume ratio") {
    SystemConfig cfg = reference_config();
    cfg.v_fc = 3.0 * cfg.v_s;
    const Geometry geom = build_geometry(cfg);
    CHECK(geom.fc_scale == doctest::Approx(3.0));
    CHECK(geom.lambda_fc == doctest::Approx(3.0 * cfg.lambda));
}

TEST_CASE("config validation names the violated invariant") {
    SystemConfig cfg = reference_config();
    cfg.t_d = cfg.slot_t;  // T_d must be strictly inside the slot
    CHECK_THROWS_WITH_AS(validate_config(cfg),
                         "invalid config: T_d must satisfy 0 < T_d < T",
                         std::invalid_argument);
    cfg = reference_config();
    cfg.t_d = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg = reference_config();
    cfg.alpha = 0.7;
    cfg.delta = 0.4;
    CHECK_THROWS_WITH_AS(validate_config(cfg),
                         "invalid config: alpha + delta must be <= 1",
                         std::invalid_argument);
}

TEST_CASE("storage horizon boundary: K_s = K accepted, K_s < K rejected") {
    SystemConfig cfg = reference_config();
    cfg.k_s = 10;
    CHECK_NOTHROW(validate_config(cfg));
    cfg.k_s = 9;
    CHECK_THROWS_WITH_AS(validate_config(cfg), "invalid config: K_s must be >= K",
                         std::invalid_argument);
}

TEST_CASE("marker hit probability matches hand-evaluated reference values") {
    const SystemConfig cfg = reference_config();
    CHECK(marker_hit_prob(1, 1, cfg.v_s, cfg) == doctest::Approx(1.7281e-7).epsilon(1e-3));
    CHECK(marker_hit_prob(1, 2, cfg.v_s, cfg) == doctest::Approx(1.1894e-7).epsilon(1e-3));
}

TEST_CASE("marker hit probability is linear in receiver volume") {
    SystemConfig cfg = reference_config();
    cfg.v_fc = 2.5 * cfg.v_s;
    for (int i = 1; i <= 4; ++i)
        CHECK(marker_hit_prob(1, i, cfg.v_fc, cfg) ==
              doctest::Approx(2.5 * marker_hit_prob(1, i, cfg.v_s, cfg)));
}

TEST_CASE("marker hit probability decays with slot separation") {
    const SystemConfig cfg = reference_config();
    for (int i = 2; i <= 10; ++i)
        CHECK(marker_hit_prob(1, i, cfg.v_s, cfg) <
              marker_hit_prob(1, i - 1, cfg.v_s, cfg));
    // equivalently: the FC-side kernel mu'_{jK} grows with the release slot
    for (int j = 2; j <= 10; ++j)
        CHECK(marker_hit_prob(j, 10, cfg.v_fc, cfg) >
              marker_hit_prob(j - 1, 10, cfg.v_fc, cfg));
}

TEST_CASE("sampling before release is a contract violation") {
    const SystemConfig cfg = reference_config();
    CHECK_THROWS_AS(marker_hit_prob(3, 2, cfg.v_s, cfg), std::invalid_argument);
    CHECK_THROWS_AS(marker_hit_prob(0, 2, cfg.v_s, cfg), std::invalid_argument);
}

TEST_CASE("gaussian tail reference values and symmetry") {
    CHECK(gaussian_tail_q(0.0) == doctest::Approx(0.5));
    CHECK(gaussian_tail_q(1.0) == doctest::Approx(0.158655).epsilon(1e-5));
    CHECK(gaussian_tail_q(40.0) == doctest::Approx(0.0).epsilon(1e-30));
    for (double x : {0.3, 1.7, 2.9})
        CHECK(gaussian_tail_q(x) + gaussian_tail_q(-x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("count tail closed forms") {
    CHECK(count_tail(0, 7.0, TailMode::ExactPoisson) == 1.0);
    CHECK(count_tail(0, 7.0, TailMode::GaussianApprox) == 1.0);
    CHECK(count_tail(1, 5.0, TailMode::ExactPoisson) ==
          doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-9));
    CHECK(count_tail(3, 0.0, TailMode::ExactPoisson) == 0.0);
    CHECK(count_tail(3, 0.0, TailMode::GaussianApprox) == 0.0);
}

TEST_CASE("count tail monotone in threshold and mean, both modes") {
    for (TailMode mode : {TailMode::ExactPoisson, TailMode::GaussianApprox}) {
        double prev = 1.0;
        for (int t = 1; t <= 30; ++t) {
            const double p = count_tail(t, 8.0, mode);
            CHECK(p <= prev + 1e-12);
            prev = p;
        }
        prev = 0.0;
        for (double mean : {0.5, 1.0, 2.0, 5.0, 9.0, 20.0}) {
            const double p = count_tail(10, mean, mode);
            CHECK(p >= prev - 1e-12);
            prev = p;
        }
    }
}

TEST_CASE("gaussian approximation is close to exact in the high-mean regime") {
    const double exact = count_tail(100, 100.0, TailMode::ExactPoisson);
    const double gauss = count_tail(100, 100.0, TailMode::GaussianApprox);
    CHECK(std::abs(exact - gauss) < 0.05);
}

TEST_CASE("count interval complements to the full line") {
    for (TailMode mode : {TailMode::ExactPoisson, TailMode::GaussianApprox}) {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK(count_interval(0, inf, 6.0, mode) == doctest::Approx(1.0));
        const double split = count_interval(0, 5, 6.0, mode) +
                             count_interval(5, inf, 6.0, mode);
        CHECK(split == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(count_interval(7, 7, 6.0, mode) == 0.0);
    }
}

TEST_CASE("flow regime report matches hand-computed Reynolds numbers") {
    SystemConfig cfg = reference_config();
    CHECK_FALSE(validate_flow_regime(cfg).checked);

    cfg.flow_check = FlowCheck{1000.0, 1e-3, 0.1, 600.0};
    FlowRegimeReport report = validate_flow_regime(cfg);
    CHECK(report.checked);
    CHECK(report.reynolds == doctest::Approx(2000.0));
    CHECK(report.laminar_ok);
    CHECK(report.dispersion_ratio == doctest::Approx(1e-6 * 600 / (0.02 * 0.05 * 0.05)));
    CHECK(report.dispersion_ok);

    cfg.v = 1.0;
    report = validate_flow_regime(cfg);
    CHECK(report.reynolds == doctest::Approx(100000.0));
    CHECK_FALSE(report.laminar_ok);
}

TEST_CASE("effective aggregate threshold defaults to K tau2") {
    SystemConfig cfg = reference_config();
    cfg.tau2_agg = 0;
    const Geometry geom = build_geometry(cfg);
    CHECK(effective_tau2_agg(cfg, geom) == doctest::Approx(10 * cfg.tau2));
    cfg.tau2_agg = 55;
    CHECK(effective_tau2_agg(cfg, geom) == doctest::Approx(55.0));
}
