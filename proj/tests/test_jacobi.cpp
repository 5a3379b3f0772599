#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "biangle/jacobi.hpp"
#include "biangle/special.hpp"
#include "oracles.hpp"

using biangle::JacobiParams;
using biangle::JacobiRecurrence;
using biangle::jacobi_at_one;
using biangle::jacobi_eval;
using biangle::jacobi_norm_h;
using biangle::jacobi_weight;
using biangle::log_pochhammer;
using biangle::pochhammer;

namespace {
const std::vector<JacobiParams> kParamSets = {
    JacobiParams(0.0, 0.0),    JacobiParams(1.0, 0.5),
    JacobiParams(-0.5, -0.5),  JacobiParams(2.0, 1.0),
    JacobiParams(0.75, 0.25),  JacobiParams(1.5, 0.5),
    JacobiParams(2.75, -0.25),
};
}  // namespace

TEST_CASE("pochhammer basics") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == Catch::Approx(3.0 * 4.0 * 5.0 * 6.0));
    CHECK(pochhammer(-2.0, 4) == 0.0);  // hits zero factor
    CHECK(std::exp(log_pochhammer(2.5, 6)) ==
          Catch::Approx(pochhammer(2.5, 6)).epsilon(1e-14));
    CHECK_THROWS_AS(log_pochhammer(-1.0, 3), std::domain_error);
}

TEST_CASE("recurrence matches hypergeometric series") {
    for (const auto& p : kParamSets) {
        for (unsigned n = 0; n <= 10; ++n) {
            for (double t : {-1.0, -0.73, -0.25, 0.0, 0.3, 0.5, 0.99, 1.0}) {
                double cond = 0.0;
                const double ref = oracle::jacobi_hypergeometric(
                    p.alpha, p.beta, n, t, &cond);
                const double got = jacobi_eval(p, n, t);
                // The alternating series loses ~cond*eps absolutely; widen
                // the margin accordingly for the badly conditioned corners.
                const double margin = 1e-13 * (1.0 + cond);
                CHECK(got == Catch::Approx(ref).margin(margin).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("pinned values of the recurrence") {
    CHECK(jacobi_eval(JacobiParams(1.0, 0.5), 7, 0.3) ==
          Catch::Approx(-0.13682424118232725).epsilon(1e-14));
    CHECK(jacobi_eval(JacobiParams(0.75, 0.25), 5, -0.4) ==
          Catch::Approx(-0.38484878906249992).epsilon(1e-14));
    // Legendre special case: P_2(t) = (3t^2 - 1)/2.
    CHECK(jacobi_eval(JacobiParams(0.0, 0.0), 2, 0.4) ==
          Catch::Approx(0.5 * (3 * 0.16 - 1)).epsilon(1e-14));
}

TEST_CASE("value at the right endpoint") {
    for (const auto& p : kParamSets) {
        for (unsigned n : {0u, 1u, 2u, 5u, 9u, 25u}) {
            CHECK(jacobi_eval(p, n, 1.0) ==
                  Catch::Approx(jacobi_at_one(p, n)).epsilon(1e-13));
            CHECK(jacobi_at_one(p, n) ==
                  Catch::Approx(oracle::pochhammer_plain(p.alpha + 1.0, n) /
                                oracle::pochhammer_plain(1.0, n))
                      .epsilon(1e-13));
        }
    }
}

TEST_CASE("parameter-swap symmetry under reflection") {
    std::mt19937_64 rng(7);
    for (const auto& p : kParamSets) {
        const JacobiParams q(p.beta, p.alpha);
        for (unsigned n = 0; n <= 9; ++n) {
            const double t = 2.0 * oracle::uniform01(rng) - 1.0;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            CHECK(jacobi_eval(p, n, -t) ==
                  Catch::Approx(sign * jacobi_eval(q, n, t))
                      .margin(1e-13)
                      .epsilon(1e-13));
        }
    }
}

TEST_CASE("squared-norm closed form") {
    // Pinned rational values.
    CHECK(jacobi_norm_h(JacobiParams(1.0, 0.5), 5) ==
          Catch::Approx(0.27692307692307672).epsilon(1e-14));
    CHECK(jacobi_norm_h(JacobiParams(2.0, 1.0), 3) ==
          Catch::Approx(0.80000000000000038).epsilon(1e-14));
    CHECK(jacobi_norm_h(JacobiParams(0.0, 0.0), 1) ==
          Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    // Chebyshev case P_1 = t/2: mean of t^2/4 is 1/8.
    CHECK(jacobi_norm_h(JacobiParams(-0.5, -0.5), 1) ==
          Catch::Approx(0.125).epsilon(1e-14));
    // Degree zero is exactly one even where log-gamma assembly has a pole.
    for (const auto& p : kParamSets) CHECK(jacobi_norm_h(p, 0) == 1.0);
    CHECK(jacobi_norm_h(JacobiParams(-0.5, -0.5), 0) == 1.0);
}

TEST_CASE("weight function values and endpoint errors") {
    const JacobiParams p(1.0, 0.5);
    CHECK(jacobi_weight(p, 0.2) ==
          Catch::Approx(std::exp(biangle::jacobi_weight_logconst(p)) *
                        std::pow(0.8, 1.0) * std::pow(1.2, 0.5))
              .epsilon(1e-14));
    CHECK(jacobi_weight(p, 1.0) == 0.0);  // positive exponent vanishes
    CHECK_THROWS_AS(jacobi_weight(JacobiParams(-0.5, 0.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(jacobi_weight(p, 1.5), std::domain_error);
}

TEST_CASE("argument clamping window") {
    const JacobiParams p(1.0, 0.5);
    CHECK(jacobi_eval(p, 3, 1.0 + 1e-13) ==
          Catch::Approx(jacobi_eval(p, 3, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(jacobi_eval(p, 3, 1.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(jacobi_eval(p, 3, -1.0 - 1e-9), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(JacobiParams(0.0, -1.5), std::domain_error);
}

TEST_CASE("precomputed recurrence agrees with single evaluation") {
    const JacobiParams p(0.75, 0.25);
    const JacobiRecurrence rec(p, 12);
    std::vector<double> all(13);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const double t = 2.0 * oracle::uniform01(rng) - 1.0;
        rec.eval_all(t, all.data());
        for (unsigned n = 0; n <= 12; ++n) {
            CHECK(all[n] == Catch::Approx(jacobi_eval(p, n, t))
                                .margin(1e-14)
                                .epsilon(1e-13));
        }
        // Weighted accumulation: sum_k c_k P_k(t) via both paths.
        std::vector<double> c(13);
        for (unsigned i = 0; i <= 12; ++i) c[i] = oracle::uniform01(rng) - 0.5;
        double dot = 0.0;
        for (unsigned i = 0; i <= 12; ++i) dot += c[i] * all[i];
        CHECK(rec.eval_dot(t, c) ==
              Catch::Approx(dot).margin(1e-13).epsilon(1e-13));
        std::vector<double> acc(13, 0.0);
        rec.accumulate_all(t, 0.5, acc.data());
        for (unsigned n = 0; n <= 12; ++n) {
            CHECK(acc[n] == Catch::Approx(0.5 * all[n])
                                .margin(1e-14)
                                .epsilon(1e-13));
        }
    }
}
