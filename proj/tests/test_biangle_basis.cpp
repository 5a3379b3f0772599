#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "biangle/biangle_basis.hpp"
#include "oracles.hpp"

using biangle::BasisTable;
using biangle::BiangleParams;
using biangle::BianglePoint;
using biangle::basis_at_e;
using biangle::basis_eval;
using biangle::basis_norm_g;
using biangle::basis_table;
using biangle::e_point;
using biangle::weight_W;

namespace {
const BiangleParams kP15(1.0, 0.5);
}

TEST_CASE("membership projection and rejection") {
    CHECK_THROWS_AS(BianglePoint(0.5, 0.2), std::domain_error);  // 0.25 > 0.2
    CHECK_THROWS_AS(BianglePoint(0.0, 1.1), std::domain_error);
    CHECK_THROWS_AS(BianglePoint(0.0, -0.1), std::domain_error);
    const BianglePoint snapped(1.0 + 5e-14, 1.0 + 5e-14);
    CHECK(snapped.x2 == 1.0);
    CHECK(snapped.x1 == 1.0);
    const BianglePoint near_parabola(std::sqrt(0.3) + 1e-14, 0.3);
    CHECK(near_parabola.x1 * near_parabola.x1 <=
          near_parabola.x2 + 1e-15);  // snapped onto the parabola
}

TEST_CASE("parameter validity flags") {
    CHECK_THROWS_AS(BiangleParams(-0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(BiangleParams(0.0, -0.6), std::domain_error);
    CHECK(BiangleParams(2.0, 0.75).product_formula_valid());
    CHECK_FALSE(BiangleParams(1.0, 0.0).product_formula_valid());
    CHECK_FALSE(BiangleParams(1.0, 0.6).product_formula_valid());
    CHECK(BiangleParams(1.0, 0.5).theorem_valid());
    CHECK_FALSE(BiangleParams(0.5, 0.25).theorem_valid());
}

TEST_CASE("weight density values") {
    // Constant-density case: all exponents vanish, W = normalization const.
    const BiangleParams phalf(0.5, 0.5);
    for (const BianglePoint x :
         {BianglePoint(0.2, 0.5), BianglePoint(-0.4, 0.9),
          BianglePoint(0.0, 0.01)}) {
        CHECK(weight_W(phalf, x) == Catch::Approx(0.75).epsilon(1e-14));
    }
    CHECK(weight_W(kP15, BianglePoint(0.0, 0.5)) ==
          Catch::Approx(4.0 / std::acos(-1.0) * std::sqrt(0.5))
              .epsilon(1e-13));
    // Negative exponent on the parabola boundary: unbounded density.
    CHECK_THROWS_AS(weight_W(BiangleParams(1.0, 0.25),
                             BianglePoint(std::sqrt(0.3), 0.3)),
                    std::domain_error);
    // Positive exponents: boundary value is just zero.
    CHECK(weight_W(kP15, BianglePoint(0.0, 1.0)) == 0.0);
}

TEST_CASE("weight density total mass, polynomial case") {
    // (alpha, beta) = (1.5, 0.5): W = c (1 - x2), and
    // int_B (1 - x2) dx = 4/15, so c must be 15/8 for unit mass.
    const BiangleParams p(1.5, 0.5);
    CHECK(weight_W(p, BianglePoint(0.0, 0.0)) ==
          Catch::Approx(15.0 / 8.0).epsilon(1e-13));
    CHECK(weight_W(p, BianglePoint(0.2, 0.6)) ==
          Catch::Approx(15.0 / 8.0 * 0.4).epsilon(1e-13));
}

TEST_CASE("basis against the square-root factorization") {
    std::mt19937_64 rng(101);
    for (const BiangleParams p :
         {BiangleParams(1.0, 0.5), BiangleParams(0.75, 0.25),
          BiangleParams(2.0, 1.0), BiangleParams(1.0, 0.0),
          BiangleParams(0.5, 0.5)}) {
        for (int trial = 0; trial < 12; ++trial) {
            const BianglePoint x = oracle::random_point(rng);
            for (unsigned n = 0; n <= 8; ++n) {
                for (unsigned k = 0; k <= n; ++k) {
                    double cond = 0.0;
                    const double want =
                        oracle::basis_direct_sqrt(p, n, k, x, &cond);
                    // Margin scales with the oracle's cancellation loss.
                    const double margin = 1e-13 * (1.0 + cond);
                    CHECK(basis_eval(p, n, k, x) ==
                          Catch::Approx(want).margin(margin).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("pinned basis values") {
    const BianglePoint x(0.3, 0.6);
    CHECK(basis_eval(kP15, 3, 2, x) ==
          Catch::Approx(0.082500000000000018).epsilon(1e-13));
    CHECK(basis_eval(kP15, 4, 1, x) ==
          Catch::Approx(-0.040949999999999959).epsilon(1e-13));
    CHECK(basis_eval(kP15, 0, 0, x) == 1.0);
}

TEST_CASE("value at the corner e") {
    for (const BiangleParams p :
         {BiangleParams(1.0, 0.5), BiangleParams(2.0, 0.75),
          BiangleParams(1.0, 0.0)}) {
        for (unsigned n = 0; n <= 7; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                const double direct = basis_eval(p, n, k, e_point());
                const double closed = basis_at_e(p, n, k);
                CHECK(direct ==
                      Catch::Approx(closed).margin(1e-13).epsilon(1e-12));
                const double want =
                    oracle::pochhammer_plain(p.alpha + 0.5, n - k) /
                    oracle::pochhammer_plain(1.0, n - k) *
                    oracle::pochhammer_plain(p.beta + 0.5, k) /
                    oracle::pochhammer_plain(1.0, k);
                CHECK(closed ==
                      Catch::Approx(want).margin(1e-13).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("basis on the parabola boundary") {
    // On x2 = x1^2 the inner argument collapses to sign(x1), where the
    // square-root factorization is still well defined for x1 != 0.
    const BianglePoint x(0.6, 0.36);
    for (unsigned n = 0; n <= 6; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
            const double want = oracle::basis_direct_sqrt(kP15, n, k, x);
            CHECK(basis_eval(kP15, n, k, x) ==
                  Catch::Approx(want).margin(1e-12).epsilon(1e-12));
        }
    }
}

TEST_CASE("basis at the cusp") {
    // At (0,0) only the k = 0 chain survives: P_{n,0}(0,0) is the outer
    // polynomial at -1; all k >= 1 factors vanish with x2^{k/2}.
    const BianglePoint cusp(0.0, 0.0);
    for (unsigned n = 1; n <= 5; ++n) {
        for (unsigned k = 1; k <= n; ++k) {
            CHECK(basis_eval(kP15, n, k, cusp) == 0.0);
        }
        const double want = oracle::jacobi_hypergeometric(
            kP15.alpha - 0.5, kP15.beta, n, -1.0);
        CHECK(basis_eval(kP15, n, 0, cusp) ==
              Catch::Approx(want).margin(1e-13).epsilon(1e-12));
    }
}

TEST_CASE("basis table matches pointwise evaluation") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 8; ++trial) {
        const BianglePoint x = oracle::random_point(rng);
        const BasisTable tab = basis_table(kP15, 9, x);
        for (unsigned n = 0; n <= 9; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                CHECK(tab.at(n, k) ==
                      Catch::Approx(basis_eval(kP15, n, k, x))
                          .margin(1e-13)
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("pinned norm factors") {
    CHECK(basis_norm_g(kP15, 3, 1) ==
          Catch::Approx(10.239999999999991).epsilon(1e-13));
    CHECK(basis_norm_g(BiangleParams(2.0, 1.0), 4, 2) ==
          Catch::Approx(7.4523428571428409).epsilon(1e-13));
    const BiangleParams ph(0.5, 0.5);
    CHECK(basis_norm_g(ph, 1, 1) == Catch::Approx(5.0).epsilon(1e-13));
    CHECK(basis_norm_g(ph, 1, 0) ==
          Catch::Approx(7.0 / 3.0).epsilon(1e-13));
    CHECK(basis_norm_g(ph, 0, 0) == 1.0);
}

TEST_CASE("index validation") {
    CHECK_THROWS_AS(basis_eval(kP15, 2, 3, BianglePoint(0.1, 0.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(basis_norm_g(kP15, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(basis_at_e(kP15, 2, 3), std::invalid_argument);
}
