#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "biangle/biangle_basis.hpp"
#include "biangle/jacobi.hpp"
#include "biangle/quadrature.hpp"
#include "oracles.hpp"

using biangle::BiangleParams;
using biangle::BiangleRule;
using biangle::JacobiParams;
using biangle::QuadratureRule;
using biangle::basis_norm_g;
using biangle::basis_table;
using biangle::biangle_rule;
using biangle::gauss_jacobi;
using biangle::gauss_jacobi01;

TEST_CASE("one-point rule is the weight barycenter") {
    const JacobiParams p(1.0, 0.5);
    const QuadratureRule r = gauss_jacobi(p, 1);
    REQUIRE(r.nodes.size() == 1);
    CHECK(r.nodes[0] ==
          Catch::Approx((p.beta - p.alpha) / (p.alpha + p.beta + 2.0))
              .epsilon(1e-14));
    CHECK(r.weights[0] == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("node layout and weight positivity") {
    for (const JacobiParams p :
         {JacobiParams(0.0, 0.0), JacobiParams(1.0, 0.5),
          JacobiParams(-0.5, -0.5), JacobiParams(2.75, -0.25)}) {
        const QuadratureRule r = gauss_jacobi(p, 24);
        REQUIRE(r.nodes.size() == 24);
        double mass = 0.0;
        for (std::size_t i = 0; i < 24; ++i) {
            CHECK(r.nodes[i] > -1.0);
            CHECK(r.nodes[i] < 1.0);
            if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
            CHECK(r.weights[i] > 0.0);
            mass += r.weights[i];
        }
        CHECK(mass == Catch::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("moments match the Beta-law closed form") {
    for (const JacobiParams p :
         {JacobiParams(0.0, 0.0), JacobiParams(1.0, 0.5),
          JacobiParams(-0.5, -0.5), JacobiParams(2.0, 1.0),
          JacobiParams(1.5, 0.5)}) {
        const unsigned m = 12;
        const QuadratureRule r = gauss_jacobi(p, m);
        // The oracle's alternating binomial sum loses ~cond*eps digits, so
        // cap the power and widen the margin by the conditioning scale.
        for (unsigned k = 0; k <= 12; ++k) {
            double got = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                got += r.weights[i] * std::pow(r.nodes[i], k);
            }
            double cond = 0.0;
            const double ref = oracle::jacobi_moment(p.alpha, p.beta, k,
                                                     &cond);
            CHECK(got == Catch::Approx(ref)
                             .margin(1e-13 * (1.0 + cond))
                             .epsilon(1e-12));
        }
    }
}

TEST_CASE("exactness stops at degree 2m") {
    const JacobiParams p(1.0, 0.5);
    const unsigned m = 6;
    const QuadratureRule r = gauss_jacobi(p, m);
    double got = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        got += r.weights[i] * std::pow(r.nodes[i], 2 * m);
    }
    // t^{2m} is the first monomial a Gauss rule cannot integrate exactly.
    CHECK(std::fabs(got - oracle::jacobi_moment(p.alpha, p.beta, 2 * m)) >
          1e-10);
}

TEST_CASE("weight density normalization cross-check") {
    // For integer exponents the density is a polynomial, so the (0,0) rule
    // integrates it exactly: int w dt over [-1,1] must be 1.  This pins the
    // normalization constant through a path that never calls log-gamma.
    const JacobiParams w(2.0, 1.0);
    const QuadratureRule legendre = gauss_jacobi(JacobiParams(0.0, 0.0), 6);
    double mass = 0.0;
    for (std::size_t i = 0; i < legendre.nodes.size(); ++i) {
        // Legendre rule carries dt/2; multiply back the interval length.
        mass += 2.0 * legendre.weights[i] *
                biangle::jacobi_weight(w, legendre.nodes[i]);
    }
    CHECK(mass == Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("unit-interval variant") {
    const JacobiParams p(0.75, 0.5);
    const unsigned m = 10;
    const QuadratureRule r = gauss_jacobi01(p, m);
    for (double x : r.nodes) {
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    for (unsigned k = 0; k <= 2 * m - 1; ++k) {
        double got = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            got += r.weights[i] * std::pow(r.nodes[i], k);
        }
        CHECK(got ==
              Catch::Approx(oracle::beta01_moment(p.alpha, p.beta, k))
                  .margin(1e-14)
                  .epsilon(1e-12));
    }
}

TEST_CASE("rule size limits") {
    CHECK_THROWS_AS(gauss_jacobi(JacobiParams(0.0, 0.0), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(gauss_jacobi(JacobiParams(0.0, 0.0), 10001),
                    std::invalid_argument);
}

TEST_CASE("biangle rule integrates monomials") {
    for (const BiangleParams p :
         {BiangleParams(1.0, 0.5), BiangleParams(0.5, 0.5),
          BiangleParams(2.0, 1.0), BiangleParams(1.5, 0.0)}) {
        const unsigned m = 8;
        const BiangleRule r = biangle_rule(p, m);
        REQUIRE(r.nodes.size() == static_cast<std::size_t>(m) * m);
        CHECK(r.degree == 2 * m - 1);
        double mass = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            mass += w;
        }
        CHECK(mass == Catch::Approx(1.0).epsilon(1e-13));
        for (unsigned a = 0; a <= 7; ++a) {
            for (unsigned b = 0; a + 2 * b <= 2 * m - 1; ++b) {
                double got = 0.0;
                for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                    got += r.weights[i] * std::pow(r.nodes[i].x1, a) *
                           std::pow(r.nodes[i].x2, b);
                }
                const double want = oracle::biangle_moment(p, a, b);
                CHECK(got ==
                      Catch::Approx(want).margin(2e-14).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("rule nodes satisfy the membership constraint") {
    const BiangleRule r = biangle_rule(BiangleParams(1.0, 0.5), 16);
    for (const auto& x : r.nodes) {
        CHECK(x.x1 * x.x1 <= x.x2 + 1e-15);
        CHECK(x.x2 < 1.0);
        CHECK(x.x2 > 0.0);
    }
}

TEST_CASE("orthonormality of the weighted basis") {
    // int P_{n,k} P_{m,l} W = delta / g: scaling by sqrt(g) must produce the
    // identity Gram matrix.
    for (const BiangleParams p :
         {BiangleParams(1.0, 0.5), BiangleParams(0.75, 0.25),
          BiangleParams(2.0, 1.0)}) {
        const unsigned N = 6;
        const BiangleRule r = biangle_rule(p, 8);
        const std::size_t dim = (N + 1) * (N + 2) / 2;
        std::vector<double> gram(dim * dim, 0.0);
        std::vector<double> scale(dim);
        std::size_t pos = 0;
        for (unsigned n = 0; n <= N; ++n) {
            for (unsigned k = 0; k <= n; ++k, ++pos) {
                scale[pos] = std::sqrt(basis_norm_g(p, n, k));
            }
        }
        for (std::size_t j = 0; j < r.nodes.size(); ++j) {
            const biangle::BasisTable tab = basis_table(p, N, r.nodes[j]);
            std::vector<double> v(dim);
            pos = 0;
            for (unsigned n = 0; n <= N; ++n) {
                for (unsigned k = 0; k <= n; ++k, ++pos) {
                    v[pos] = scale[pos] * tab.at(n, k);
                }
            }
            for (std::size_t aa = 0; aa < dim; ++aa) {
                for (std::size_t bb = 0; bb <= aa; ++bb) {
                    gram[aa * dim + bb] += r.weights[j] * v[aa] * v[bb];
                }
            }
        }
        double max_offdiag = 0.0, max_diag_err = 0.0;
        for (std::size_t aa = 0; aa < dim; ++aa) {
            for (std::size_t bb = 0; bb < aa; ++bb) {
                max_offdiag =
                    std::max(max_offdiag, std::fabs(gram[aa * dim + bb]));
            }
            max_diag_err =
                std::max(max_diag_err, std::fabs(gram[aa * dim + aa] - 1.0));
        }
        CHECK(max_offdiag <= 1e-9);
        CHECK(max_diag_err <= 1e-9);
    }
}

TEST_CASE("csv dump shape") {
    const BiangleRule r = biangle_rule(BiangleParams(1.0, 0.5), 3);
    const std::string path = "rule_dump_test.csv";
    biangle::dump_rule_csv(r, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "node1,node2,weight");
    std::size_t rows = 0;
    double mass = 0.0;
    while (std::getline(in, line)) {
        ++rows;
        double a, b, w;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &w) == 3);
        mass += w;
    }
    CHECK(rows == 9);
    CHECK(mass == Catch::Approx(1.0).epsilon(1e-12));
    std::remove(path.c_str());
}
