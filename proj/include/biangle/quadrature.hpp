#pragma once

// Gauss-Jacobi rules on [-1,1] for the normalized weight, and tensor-product
// rules on the biangle B for the normalized weight W.
//
// Construction: the symmetric tridiagonal (Jacobi) matrix of the recurrence
// coefficients is diagonalized for the nodes (eigenvalues only); the weights
// come from the Christoffel identity w_i = 1 / sum_k ptilde_k(x_i)^2 with
// ptilde the orthonormal polynomials of the *normalized* measure, so the
// weights sum to 1 by construction.  The contract is the degree-(2m-1)
// exactness postcondition, which the tests pin against moment oracles.
//
// Biangle rule: the substitution x1 = u sqrt(x2) factorizes W into the
// normalized Jacobi weight (1-x2)^{alpha-1/2} x2^{beta} on [0,1] (outer)
// times the normalized weight (1-u^2)^{beta-1/2} on [-1,1] (inner); nodes
// map back by (u, x2) -> (u sqrt(x2), x2).

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "biangle/biangle_basis.hpp"
#include "biangle/jacobi.hpp"
#include "biangle/special.hpp"

namespace biangle {

struct QuadratureRule {
    JacobiParams params;
    std::vector<double> nodes;    // strictly increasing, in (-1,1)
    std::vector<double> weights;  // positive, summing to 1
};

namespace detail {

constexpr unsigned kMaxRuleSize = 10000;

// Three-term coefficients of the orthonormal polynomials for the normalized
// Jacobi measure:  t ptilde_n = b_{n+1} ptilde_{n+1} + a_n ptilde_n
//                   + b_n ptilde_{n-1}.
// Cancelled forms at n = 0 and n = 1 keep alpha + beta = -1 regular.
inline void jacobi_tridiag(JacobiParams p, unsigned m, std::vector<double>& a,
                           std::vector<double>& b) {
    const double al = p.alpha, be = p.beta;
    a.assign(m, 0.0);
    b.assign(m, 0.0);  // b[0] unused
    a[0] = (be - al) / (al + be + 2.0);
    if (m >= 2) {
        b[1] = std::sqrt(4.0 * (1.0 + al) * (1.0 + be) /
                         ((al + be + 2.0) * (al + be + 2.0) * (al + be + 3.0)));
    }
    for (unsigned n = 1; n < m; ++n) {
        const double s = 2.0 * n + al + be;
        if (n >= 1) a[n] = (be * be - al * al) / (s * (s + 2.0));
        if (n >= 2) {
            b[n] = std::sqrt(4.0 * n * (n + al) * (n + be) * (n + al + be) /
                             (s * s * (s + 1.0) * (s - 1.0)));
        }
    }
}

}  // namespace detail

// m-node Gauss-Jacobi rule for the normalized weight of p; exact for all
// polynomials of degree <= 2m-1.  Throws std::runtime_error if the
// eigenvalue iteration fails to converge (numerical failure).
inline QuadratureRule gauss_jacobi(JacobiParams p, unsigned m) {
    if (m < 1 || m > detail::kMaxRuleSize) {
        throw std::invalid_argument("gauss_jacobi: size " + std::to_string(m) +
                                    " outside [1, " +
                                    std::to_string(detail::kMaxRuleSize) + "]");
    }
    QuadratureRule rule{p, {}, {}};
    if (m == 1) {
        rule.nodes.push_back((p.beta - p.alpha) / (p.alpha + p.beta + 2.0));
        rule.weights.push_back(1.0);
        return rule;
    }
    std::vector<double> a, b;
    detail::jacobi_tridiag(p, m, a, b);

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(a.data(), m);
    Eigen::VectorXd sub(m - 1);
    for (unsigned i = 0; i + 1 < m; ++i) sub[i] = b[i + 1];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error(
            "gauss_jacobi: eigenvalue iteration failed to converge for "
            "(alpha, beta, m) = (" +
            std::to_string(p.alpha) + ", " + std::to_string(p.beta) + ", " +
            std::to_string(m) + ")");
    }

    rule.nodes.resize(m);
    rule.weights.resize(m);
    double wsum = 0.0;
    for (unsigned i = 0; i < m; ++i) {
        const double x = solver.eigenvalues()[i];  // sorted ascending
        rule.nodes[i] = x;
        // Christoffel weight: 1 / sum_{k<m} ptilde_k(x)^2.
        double pm = 0.0, pc = 1.0, K = 1.0;
        for (unsigned k = 0; k + 1 < m; ++k) {
            const double pn = ((x - a[k]) * pc - (k ? b[k] : 0.0) * pm) / b[k + 1];
            pm = pc;
            pc = pn;
            K += pc * pc;
        }
        rule.weights[i] = 1.0 / K;
        wsum += rule.weights[i];
    }
    // Defensive renormalization (sum is 1 up to rounding already).
    for (auto& w : rule.weights) w /= wsum;
    return rule;
}

// Same rule mapped to [0,1] with weight (1-s)^{alpha} s^{beta}, normalized.
inline QuadratureRule gauss_jacobi01(JacobiParams p, unsigned m) {
    QuadratureRule rule = gauss_jacobi(p, m);
    for (auto& x : rule.nodes) x = 0.5 * (x + 1.0);
    return rule;
}

struct BiangleRule {
    BiangleParams params;
    std::vector<BianglePoint> nodes;
    std::vector<double> weights;  // positive, summing to 1
    unsigned degree;              // guaranteed total-degree exactness
};

// m x m tensor rule on B for the normalized weight W; exact for bivariate
// polynomials of total degree <= 2m-1.
inline BiangleRule biangle_rule(BiangleParams p, unsigned m) {
    const QuadratureRule outer =
        gauss_jacobi01(JacobiParams(p.alpha - 0.5, p.beta), m);
    const QuadratureRule inner =
        gauss_jacobi(JacobiParams(p.beta - 0.5, p.beta - 0.5), m);
    BiangleRule rule{p, {}, {}, 2 * m - 1};
    rule.nodes.reserve(static_cast<std::size_t>(m) * m);
    rule.weights.reserve(static_cast<std::size_t>(m) * m);
    for (unsigned i = 0; i < m; ++i) {
        const double x2 = outer.nodes[i];
        const double r = std::sqrt(x2);
        for (unsigned j = 0; j < m; ++j) {
            rule.nodes.emplace_back(inner.nodes[j] * r, x2);
            rule.weights.push_back(outer.weights[i] * inner.weights[j]);
        }
    }
    return rule;
}

// Debug CSV dump (node1, node2, weight), 17 significant digits.
inline void dump_rule_csv(const BiangleRule& rule, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("dump_rule_csv: cannot open " + path);
    }
    out << "node1,node2,weight\n";
    char buf[128];
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", rule.nodes[i].x1,
                      rule.nodes[i].x2, rule.weights[i]);
        out << buf;
    }
}

}  // namespace biangle
