#pragma once

// Product formula on the biangle: the geometric composition maps D, E, F, the
// probability measure d-mu realized as a tensor Gauss-Jacobi rule, the
// generalized translation T_x, and convolution against the W-weighted measure.
//
// Coordinate convention: the product identity lives in coordinates
// (x1, x2) with |x1| <= x2 <= 1 and evaluates the basis at (x1, x2^2).
// Public translate/convolve accept plain B-points (b1, b2) with b1^2 <= b2
// and map internally via x2 = sqrt(b2), which leaves the first coordinate
// unchanged.  The measure substitutes s = r^2 and c_i = cos(psi_i), turning
// the density into a product of Jacobi weights:
//   s ~ (1-s)^(alpha-beta-3/2) s^beta  on [0,1],
//   c1 ~ (1-c^2)^(beta-1/2),  c2, c3 ~ (1-c^2)^(beta-1)  on [-1,1],
// renormalized to total mass one.  The radial exponent beta (not beta-1/2)
// is the one under which the basis factorizes exactly; it is pinned by the
// residual tests, which fail by O(1) under the alternative.
//
// Validity: beta > 0 and alpha - beta > 1/2 (integrable density).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biangle/biangle_basis.hpp"
#include "biangle/cesaro.hpp"
#include "biangle/parallel.hpp"
#include "biangle/quadrature.hpp"

namespace biangle {

// D(a, b; r, psi) = ab + sqrt(1-a^2) sqrt(1-b^2) r cos(psi), in [-1, 1].
inline double map_D(double a, double b, double r, double psi) {
    a = clamp_with_slack(a, -1.0, 1.0, detail::kArgSlack, "map_D argument a");
    b = clamp_with_slack(b, -1.0, 1.0, detail::kArgSlack, "map_D argument b");
    const double d = a * b + std::sqrt((1.0 - a * a) * (1.0 - b * b)) * r *
                                 std::cos(psi);
    return std::clamp(d, -1.0, 1.0);
}

// E(a, b; r, psi) = nonnegative root of
//   a^2 b^2 + (1-a^2)(1-b^2) r^2 + 2ab sqrt(1-a^2) sqrt(1-b^2) r cos(psi).
inline double map_E(double a, double b, double r, double psi) {
    a = clamp_with_slack(a, -1.0, 1.0, detail::kArgSlack, "map_E argument a");
    b = clamp_with_slack(b, -1.0, 1.0, detail::kArgSlack, "map_E argument b");
    const double qa = 1.0 - a * a;
    const double qb = 1.0 - b * b;
    const double e2 = a * a * b * b + qa * qb * r * r +
                      2.0 * a * b * std::sqrt(qa * qb) * r * std::cos(psi);
    if (e2 < -1e-14) {
        throw std::runtime_error("map_E: negative radicand " +
                                 std::to_string(e2));
    }
    return std::sqrt(std::clamp(e2, 0.0, 1.0));
}

// F composes D and E:
//   E = E(x2, y2; r, psi1),  theta with cos(theta) = D(x2, y2; r, psi1)/E,
//   G = D(x1/x2, y1/y2; 1, psi2),  F = E * D(cos(theta), G; 1, psi3).
inline double map_F(double x1, double x2, double y1, double y2, double r,
                    double psi1, double psi2, double psi3) {
    if (!(x2 > 0.0) || !(y2 > 0.0)) {
        throw std::domain_error("map_F: needs x2 > 0 and y2 > 0");
    }
    const double e = map_E(x2, y2, r, psi1);
    if (e <= 1e-14) {
        throw std::domain_error("map_F: degenerate configuration, E = " +
                                std::to_string(e));
    }
    const double ct = std::clamp(map_D(x2, y2, r, psi1) / e, -1.0, 1.0);
    const double g = map_D(x1 / x2, y1 / y2, 1.0, psi2);
    return e * map_D(ct, g, 1.0, psi3);
}

// Tensor quadrature realization of the probability measure d-mu on
// (r, psi1, psi2, psi3) in [0,1] x [0,pi]^3.
struct ProductMeasureNode {
    double r, psi1, psi2, psi3;
};

struct ProductMeasureRule {
    BiangleParams params;
    std::vector<ProductMeasureNode> nodes;
    std::vector<double> weights;
    // Cached integration variables s = r^2, c_i = cos(psi_i) (these are the
    // native Gauss nodes; the (r, psi) tuples above are derived from them).
    std::vector<double> s, c1, c2, c3;
};

inline ProductMeasureRule mu_rule(BiangleParams p, unsigned m) {
    if (!p.product_formula_valid()) {
        throw std::domain_error(
            "mu_rule: out_of_validity, needs beta > 0 and alpha - beta > 1/2 "
            "(got alpha = " +
            std::to_string(p.alpha) + ", beta = " + std::to_string(p.beta) +
            ")");
    }
    if (m == 0) throw std::invalid_argument("mu_rule: m must be positive");
    const QuadratureRule srule =
        gauss_jacobi01(JacobiParams(p.alpha - p.beta - 1.5, p.beta), m);
    const QuadratureRule c1rule =
        gauss_jacobi(JacobiParams(p.beta - 0.5, p.beta - 0.5), m);
    const QuadratureRule c23rule =
        gauss_jacobi(JacobiParams(p.beta - 1.0, p.beta - 1.0), m);

    ProductMeasureRule rule{p, {}, {}, {}, {}, {}, {}};
    const std::size_t total = static_cast<std::size_t>(m) * m * m * m;
    rule.nodes.reserve(total);
    rule.weights.reserve(total);
    rule.s.reserve(total);
    rule.c1.reserve(total);
    rule.c2.reserve(total);
    rule.c3.reserve(total);
    double mass = 0.0;
    for (unsigned i = 0; i < m; ++i) {
        const double sv = srule.nodes[i];
        for (unsigned j = 0; j < m; ++j) {
            const double w2 = srule.weights[i] * c1rule.weights[j];
            for (unsigned k = 0; k < m; ++k) {
                const double w3 = w2 * c23rule.weights[k];
                for (unsigned l = 0; l < m; ++l) {
                    const double w = w3 * c23rule.weights[l];
                    rule.nodes.push_back(
                        {std::sqrt(sv), std::acos(c1rule.nodes[j]),
                         std::acos(c23rule.nodes[k]),
                         std::acos(c23rule.nodes[l])});
                    rule.weights.push_back(w);
                    rule.s.push_back(sv);
                    rule.c1.push_back(c1rule.nodes[j]);
                    rule.c2.push_back(c23rule.nodes[k]);
                    rule.c3.push_back(c23rule.nodes[l]);
                    mass += w;
                }
            }
        }
    }
    for (double& w : rule.weights) w /= mass;
    return rule;
}

namespace detail {

constexpr double kCuspEps = 1e-8;

// Core of T_x f(y) in theorem coordinates (x1, xt) with |x1| <= xt, basis
// point (x1, xt^2).  The integrand composition is guarded (no throw inside
// the quadrature loop): as E -> 0 the point (F, E^2) tends to the cusp and
// the integrand stays bounded.
template <typename F>
double translate_core(F&& f, double x1, double xt, double y1, double yt,
                      const ProductMeasureRule& rule) {
    const double a1 = std::clamp(x1 / xt, -1.0, 1.0);
    const double b1 = std::clamp(y1 / yt, -1.0, 1.0);
    const double x2sq = xt * xt;
    const double y2sq = yt * yt;
    const double qa = 1.0 - x2sq;
    const double qb = 1.0 - y2sq;
    const double qab = qa * qb;
    const double xy = xt * yt;
    const double ga = std::sqrt(
        std::max(1.0 - a1 * a1, 0.0) * std::max(1.0 - b1 * b1, 0.0));
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        const double sv = rule.s[i];
        const double rq = std::sqrt(qab * sv);
        const double d = xy + rq * rule.c1[i];
        double e2 = x2sq * y2sq + qab * sv + 2.0 * xy * rq * rule.c1[i];
        e2 = std::clamp(e2, 0.0, 1.0);
        const double e = std::sqrt(e2);
        const double ct = std::clamp(d / std::max(e, 1e-300), -1.0, 1.0);
        const double st = std::sqrt(std::max(1.0 - ct * ct, 0.0));
        const double g = a1 * b1 + ga * rule.c2[i];
        const double sg = std::sqrt(std::max(1.0 - g * g, 0.0));
        const double fv = e * (ct * g + st * sg * rule.c3[i]);
        acc += rule.weights[i] * f(BianglePoint(fv, e2));
    }
    return acc;
}

}  // namespace detail

// Generalized translation T_x f(y) = int f d omega_{x,y} for B-points x, y.
// Exact on the basis: translate(P_{n,k}, x, y) = P_{n,k}(x) P_{n,k}(y) /
// P_{n,k}(e).  Degenerate-point error when either second coordinate is
// within 1e-8 of the cusp.
template <typename F>
double translate(F&& f, BiangleParams /*p*/, BianglePoint x, BianglePoint y,
                 const ProductMeasureRule& rule) {
    if (x.x2 <= detail::kCuspEps || y.x2 <= detail::kCuspEps) {
        throw std::domain_error(
            "translate: point too close to the cusp (x2 <= 1e-8)");
    }
    return detail::translate_core(std::forward<F>(f), x.x1, std::sqrt(x.x2),
                                  y.x1, std::sqrt(y.x2), rule);
}

// | P_{n,k}(x1, x2^2) P_{n,k}(y1, y2^2)
//   - P_{n,k}(e) * int P_{n,k}(F, E^2) d mu |  at theorem-coordinate points
// (x1, x2), (y1, y2) with |x1| <= x2, |y1| <= y2, x2, y2 > 0.
inline double product_formula_residual(BiangleParams p, unsigned n, unsigned k,
                                       std::pair<double, double> x,
                                       std::pair<double, double> y,
                                       const ProductMeasureRule& rule) {
    if (!(x.second > 0.0) || !(y.second > 0.0)) {
        throw std::domain_error(
            "product_formula_residual: needs x2 > 0 and y2 > 0");
    }
    const BianglePoint bx(x.first, x.second * x.second);
    const BianglePoint by(y.first, y.second * y.second);
    const double lhs = basis_eval(p, n, k, bx) * basis_eval(p, n, k, by);
    const auto f = [&](BianglePoint z) { return basis_eval(p, n, k, z); };
    const double rhs = basis_at_e(p, n, k) *
                       detail::translate_core(f, x.first, x.second, y.first,
                                              y.second, rule);
    return std::fabs(lhs - rhs);
}

// Convolution (f * g)(x) = int_B f(y) T_x g(y) W(y) dy; the biangle rule's
// weights already carry the normalized density W.
template <typename F, typename G>
double convolve(F&& f, G&& g, BiangleParams p, BianglePoint x,
                const BiangleRule& brule, const ProductMeasureRule& prule) {
    return block_sum(brule.nodes.size(), [&](std::size_t j) {
        const BianglePoint y = brule.nodes[j];
        return brule.weights[j] * f(y) * translate(g, p, x, y, prule);
    });
}

}  // namespace biangle
