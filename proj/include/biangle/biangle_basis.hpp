#pragma once

// The bivariate orthogonal system on the parabolic biangle
//   B = { (x1, x2) : x1^2 <= x2 <= 1 },
// its normalized weight
//   W(x) = Gamma(a+b+3/2) / (Gamma(1/2) Gamma(a+1/2) Gamma(b+1/2))
//          * (1-x2)^{a-1/2} (x2-x1^2)^{b-1/2},
// the basis
//   P_{n,k}(x) = P_{n-k}^{(a-1/2, b+k)}(2 x2 - 1) * q_k(x1, x2),
//   q_k(x1, x2) = x2^{k/2} P_k^{(b-1/2, b-1/2)}(x1 / sqrt(x2)),
// and the L2 normalization constants g_{n,k} with
//   (g_{n,k})^{-1} = h_{n-k}^{(a-1/2, b+k)} h_k^{(b-1/2, b-1/2)}
//                    * (b+1)_k / (a+b+3/2)_k .
// q_k is evaluated by a homogenized recurrence that is polynomial in
// (x1, x2), so the parabola cusp x2 = 0 needs no square roots.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "biangle/jacobi.hpp"
#include "biangle/special.hpp"

namespace biangle {

struct BiangleParams {
    double alpha;
    double beta;

    BiangleParams(double a, double b) : alpha(a), beta(b) {
        if (!basis_valid()) {
            throw std::domain_error(
                "BiangleParams: need alpha > -1/2 and beta > -1/2, got (" +
                std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    }

    bool basis_valid() const { return alpha > -0.5 && beta > -0.5; }
    bool theorem_valid() const { return alpha - 0.5 >= beta && beta >= 0.0; }
    bool product_formula_valid() const {
        return beta > 0.0 && alpha - beta > 0.5;
    }
};

namespace detail {
constexpr double kMembershipTol = 1e-12;
}

// A point of B.  Coordinates violating the membership inequalities by at most
// 1e-12 are projected onto the boundary; larger violations are errors.
struct BianglePoint {
    double x1;
    double x2;

    BianglePoint(double a, double b) : x1(a), x2(b) {
        if (x2 > 1.0) {
            if (x2 > 1.0 + detail::kMembershipTol) {
                throw std::domain_error("BianglePoint: x2 = " +
                                        std::to_string(x2) + " exceeds 1");
            }
            x2 = 1.0;
        }
        if (x2 < 0.0) {
            if (x2 < -detail::kMembershipTol) {
                throw std::domain_error("BianglePoint: x2 = " +
                                        std::to_string(x2) + " below 0");
            }
            x2 = 0.0;
        }
        if (x1 * x1 > x2) {
            if (x1 * x1 > x2 + detail::kMembershipTol) {
                throw std::domain_error(
                    "BianglePoint: x1^2 = " + std::to_string(x1 * x1) +
                    " exceeds x2 = " + std::to_string(x2));
            }
            const double r = std::sqrt(x2);
            x1 = (x1 < 0.0) ? -r : r;
        }
    }
};

// The distinguished corner point e = (1, 1).
inline BianglePoint e_point() { return BianglePoint(1.0, 1.0); }

// Normalized weight density W(x); domain error on a boundary where the
// corresponding exponent is negative (density unbounded there).
inline double weight_W_logconst(BiangleParams p) {
    return log_gamma(p.alpha + p.beta + 1.5) - log_gamma(0.5) -
           log_gamma(p.alpha + 0.5) - log_gamma(p.beta + 0.5);
}

inline double weight_W(BiangleParams p, BianglePoint x) {
    const double ea = p.alpha - 0.5, eb = p.beta - 0.5;
    const double d1 = 1.0 - x.x2;        // distance to the top edge
    const double d2 = x.x2 - x.x1 * x.x1;  // distance to the parabola
    // Points constructed on (or projected onto) the boundary can land a few
    // ulps inside it; detect "on the boundary" at rounding scale.
    const double tol1 = 4e-15 * (1.0 + std::fabs(x.x2));
    const double tol2 = 4e-15 * (x.x2 + x.x1 * x.x1);
    if ((d1 <= tol1 && ea < 0.0) || (d2 <= tol2 && eb < 0.0)) {
        throw std::domain_error(
            "weight_W: density unbounded on the boundary at (" +
            std::to_string(x.x1) + ", " + std::to_string(x.x2) + ")");
    }
    return std::exp(weight_W_logconst(p)) * std::pow(d1, ea) * std::pow(d2, eb);
}

namespace detail {

// q_k(x1, x2) for all k <= kmax via the homogenized symmetric-Jacobi
// recurrence (lambda = beta - 1/2):
//   q_0 = 1,  q_1 = (lambda + 1) x1,
//   q_{k+1} = A_k x1 q_k - B_k x2 q_{k-1},
//   A_k = (2k+2l+1)(2k+2l+2) / (2 (k+1)(k+2l+1)),
//   B_k = (k+l)^2 (2k+2l+2) / ((k+1)(k+2l+1)(2k+2l)).
// The k = 0 step uses the cancelled form (lambda+1) so beta = 0 is regular.
inline void q_factors(double beta, unsigned kmax, double x1, double x2,
                      double* out) {
    const double l = beta - 0.5;
    out[0] = 1.0;
    if (kmax == 0) return;
    out[1] = (l + 1.0) * x1;
    for (unsigned k = 1; k < kmax; ++k) {
        const double A = (2.0 * k + 2.0 * l + 1.0) * (2.0 * k + 2.0 * l + 2.0) /
                         (2.0 * (k + 1.0) * (k + 2.0 * l + 1.0));
        const double B = (k + l) * (k + l) * (2.0 * k + 2.0 * l + 2.0) /
                         ((k + 1.0) * (k + 2.0 * l + 1.0) * (2.0 * k + 2.0 * l));
        out[k + 1] = A * x1 * out[k] - B * x2 * out[k - 1];
    }
}

}  // namespace detail

// P_{n,k}(x); index error if k > n.
inline double basis_eval(BiangleParams p, unsigned n, unsigned k,
                         BianglePoint x) {
    if (k > n) {
        throw std::invalid_argument("basis_eval: k = " + std::to_string(k) +
                                    " exceeds n = " + std::to_string(n));
    }
    const JacobiParams outer(p.alpha - 0.5, p.beta + k);
    const double o = jacobi_eval(outer, n - k, 2.0 * x.x2 - 1.0);
    if (k <= 64) {  // stack buffer keeps the hot quadrature loops allocation-free
        double q[65];
        detail::q_factors(p.beta, k, x.x1, x.x2, q);
        return o * q[k];
    }
    std::vector<double> q(k + 1);
    detail::q_factors(p.beta, k, x.x1, x.x2, q.data());
    return o * q[k];
}

// Full table P_{n,k}(x) for 0 <= k <= n <= N, flat (n,k)-indexed storage.
// Cost O(N^2) per point; used by kernels and Fourier analysis.
class BasisTable {
  public:
    explicit BasisTable(unsigned N) : N_(N), v_((N + 1) * (N + 2) / 2) {}

    double& at(unsigned n, unsigned k) { return v_[n * (n + 1) / 2 + k]; }
    double at(unsigned n, unsigned k) const { return v_[n * (n + 1) / 2 + k]; }
    unsigned max_degree() const { return N_; }

  private:
    unsigned N_;
    std::vector<double> v_;
};

inline BasisTable basis_table(BiangleParams p, unsigned N, BianglePoint x) {
    BasisTable tab(N);
    std::vector<double> q(N + 1), outer(N + 1);
    detail::q_factors(p.beta, N, x.x1, x.x2, q.data());
    const double s = 2.0 * x.x2 - 1.0;
    for (unsigned k = 0; k <= N; ++k) {
        const JacobiRecurrence rec(JacobiParams(p.alpha - 0.5, p.beta + k),
                                   N - k);
        rec.eval_all(s, outer.data());
        for (unsigned n = k; n <= N; ++n) tab.at(n, k) = outer[n - k] * q[k];
    }
    return tab;
}

// P_{n,k}(e) = (alpha+1/2)_{n-k} (beta+1/2)_k / ((n-k)! k!).
inline double basis_at_e(BiangleParams p, unsigned n, unsigned k) {
    if (k > n) {
        throw std::invalid_argument("basis_at_e: k = " + std::to_string(k) +
                                    " exceeds n = " + std::to_string(n));
    }
    return std::exp(log_pochhammer(p.alpha + 0.5, n - k) +
                    log_pochhammer(p.beta + 0.5, k) - log_factorial(n - k) -
                    log_factorial(k));
}

// g_{n,k}: the constant with g_{n,k} * \int P_{n,k}^2 W dx = 1.
inline double basis_norm_g(BiangleParams p, unsigned n, unsigned k) {
    if (k > n) {
        throw std::invalid_argument("basis_norm_g: k = " + std::to_string(k) +
                                    " exceeds n = " + std::to_string(n));
    }
    const double inv =
        jacobi_norm_h(JacobiParams(p.alpha - 0.5, p.beta + k), n - k) *
        jacobi_norm_h(JacobiParams(p.beta - 0.5, p.beta - 0.5), k) *
        std::exp(log_pochhammer(p.beta + 1.0, k) -
                 log_pochhammer(p.alpha + p.beta + 1.5, k));
    return 1.0 / inv;
}

}  // namespace biangle
