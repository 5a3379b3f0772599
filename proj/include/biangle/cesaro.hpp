#pragma once

// Fourier analysis on the biangle and its Cesaro (C, delta) summability:
// coefficients, means, the summability kernel in direct double-sum form and
// in the closed single-integral form, L1 norms and grid minima of the kernel,
// and the classical addition formula that underlies the closed form.
//
// Conventions (certified against quadrature oracles in the test suite):
//   A_n^delta           = Gamma(n+delta+1) / (Gamma(delta+1) n!)
//   S_n^delta f         = sum_{k<=n} (A_{n-k}^d / A_n^d) Proj_k f
//   kernel (direct)     = sum_{k<=n} (A_{n-k}^d / A_n^d)
//                           sum_{l<=k} P_{k,l}(x) P_{k,l}(y) g_{k,l}
//   univariate kernel   = sum_{k<=n} (A_{n-k}^d / A_n^d) P_k(1) P_k(t) / h_k
//                         with (mu, nu) = (alpha+beta+1/2, beta)
//   closed form (d > 0) = (A_n^{d-1}/A_n^d)
//                           \int univariate_kernel_{d-1}(z(x;t)) w^{(mu,nu)} dt
//   closed form (d = 0) = P_n^{(mu,nu)}(1)/h_n \int P_n^{(mu,nu)}(z(x;t)) w dt
// The d = 0 single-degree integral equals the full partial-sum kernel at e;
// the d > 0 form follows from it by Abel summation.  Both are checked against
// the direct double sum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biangle/biangle_basis.hpp"
#include "biangle/parallel.hpp"
#include "biangle/quadrature.hpp"

namespace biangle {

struct CesaroOrder {
    double delta;

    explicit CesaroOrder(double d) : delta(d) {
        if (!(d >= 0.0)) {
            throw std::domain_error("CesaroOrder: delta must be >= 0, got " +
                                    std::to_string(d));
        }
    }
};

// log A_n^delta; valid for delta > -1 (the closed kernel uses delta - 1).
inline double log_cesaro_A(double delta, unsigned n) {
    if (!(delta > -1.0)) {
        throw std::domain_error("log_cesaro_A: delta must exceed -1, got " +
                                std::to_string(delta));
    }
    return log_gamma(static_cast<double>(n) + delta + 1.0) -
           log_gamma(delta + 1.0) - log_factorial(n);
}

inline double cesaro_A(double delta, unsigned n) {
    return std::exp(log_cesaro_A(delta, n));
}

// Triangular coefficient container, entries c(n,k) for 0 <= k <= n <= N.
struct TriangularCoeffs {
    unsigned N;
    std::vector<double> values;

    explicit TriangularCoeffs(unsigned max_degree)
        : N(max_degree), values((max_degree + 1) * (max_degree + 2) / 2, 0.0) {}

    double& at(unsigned n, unsigned k) { return values[n * (n + 1) / 2 + k]; }
    double at(unsigned n, unsigned k) const {
        return values[n * (n + 1) / 2 + k];
    }
};

namespace detail {

// g_{n,k} table for degrees <= N (setup-time lgamma work, reused in loops).
inline TriangularCoeffs g_table(BiangleParams p, unsigned N) {
    TriangularCoeffs g(N);
    for (unsigned n = 0; n <= N; ++n) {
        for (unsigned k = 0; k <= n; ++k) g.at(n, k) = basis_norm_g(p, n, k);
    }
    return g;
}

}  // namespace detail

// Quadrature Fourier coefficients c(n,k) = sum_j w_j f(x_j) P_{n,k}(x_j).
inline TriangularCoeffs fourier_coeffs(
    const std::function<double(BianglePoint)>& f, BiangleParams p, unsigned N,
    const BiangleRule& rule) {
    const std::size_t nn = rule.nodes.size();
    const std::size_t ncoef = (N + 1) * (N + 2) / 2;
    const std::size_t block = 512;
    const std::size_t nblocks = (nn + block - 1) / block;
    std::vector<std::vector<double>> partial(nblocks,
                                             std::vector<double>(ncoef, 0.0));
    for_each_block(nn, block, [&](std::size_t b, std::size_t e,
                                  std::size_t idx) {
        std::vector<double>& acc = partial[idx];
        for (std::size_t j = b; j < e; ++j) {
            const double wf = rule.weights[j] * f(rule.nodes[j]);
            const BasisTable tab = basis_table(p, N, rule.nodes[j]);
            std::size_t pos = 0;
            for (unsigned n = 0; n <= N; ++n) {
                for (unsigned k = 0; k <= n; ++k, ++pos) {
                    acc[pos] += wf * tab.at(n, k);
                }
            }
        }
    });
    TriangularCoeffs out(N);
    for (const auto& acc : partial) {
        for (std::size_t i = 0; i < ncoef; ++i) out.values[i] += acc[i];
    }
    return out;
}

// S_n^delta f(x) from precomputed coefficients; index error if n > coeffs.N.
inline double cesaro_mean_eval(const TriangularCoeffs& coeffs, BiangleParams p,
                               CesaroOrder order, unsigned n, BianglePoint x) {
    if (n > coeffs.N) {
        throw std::invalid_argument("cesaro_mean_eval: n = " +
                                    std::to_string(n) + " exceeds N = " +
                                    std::to_string(coeffs.N));
    }
    const BasisTable tab = basis_table(p, n, x);
    const TriangularCoeffs g = detail::g_table(p, n);
    const double logAn = log_cesaro_A(order.delta, n);
    double out = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
        double proj = 0.0;
        for (unsigned l = 0; l <= k; ++l) {
            proj += coeffs.at(k, l) * g.at(k, l) * tab.at(k, l);
        }
        out += std::exp(log_cesaro_A(order.delta, n - k) - logAn) * proj;
    }
    return out;
}

// Direct double-sum kernel (the oracle side of the closed-form identity).
inline double kernel_direct(BiangleParams p, CesaroOrder order, unsigned n,
                            BianglePoint x, BianglePoint y) {
    const BasisTable tx = basis_table(p, n, x);
    const BasisTable ty = basis_table(p, n, y);
    const TriangularCoeffs g = detail::g_table(p, n);
    const double logAn = log_cesaro_A(order.delta, n);
    double out = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
        double acc = 0.0;
        for (unsigned l = 0; l <= k; ++l) {
            acc += tx.at(k, l) * ty.at(k, l) * g.at(k, l);
        }
        out += std::exp(log_cesaro_A(order.delta, n - k) - logAn) * acc;
    }
    return out;
}

// Argument map of the closed form; always lands in [-1, 1].
inline double z_arg(BianglePoint x, double t) {
    const double z = 0.5 * (1.0 + t) * (1.0 + t) + (1.0 - t * t) * x.x1 +
                     0.5 * (1.0 - t) * (1.0 - t) * x.x2 - 1.0;
    return std::clamp(z, -1.0, 1.0);
}

namespace detail {

// Coefficients of the univariate kernel sum_k coeff_k P_k^{(mu,nu)}(t) for
// raw order d > -1 (the closed form feeds d = delta - 1):
//   coeff_k = (A_{n-k}^d / A_n^d) P_k(1) / h_k.
inline std::vector<double> univariate_kernel_coeffs(JacobiParams mn, double d,
                                                    unsigned n) {
    std::vector<double> c(n + 1);
    const double logAn = log_cesaro_A(d, n);
    for (unsigned k = 0; k <= n; ++k) {
        c[k] = std::exp(log_cesaro_A(d, n - k) - logAn +
                        log_pochhammer(mn.alpha + 1.0, k) - log_factorial(k)) /
               jacobi_norm_h(mn, k);
    }
    return c;
}

inline JacobiParams kernel_params(BiangleParams p) {
    return JacobiParams(p.alpha + p.beta + 0.5, p.beta);
}

}  // namespace detail

// Univariate Cesaro kernel k_n^delta(t) at (mu, nu) = (alpha+beta+1/2, beta).
inline double univariate_cesaro_kernel(BiangleParams p, CesaroOrder order,
                                       unsigned n, double t) {
    const JacobiParams mn = detail::kernel_params(p);
    const std::vector<double> c =
        detail::univariate_kernel_coeffs(mn, order.delta, n);
    return JacobiRecurrence(mn, n).eval_dot(t, c);
}

// Streaming evaluator of the closed-form kernel for a whole family of degrees
// sharing one quadrature pass: per point, one z-recurrence sweep accumulates
// the moments s_k = \int P_k(z(x;t)) w dt, then every requested degree is a
// dot product against its coefficient row.
class ClosedKernelScan {
  public:
    // delta >= 0; m_quad = 0 chooses max(targets)+8.  Throws when the rule
    // cannot integrate the degree-n coefficient (m_quad < n+2).
    ClosedKernelScan(BiangleParams p, double delta,
                     std::vector<unsigned> targets, unsigned m_quad = 0)
        : params_(p),
          mn_(detail::kernel_params(p)),
          targets_(std::move(targets)),
          nmax_(max_target(targets_)),
          rule_(gauss_jacobi(mn_, resolve_m_quad(nmax_, m_quad))),
          rec_(mn_, nmax_) {
        if (!(delta >= 0.0)) {
            throw std::domain_error("ClosedKernelScan: delta must be >= 0");
        }
        coeff_.resize(targets_.size());
        for (std::size_t i = 0; i < targets_.size(); ++i) {
            const unsigned n = targets_[i];
            std::vector<double> row(n + 1, 0.0);
            if (delta > 0.0) {
                // Folded Abel form: (A_{n-k}^{delta-1} / A_n^{delta}) P_k(1)/h_k.
                const double logAn = log_cesaro_A(delta, n);
                for (unsigned k = 0; k <= n; ++k) {
                    row[k] = std::exp(log_cesaro_A(delta - 1.0, n - k) - logAn +
                                      log_pochhammer(mn_.alpha + 1.0, k) -
                                      log_factorial(k)) /
                             jacobi_norm_h(mn_, k);
                }
            } else {
                // delta = 0: single-degree closed form of the partial sum.
                row[n] = std::exp(log_pochhammer(mn_.alpha + 1.0, n) -
                                  log_factorial(n)) /
                         jacobi_norm_h(mn_, n);
            }
            coeff_[i] = std::move(row);
        }
    }

    const std::vector<unsigned>& targets() const { return targets_; }

    // Kernel values for every target degree at x, written to out[].
    void eval(BianglePoint x, double* out) const {
        const std::size_t nt = targets_.size();
        std::vector<double> s(nmax_ + 1, 0.0);
        for (std::size_t j = 0; j < rule_.nodes.size(); ++j) {
            rec_.accumulate_all(z_arg(x, rule_.nodes[j]), rule_.weights[j],
                                s.data());
        }
        for (std::size_t i = 0; i < nt; ++i) {
            const unsigned n = targets_[i];
            if (n == 0) {
                out[i] = 1.0;  // k_0 == 1 and int w = 1
                continue;
            }
            double acc = 0.0;
            for (unsigned k = 0; k <= n; ++k) acc += coeff_[i][k] * s[k];
            out[i] = acc;
        }
    }

    double eval_single(BianglePoint x) const {
        double v;
        eval(x, &v);
        return v;
    }

  private:
    static unsigned max_target(const std::vector<unsigned>& t) {
        if (t.empty()) {
            throw std::invalid_argument("ClosedKernelScan: no target degrees");
        }
        unsigned m = 0;
        for (unsigned n : t) m = std::max(m, n);
        return m;
    }

    static unsigned resolve_m_quad(unsigned nmax, unsigned m_quad) {
        const unsigned mq = m_quad ? m_quad : nmax + 8;
        if (mq < nmax + 2) {
            throw std::invalid_argument(
                "ClosedKernelScan: m_quad = " + std::to_string(mq) +
                " too small for degree " + std::to_string(nmax) +
                " (need >= n+2)");
        }
        return mq;
    }

    BiangleParams params_;
    JacobiParams mn_;
    std::vector<unsigned> targets_;
    unsigned nmax_;
    QuadratureRule rule_;
    JacobiRecurrence rec_;
    std::vector<std::vector<double>> coeff_;
};

// Closed-form kernel K_n^delta(x) (= kernel_direct(.., x, e)); delta > 0.
inline double kernel_closed(BiangleParams p, CesaroOrder order, unsigned n,
                            BianglePoint x, unsigned m_quad = 0) {
    if (!(order.delta > 0.0)) {
        throw std::domain_error(
            "kernel_closed: needs delta > 0 (use kernel_closed_projection for "
            "the delta-free form)");
    }
    return ClosedKernelScan(p, order.delta, {n}, m_quad).eval_single(x);
}

// Delta-free closed form: the degree-n partial-sum kernel at e,
//   P_n^{(mu,nu)}(1)/h_n \int P_n^{(mu,nu)}(z(x;t)) w^{(mu,nu)}(t) dt.
inline double kernel_closed_projection(BiangleParams p, unsigned n,
                                       BianglePoint x, unsigned m_quad = 0) {
    return ClosedKernelScan(p, 0.0, {n}, m_quad).eval_single(x);
}

// \int_B |K_n^delta(x)| W(x) dx over the given rule.
inline double kernel_l1_norm(BiangleParams p, CesaroOrder order, unsigned n,
                             const BiangleRule& rule) {
    if (n == 0) return 1.0;
    const ClosedKernelScan scan(p, order.delta, {n});
    return block_sum(rule.nodes.size(), [&](std::size_t i) {
        return rule.weights[i] * std::fabs(scan.eval_single(rule.nodes[i]));
    });
}

// Chebyshev-distributed tensor grid on B (closed: includes the boundary and
// the corner e = (1,1)); grid_size points per axis in (u, x2) coordinates.
inline std::vector<BianglePoint> chebyshev_biangle_grid(unsigned grid_size) {
    const unsigned G = std::max(grid_size, 2u);
    std::vector<BianglePoint> pts;
    pts.reserve(static_cast<std::size_t>(G) * G);
    constexpr double pi = 3.14159265358979323846;
    for (unsigned i = 0; i < G; ++i) {
        const double u = std::cos(pi * i / (G - 1));
        for (unsigned j = 0; j < G; ++j) {
            const double v = 0.5 * (1.0 + std::cos(pi * j / (G - 1)));
            pts.emplace_back(u * std::sqrt(v), v);
        }
    }
    return pts;
}

// Minimum of the closed-form kernel over the Chebyshev grid.
inline double kernel_min(BiangleParams p, CesaroOrder order, unsigned n,
                         unsigned grid_size) {
    if (n == 0) return 1.0;
    const ClosedKernelScan scan(p, order.delta, {n});
    const std::vector<BianglePoint> grid = chebyshev_biangle_grid(grid_size);
    return block_min(grid.size(), [&](std::size_t i) {
        return scan.eval_single(grid[i]);
    });
}

// ---------------------------------------------------------------------------
// Addition formula (the identity behind the closed-form kernel).

namespace detail {

// Jacobi evaluation by recurrence without the (alpha, beta) > -1 gate: the
// addition formula's inner factors carry parameters like alpha-beta-1 that
// are legitimate for polynomials even when the weight is not integrable.
inline double jacobi_eval_unchecked(double a, double b, unsigned n, double t) {
    if (n == 0) return 1.0;
    double pm = 1.0;
    double pc = 0.5 * ((a + b + 2.0) * t + (a - b));
    for (unsigned k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        const double c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        if (c1 == 0.0) {
            throw std::domain_error(
                "jacobi_eval_unchecked: degenerate recurrence at degree " +
                std::to_string(k) + " for (a, b) = (" + std::to_string(a) +
                ", " + std::to_string(b) + ")");
        }
        const double c2 = (s + 1.0) * (a * a - b * b);
        const double c3 = s * (s + 1.0) * (s + 2.0);
        const double c4 = 2.0 * (k + a) * (k + b) * (s + 2.0);
        const double next = ((c2 + c3 * t) * pc - c4 * pm) / c1;
        pm = pc;
        pc = next;
    }
    return pc;
}

}  // namespace detail

// Coefficient a_{n,k,l} of the addition formula, exactly as printed:
//   (k+l+a)(k-l+b) (n+a+b+1)_k (2b+1)_{k-l} (n-l+b+1)_l (n-k)!
//   / [ 2^{2k} (k+a) ((k-l)/2+b) (b+1)_k (k+a+1)_{n-k+l} (b+1/2)_{k-l} ].
// Pole error when a denominator factor vanishes.
inline double addition_coeff_a(double alpha, double beta, unsigned n,
                               unsigned k, unsigned l) {
    if (l > k || k > n) {
        throw std::invalid_argument("addition_coeff_a: need l <= k <= n");
    }
    const double dk = k, dl = l, dn = n;
    const double den1 = dk + alpha;
    const double den2 = 0.5 * (dk - dl) + beta;
    // For k == l the pair (k-l+beta)/((k-l)/2+beta) cancels identically, so
    // only the alpha factor can genuinely vanish there.
    const bool pole = std::fabs(den1) < 1e-14 ||
                      (k != l && std::fabs(den2) < 1e-14);
    if (pole) {
        throw std::domain_error(
            "addition_coeff_a: pole, vanishing denominator factor at (n,k,l) "
            "= (" +
            std::to_string(n) + "," + std::to_string(k) + "," +
            std::to_string(l) + ")");
    }
    const double ratio2 = (k == l) ? 1.0 : (dk - dl + beta) / den2;
    const double scalar = (dk + dl + alpha) / den1 * ratio2;
    const double logs =
        log_pochhammer(dn + alpha + beta + 1.0, k) +
        log_pochhammer(2.0 * beta + 1.0, k - l) +
        log_pochhammer(dn - dl + beta + 1.0, l) + log_factorial(n - k) -
        2.0 * dk * std::log(2.0) - log_pochhammer(beta + 1.0, k) -
        log_pochhammer(dk + alpha + 1.0, n - k + l) -
        log_pochhammer(beta + 0.5, k - l);
    return scalar * std::exp(logs);
}

struct AdditionSample {
    double xi;   // in [-1, 1]
    double eta;  // in [-1, 1]
    double r;    // in [0, 1]
    double psi;  // in [0, pi]
};

// |LHS - RHS| of the addition formula at one sample point.
inline double addition_formula_residual(double alpha, double beta, unsigned n,
                                        AdditionSample s) {
    const double cpsi = std::cos(s.psi);
    const double w = 0.5 * (1.0 + s.xi) * (1.0 + s.eta) +
                     0.5 * (1.0 - s.xi) * (1.0 - s.eta) * s.r * s.r +
                     std::sqrt((1.0 - s.xi * s.xi) * (1.0 - s.eta * s.eta)) *
                         s.r * cpsi -
                     1.0;
    const double lhs = detail::jacobi_eval_unchecked(alpha, beta, n, w);
    double rhs = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
        for (unsigned l = 0; l <= k; ++l) {
            const double a = addition_coeff_a(alpha, beta, n, k, l);
            const double half_sum = 0.5 * (k + l);
            const double half_dif = 0.5 * (k - l);
            const double outer =
                std::pow(1.0 - s.xi, half_sum) * std::pow(1.0 + s.xi, half_dif) *
                std::pow(1.0 - s.eta, half_sum) *
                std::pow(1.0 + s.eta, half_dif) *
                detail::jacobi_eval_unchecked(alpha + k + l, beta + k - l,
                                              n - k, s.xi) *
                detail::jacobi_eval_unchecked(alpha + k + l, beta + k - l,
                                              n - k, s.eta);
            const double radial = detail::jacobi_eval_unchecked(
                alpha - beta - 1.0, beta + k - l, l, 2.0 * s.r * s.r - 1.0);
            const double angular =
                std::pow(s.r, static_cast<double>(k - l)) *
                detail::jacobi_eval_unchecked(beta - 0.5, beta - 0.5, k - l,
                                              cpsi);
            rhs += a * outer * radial * angular;
        }
    }
    return std::fabs(lhs - rhs);
}

}  // namespace biangle
