#pragma once

// Univariate Jacobi polynomial toolkit: evaluation by the three-term
// recurrence, the normalized weight function, and the squared-norm constants
// h_n for the *normalized* weight (total mass 1).
//
// All operations are pure; precomputed recurrence tables are immutable after
// construction and safe to share across threads.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "biangle/special.hpp"

namespace biangle {

// Parameters (alpha, beta) of the weight (1-t)^alpha (1+t)^beta on [-1,1].
struct JacobiParams {
    double alpha;
    double beta;

    JacobiParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > -1.0) || !(b > -1.0)) {
            throw std::domain_error(
                "JacobiParams: need alpha > -1 and beta > -1, got (" +
                std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    }
};

namespace detail {
constexpr unsigned kMaxJacobiDegree = 1000000;  // runaway-loop guard
constexpr double kArgSlack = 1e-12;             // tolerated overshoot of [-1,1]

inline void check_degree(unsigned n) {
    if (n > kMaxJacobiDegree) {
        throw std::invalid_argument("jacobi: degree " + std::to_string(n) +
                                    " exceeds guard " +
                                    std::to_string(kMaxJacobiDegree));
    }
}
}  // namespace detail

// Precomputed coefficients of the degree recurrence
//   P_{n+1}(t) = (u[n] + v[n] t) P_n(t) - w[n] P_{n-1}(t),   n >= 1,
//   P_0 = 1,  P_1(t) = ((alpha+beta+2) t + (alpha-beta)) / 2.
// Building the table once keeps hot loops free of per-degree divisions.
class JacobiRecurrence {
  public:
    JacobiRecurrence(JacobiParams p, unsigned nmax) : p_(p), nmax_(nmax) {
        detail::check_degree(nmax);
        const double a = p.alpha, b = p.beta;
        if (nmax >= 1) {
            const std::size_t m = nmax;  // coefficients for n = 1 .. nmax-1
            u_.resize(m, 0.0);
            v_.resize(m, 0.0);
            w_.resize(m, 0.0);
            for (unsigned n = 1; n + 1 <= nmax; ++n) {
                const double s = 2.0 * n + a + b;
                const double c1 = 2.0 * (n + 1.0) * (n + a + b + 1.0) * s;
                u_[n] = (s + 1.0) * (a * a - b * b) / c1;
                v_[n] = s * (s + 1.0) * (s + 2.0) / c1;
                w_[n] = 2.0 * (n + a) * (n + b) * (s + 2.0) / c1;
            }
        }
    }

    const JacobiParams& params() const { return p_; }
    unsigned max_degree() const { return nmax_; }

    // P_n(t) for the fixed n = max_degree().
    double eval_top(double t) const {
        double pm = 1.0;
        if (nmax_ == 0) return pm;
        double p = 0.5 * ((p_.alpha + p_.beta + 2.0) * t + (p_.alpha - p_.beta));
        for (unsigned n = 1; n < nmax_; ++n) {
            const double next = (u_[n] + v_[n] * t) * p - w_[n] * pm;
            pm = p;
            p = next;
        }
        return p;
    }

    // sum_{k<=nmax} c[k] P_k(t) streamed without materializing all degrees.
    double eval_dot(double t, const std::vector<double>& c) const {
        double pm = 1.0;
        double acc = c[0];
        if (nmax_ == 0) return acc;
        double p = 0.5 * ((p_.alpha + p_.beta + 2.0) * t + (p_.alpha - p_.beta));
        acc += c[1] * p;
        for (unsigned n = 1; n < nmax_; ++n) {
            const double next = (u_[n] + v_[n] * t) * p - w_[n] * pm;
            pm = p;
            p = next;
            acc += c[n + 1] * p;
        }
        return acc;
    }

    // Accumulate acc[k] += scale * P_k(t) for all k <= nmax.
    void accumulate_all(double t, double scale, double* acc) const {
        double pm = 1.0;
        acc[0] += scale;
        if (nmax_ == 0) return;
        double p = 0.5 * ((p_.alpha + p_.beta + 2.0) * t + (p_.alpha - p_.beta));
        acc[1] += scale * p;
        for (unsigned n = 1; n < nmax_; ++n) {
            const double next = (u_[n] + v_[n] * t) * p - w_[n] * pm;
            pm = p;
            p = next;
            acc[n + 1] += scale * p;
        }
    }

    // P_k(t) for all k <= nmax written to out[0..nmax].
    void eval_all(double t, double* out) const {
        out[0] = 1.0;
        if (nmax_ == 0) return;
        out[1] = 0.5 * ((p_.alpha + p_.beta + 2.0) * t + (p_.alpha - p_.beta));
        for (unsigned n = 1; n < nmax_; ++n) {
            out[n + 1] = (u_[n] + v_[n] * t) * out[n] - w_[n] * out[n - 1];
        }
    }

  private:
    JacobiParams p_;
    unsigned nmax_;
    std::vector<double> u_, v_, w_;
};

// P_n^{(alpha,beta)}(t).  Inputs within 1e-12 outside [-1,1] are clamped;
// farther outside is a domain error; n above the loop guard is rejected.
inline double jacobi_eval(JacobiParams p, unsigned n, double t) {
    detail::check_degree(n);
    t = clamp_with_slack(t, -1.0, 1.0, detail::kArgSlack, "jacobi_eval");
    if (n == 0) return 1.0;
    const double a = p.alpha, b = p.beta;
    double pm = 1.0;
    double pc = 0.5 * ((a + b + 2.0) * t + (a - b));
    for (unsigned k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        const double c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        const double c2 = (s + 1.0) * (a * a - b * b);
        const double c3 = s * (s + 1.0) * (s + 2.0);
        const double c4 = 2.0 * (k + a) * (k + b) * (s + 2.0);
        const double next = ((c2 + c3 * t) * pc - c4 * pm) / c1;
        pm = pc;
        pc = next;
    }
    return pc;
}

// P_n^{(alpha,beta)}(1) = (alpha+1)_n / n!, assembled in log space.
inline double jacobi_at_one(JacobiParams p, unsigned n) {
    if (n == 0) return 1.0;
    return std::exp(log_pochhammer(p.alpha + 1.0, n) - log_factorial(n));
}

// Normalized weight density: Gamma(a+b+2) / (2^{a+b+1} Gamma(a+1) Gamma(b+1))
// * (1-t)^a (1+t)^b, integrating to 1 over [-1,1].
inline double jacobi_weight_logconst(JacobiParams p) {
    const double a = p.alpha, b = p.beta;
    return log_gamma(a + b + 2.0) - (a + b + 1.0) * std::log(2.0) -
           log_gamma(a + 1.0) - log_gamma(b + 1.0);
}

inline double jacobi_weight(JacobiParams p, double t) {
    t = clamp_with_slack(t, -1.0, 1.0, detail::kArgSlack, "jacobi_weight");
    if ((t >= 1.0 && p.alpha < 0.0) || (t <= -1.0 && p.beta < 0.0)) {
        throw std::domain_error(
            "jacobi_weight: density unbounded at the endpoint t = " +
            std::to_string(t));
    }
    return std::exp(jacobi_weight_logconst(p)) * std::pow(1.0 - t, p.alpha) *
           std::pow(1.0 + t, p.beta);
}

// Squared norm h_n = \int P_n^2 w dt for the normalized weight:
//   h_n = (alpha+1)_n (beta+1)_n (alpha+beta+1)
//         / [ n! (alpha+beta+1)_n (alpha+beta+2n+1) ],
// the trailing factor a plain number, not a Pochhammer symbol.  h_0 = 1 is
// returned exactly (the log-space assembly is singular at alpha+beta = -1,
// where the value is still 1 by normalization).
inline double jacobi_norm_h(JacobiParams p, unsigned n) {
    if (n == 0) return 1.0;
    const double a = p.alpha, b = p.beta, nn = n;
    return std::exp(log_gamma(a + b + 2.0) + log_gamma(nn + a + 1.0) +
                    log_gamma(nn + b + 1.0) - std::log(2.0 * nn + a + b + 1.0) -
                    log_gamma(a + 1.0) - log_gamma(b + 1.0) -
                    log_gamma(nn + a + b + 1.0) - log_factorial(n));
}

}  // namespace biangle
