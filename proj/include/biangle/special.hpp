#pragma once

// Small special-function helpers shared by the whole library: log-gamma,
// Pochhammer symbols, and log-space binomial-type ratios.  Everything here is
// a pure function of its arguments.
//
// Convention: the log-space helpers require arguments in the domain where the
// underlying Gamma values are positive; callers assemble constants in log
// space *during setup* (single-threaded) and keep hot loops free of lgamma.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace biangle {

// log Γ(x) for x > 0.  Thin wrapper so call sites document the positivity
// requirement; feeds std::lgamma (sign is + for x > 0).
inline double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(x));
    }
    return std::lgamma(x);
}

// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1); empty product = 1.
// Plain product: exact sign semantics for any real a, intended for small n.
inline double pochhammer(double a, unsigned n) {
    double p = 1.0;
    for (unsigned i = 0; i < n; ++i) p *= a + static_cast<double>(i);
    return p;
}

// log (a)_n for a > 0 (all factors positive).
inline double log_pochhammer(double a, unsigned n) {
    if (n == 0) return 0.0;
    return log_gamma(a + static_cast<double>(n)) - log_gamma(a);
}

inline double log_factorial(unsigned n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// Numeric guards -----------------------------------------------------------

inline bool nearly_zero(double x, double tol = 1e-300) {
    return std::fabs(x) < tol;
}

// Clamp x into [lo, hi] when it is within `slack` outside; error otherwise.
inline double clamp_with_slack(double x, double lo, double hi, double slack,
                               const char* what) {
    if (x < lo) {
        if (x < lo - slack) {
            throw std::domain_error(std::string(what) + ": value " +
                                    std::to_string(x) + " below " +
                                    std::to_string(lo));
        }
        return lo;
    }
    if (x > hi) {
        if (x > hi + slack) {
            throw std::domain_error(std::string(what) + ": value " +
                                    std::to_string(x) + " above " +
                                    std::to_string(hi));
        }
        return hi;
    }
    return x;
}

}  // namespace biangle
