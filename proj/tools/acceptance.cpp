// Acceptance report for the biangle summability library.  Each criterion
// prints exactly one [PASS]/[FAIL] line with the measured quantity, the
// pinned tolerance, and the elapsed time.  Criteria with a runtime budget
// fail when they exceed it.
//
// Flags:
//   --only SUBSTR              run only criteria whose name contains SUBSTR
//   --expected-failures A,B,C  criteria that are expected to fail
//
// Exit status is 0 iff the set of failing criteria equals the expected set
// (restricted to the criteria that ran).  Thresholds are asserted as stated;
// criteria whose target the numerics genuinely miss are reported as honest
// failures rather than weakened.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biangle/biangle.hpp"

namespace {

using namespace biangle;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BianglePoint random_point(std::mt19937_64& rng, double x2_min) {
    const double x2 = x2_min + (1.0 - x2_min) * uniform01(rng);
    const double u = 2.0 * uniform01(rng) - 1.0;
    return BianglePoint(u * std::sqrt(x2), x2);
}

const std::vector<BiangleParams>& standard_sets() {
    static const std::vector<BiangleParams> sets = {
        BiangleParams(0.75, 0.25), BiangleParams(1.0, 0.5),
        BiangleParams(2.0, 1.0)};
    return sets;
}

// Direct double-sum kernel K_n(x, e) for every n <= N.
std::vector<double> direct_kernel_all(BiangleParams p, unsigned N,
                                      BianglePoint x, const BasisTable& tab_e,
                                      const TriangularCoeffs& g,
                                      const std::vector<double>& logA) {
    const BasisTable tab = basis_table(p, N, x);
    std::vector<double> block(N + 1), out(N + 1);
    for (unsigned k = 0; k <= N; ++k) {
        double s = 0.0;
        for (unsigned l = 0; l <= k; ++l) {
            s += tab.at(k, l) * tab_e.at(k, l) * g.at(k, l);
        }
        block[k] = s;
    }
    for (unsigned n = 0; n <= N; ++n) {
        double acc = 0.0;
        for (unsigned k = 0; k <= n; ++k) {
            acc += std::exp(logA[n - k] - logA[n]) * block[k];
        }
        out[n] = acc;
    }
    return out;
}

using Verdict = std::pair<bool, std::string>;

// 01: the closed single-integral form of the kernel agrees with the direct
// double sum over basis functions, across parameter sets, orders, degrees.
Verdict crit_closed_form() {
    const unsigned N = 20;
    const double tol = 1e-8;
    double worst = 0.0;
    std::mt19937_64 rng(73);
    for (const BiangleParams& p : standard_sets()) {
        const std::vector<double> deltas = {0.5, 1.0, p.alpha + p.beta + 1.1,
                                            p.alpha + 2.0 * p.beta + 1.5};
        const BasisTable tab_e = basis_table(p, N, e_point());
        TriangularCoeffs g(N);
        for (unsigned n = 0; n <= N; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                g.at(n, k) = basis_norm_g(p, n, k);
            }
        }
        std::vector<unsigned> targets(N + 1);
        for (unsigned n = 0; n <= N; ++n) targets[n] = n;
        for (double delta : deltas) {
            const ClosedKernelScan scan(p, delta, targets);
            std::vector<double> logA(N + 1), closed(N + 1);
            for (unsigned n = 0; n <= N; ++n) {
                logA[n] = log_cesaro_A(delta, n);
            }
            for (int pt = 0; pt < 50; ++pt) {
                const BianglePoint x = random_point(rng, 0.01);
                scan.eval(x, closed.data());
                const std::vector<double> direct =
                    direct_kernel_all(p, N, x, tab_e, g, logA);
                for (unsigned n = 0; n <= N; ++n) {
                    worst = std::max(worst, std::fabs(closed[n] - direct[n]) /
                                                (1.0 + std::fabs(direct[n])));
                }
            }
        }
    }
    return {worst <= tol,
            "max_residual=" + fmt(worst) + " tol=" + fmt(tol)};
}

// 02: kernel nonnegativity at delta = alpha + 2 beta + 3/2.
Verdict crit_positivity() {
    const double tol = -1e-9;
    double worst = 0.0;
    std::string where;
    for (const BiangleParams& p : standard_sets()) {
        const CesaroOrder order(p.alpha + 2.0 * p.beta + 1.5);
        for (unsigned n = 1; n <= 40; ++n) {
            const double m = kernel_min(p, order, n, 4 * n);
            if (m < worst) {
                worst = m;
                std::ostringstream os;
                os << "(alpha,beta)=(" << p.alpha << ',' << p.beta
                   << ") n=" << n;
                where = os.str();
            }
        }
    }
    std::string detail = "min_kernel=" + fmt(worst) + " tol=" + fmt(tol);
    if (!where.empty()) detail += " at " + where;
    return {worst >= tol, detail};
}

// 03: unit L1 mass at delta = alpha + 2 beta + 3/2.
Verdict crit_unit_l1() {
    const double tol = 1e-6;
    double worst = 0.0;
    std::string where;
    for (const BiangleParams& p : standard_sets()) {
        const CesaroOrder order(p.alpha + 2.0 * p.beta + 1.5);
        for (unsigned n = 1; n <= 40; ++n) {
            const BiangleRule rule =
                biangle_rule(p, std::max(64u, 2 * n));
            const double dev =
                std::fabs(kernel_l1_norm(p, order, n, rule) - 1.0);
            if (dev > worst) {
                worst = dev;
                std::ostringstream os;
                os << "(alpha,beta)=(" << p.alpha << ',' << p.beta
                   << ") n=" << n;
                where = os.str();
            }
        }
    }
    std::string detail = "max|l1-1|=" + fmt(worst) + " tol=" + fmt(tol);
    if (!where.empty()) detail += " at " + where;
    return {worst <= tol, detail};
}

std::vector<double> l1_ladder(BiangleParams p, double delta,
                              const std::vector<unsigned>& ladder) {
    const CesaroOrder order(delta);
    std::vector<double> out;
    for (unsigned n : ladder) {
        const BiangleRule rule = biangle_rule(p, std::max(120u, 2 * n));
        out.push_back(kernel_l1_norm(p, order, n, rule));
    }
    return out;
}

// 04: above the critical order the L1 norms stay in a narrow band, and
// below it they keep growing by at least 20% per doubling.
Verdict crit_bounded_above_critical() {
    const BiangleParams p(1.0, 0.5);
    const std::vector<unsigned> ladder = {8, 16, 32, 64, 128};
    const std::vector<double> sup =
        l1_ladder(p, p.alpha + p.beta + 1.1, ladder);
    const double hi = *std::max_element(sup.begin(), sup.end());
    const double lo = *std::min_element(sup.begin(), sup.end());
    const double band = hi / lo;
    const double drift = sup.back() / sup.front();
    const std::vector<double> sub =
        l1_ladder(p, 0.5 * (p.alpha + p.beta + 1.0), ladder);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sub.size(); ++i) {
        min_ratio = std::min(min_ratio, sub[i] / sub[i - 1]);
    }
    const bool pass = band <= 1.5 && drift <= 1.2 && min_ratio >= 1.2;
    std::ostringstream os;
    os << "band=" << fmt(band) << " (tol 1.5) drift=" << fmt(drift)
       << " (tol 1.2) subcritical_min_ratio=" << fmt(min_ratio)
       << " (tol >= 1.2)";
    return {pass, os.str()};
}

// 05: growth exponent of I(n) = int int |P_n(z(x;t))| dm(t) dW(x) along the
// dyadic ladder at delta = 3 for (alpha, beta) = (1, 1/2).
Verdict crit_growth_slope() {
    const BiangleParams p(1.0, 0.5);
    const double delta = 3.0;
    const JacobiParams poly_params(p.alpha + p.beta + delta + 0.5, p.beta);
    const JacobiParams weight_params(p.alpha + p.beta + 0.5, p.beta);
    const std::vector<unsigned> ladder = {8, 16, 32, 64, 128};
    std::vector<double> values;
    for (unsigned n : ladder) {
        const QuadratureRule trule =
            gauss_jacobi(weight_params, std::max(200u, 4 * n));
        const BiangleRule xrule = biangle_rule(p, std::max(120u, 2 * n));
        const JacobiRecurrence rec(poly_params, n);
        values.push_back(block_sum(
            xrule.nodes.size(),
            [&](std::size_t j) {
                double inner = 0.0;
                for (std::size_t i = 0; i < trule.nodes.size(); ++i) {
                    inner += trule.weights[i] *
                             std::fabs(rec.eval_top(
                                 z_arg(xrule.nodes[j], trule.nodes[i])));
                }
                return xrule.weights[j] * inner;
            },
            64));
    }
    const std::size_t m = ladder.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(static_cast<double>(ladder[i]));
        const double ly = std::log(values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    std::ostringstream os;
    os << "slope=" << fmt(slope) << " tol=0.15 ladder=";
    for (std::size_t i = 0; i < m; ++i) {
        os << (i ? "," : "") << fmt(values[i]);
    }
    return {slope <= 0.15, os.str()};
}

// 06: product-formula identity for the basis under the composed measure.
Verdict crit_product_formula() {
    const BiangleParams p(2.0, 0.75);
    const double tol = 1e-6;
    const ProductMeasureRule rule = mu_rule(p, 24);
    std::mt19937_64 rng(42);
    double worst = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
        const double x2 = 0.15 + 0.85 * uniform01(rng);
        const double y2 = 0.15 + 0.85 * uniform01(rng);
        const double x1 = (2.0 * uniform01(rng) - 1.0) * x2;
        const double y1 = (2.0 * uniform01(rng) - 1.0) * y2;
        for (unsigned n = 0; n <= 4; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                worst = std::max(
                    worst, product_formula_residual(p, n, k, {x1, x2},
                                                    {y1, y2}, rule));
            }
        }
    }
    return {worst <= tol,
            "max_residual=" + fmt(worst) + " tol=" + fmt(tol)};
}

// 07: addition formula for the generalized Jacobi expansion.
Verdict crit_addition_formula() {
    const double alpha = 2.0, beta = 0.5, tol = 1e-9;
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (unsigned n = 0; n <= 6; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            const AdditionSample s{2.0 * uniform01(rng) - 1.0,
                                   2.0 * uniform01(rng) - 1.0,
                                   0.05 + 0.90 * uniform01(rng),
                                   0.1 + 2.9 * uniform01(rng)};
            worst = std::max(worst,
                             addition_formula_residual(alpha, beta, n, s));
        }
    }
    return {worst <= tol,
            "max_residual=" + fmt(worst) + " tol=" + fmt(tol)};
}

// 08: quadrature orthonormality of the sqrt(g)-scaled basis up to degree 8.
Verdict crit_orthonormality() {
    const unsigned N = 8;
    const double tol = 1e-9;
    double worst = 0.0;
    for (const BiangleParams& p : standard_sets()) {
        const BiangleRule rule = biangle_rule(p, 12);
        const std::size_t dim = (N + 1) * (N + 2) / 2;
        std::vector<double> gram(dim * dim, 0.0), scale(dim);
        std::size_t pos = 0;
        for (unsigned n = 0; n <= N; ++n) {
            for (unsigned k = 0; k <= n; ++k, ++pos) {
                scale[pos] = std::sqrt(basis_norm_g(p, n, k));
            }
        }
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const BasisTable tab = basis_table(p, N, rule.nodes[j]);
            std::vector<double> v(dim);
            pos = 0;
            for (unsigned n = 0; n <= N; ++n) {
                for (unsigned k = 0; k <= n; ++k, ++pos) {
                    v[pos] = scale[pos] * tab.at(n, k);
                }
            }
            for (std::size_t a = 0; a < dim; ++a) {
                for (std::size_t b = 0; b <= a; ++b) {
                    gram[a * dim + b] += rule.weights[j] * v[a] * v[b];
                }
            }
        }
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b <= a; ++b) {
                const double target = (a == b) ? 1.0 : 0.0;
                worst = std::max(worst,
                                 std::fabs(gram[a * dim + b] - target));
            }
        }
    }
    return {worst <= tol,
            "max_gram_deviation=" + fmt(worst) + " tol=" + fmt(tol)};
}

// 09: degenerate corner (alpha, beta) = (0, 0): L1 norms just above the
// critical order stay bounded along the dyadic ladder.
Verdict crit_chebyshev_edge() {
    const BiangleParams p(0.0, 0.0);
    const std::vector<unsigned> ladder = {8, 16, 32, 64, 128};
    const std::vector<double> l1 = l1_ladder(p, 1.1, ladder);
    bool finite = true;
    for (double v : l1) finite = finite && std::isfinite(v);
    const double drift = l1.back() / l1.front();
    std::ostringstream os;
    os << "drift=" << fmt(drift) << " (tol 1.2) l1=";
    for (std::size_t i = 0; i < l1.size(); ++i) {
        os << (i ? "," : "") << fmt(l1[i]);
    }
    return {finite && drift <= 1.2, os.str()};
}

// 10: Cesaro means of a smooth function converge: the sup error on a grid
// at n = 32 is at most half the error at n = 8.
Verdict crit_means_convergence() {
    const BiangleParams p(1.0, 0.5);
    const CesaroOrder order(p.alpha + p.beta + 1.1);
    const unsigned N = 32;
    const auto f = [](BianglePoint z) { return std::exp(z.x1 + z.x2); };
    const BiangleRule rule = biangle_rule(p, 200);
    const TriangularCoeffs c = fourier_coeffs(f, p, N, rule);
    const auto grid = chebyshev_biangle_grid(48);
    const std::vector<unsigned> degrees = {4, 8, 16, 32};
    std::vector<double> sup(degrees.size(), 0.0);
    for (const BianglePoint& x : grid) {
        const double fx = f(x);
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            sup[i] = std::max(
                sup[i],
                std::fabs(cesaro_mean_eval(c, p, order, degrees[i], x) - fx));
        }
    }
    const double ratio = sup[3] / sup[1];
    std::ostringstream os;
    os << "err(32)/err(8)=" << fmt(ratio) << " tol=0.5 sup_err=";
    for (std::size_t i = 0; i < sup.size(); ++i) {
        os << (i ? "," : "") << fmt(sup[i]);
    }
    return {ratio <= 0.5, os.str()};
}

void print_reference_order_info() {
    // Where the positivity and unit-mass targets do hold: one full unit
    // higher than the tested threshold order.
    for (const BiangleParams& p : standard_sets()) {
        const CesaroOrder order(p.alpha + 2.0 * p.beta + 3.5);
        double min_k = 0.0, l1_dev = 0.0;
        for (unsigned n = 1; n <= 8; ++n) {
            min_k = std::min(min_k, kernel_min(p, order, n, 4 * n));
            const BiangleRule rule = biangle_rule(p, 48);
            l1_dev = std::max(
                l1_dev, std::fabs(kernel_l1_norm(p, order, n, rule) - 1.0));
        }
        std::cout << "[INFO] at delta=alpha+2beta+7/2, (alpha,beta)=("
                  << p.alpha << ',' << p.beta << "): min_kernel=" << fmt(min_k)
                  << " max|l1-1|=" << fmt(l1_dev) << " (n<=8)\n";
    }
}

struct Criterion {
    const char* name;
    double budget_seconds;  // 0 = no budget
    Verdict (*fn)();
};

}  // namespace

int main(int argc, char** argv) {
    std::string only;
    std::set<std::string> expected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = argv[++i];
        } else if (arg == "--expected-failures" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) expected.insert(item);
            }
        } else {
            std::cerr << "usage: acceptance [--only SUBSTR] "
                         "[--expected-failures A,B,C]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {"01_closed_form_identity", 60.0, crit_closed_form},
        {"02_positivity_threshold", 120.0, crit_positivity},
        {"03_unit_l1_mass", 0.0, crit_unit_l1},
        {"04_bounded_above_critical", 0.0, crit_bounded_above_critical},
        {"05_growth_slope", 300.0, crit_growth_slope},
        {"06_product_formula", 180.0, crit_product_formula},
        {"07_addition_formula", 0.0, crit_addition_formula},
        {"08_orthonormality", 0.0, crit_orthonormality},
        {"09_chebyshev_edge", 0.0, crit_chebyshev_edge},
        {"10_means_convergence", 0.0, crit_means_convergence},
    };

    std::set<std::string> failed, ran;
    for (const Criterion& c : criteria) {
        if (!only.empty() && std::string(c.name).find(only) ==
                                 std::string::npos) {
            continue;
        }
        ran.insert(c.name);
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            const Verdict v = c.fn();
            pass = v.first;
            detail = v.second;
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (pass && c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            pass = false;
            detail += " (exceeded " + fmt(c.budget_seconds) + "s budget)";
        }
        if (!pass) failed.insert(c.name);
        std::printf("[%s] %-27s %s  %.1fs\n", pass ? "PASS" : "FAIL", c.name,
                    detail.c_str(), secs);
        std::fflush(stdout);
    }

    if (only.empty()) print_reference_order_info();

    std::set<std::string> expected_ran;
    for (const std::string& e : expected) {
        if (ran.count(e)) {
            expected_ran.insert(e);
        } else if (!only.empty()) {
            // filtered out; ignore
        } else {
            std::cerr << "[WARN] unknown expected failure: " << e << "\n";
        }
    }
    const bool ok = failed == expected_ran;
    std::printf("%zu criteria run, %zu failed (%zu expected)\n", ran.size(),
                failed.size(), expected_ran.size());
    if (!ok) {
        for (const std::string& f : failed) {
            if (!expected_ran.count(f)) {
                std::printf("unexpected failure: %s\n", f.c_str());
            }
        }
        for (const std::string& e : expected_ran) {
            if (!failed.count(e)) {
                std::printf("expected failure passed: %s\n", e.c_str());
            }
        }
    }
    return ok ? 0 : 1;
}
