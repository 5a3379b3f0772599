// biangle: command-line experiments for Cesaro summability on the parabolic
// biangle.  Subcommands:
//
//   kernel-table   per-degree L1 norms (two rule resolutions), grid minima,
//                  and closed-form-vs-direct-sum residuals of the kernel
//   approx         sup/L2 approximation errors of the Cesaro means for a
//                  built-in test function
//   verify         JSON residual report for the structural identities
//   growth-slope   dyadic-ladder growth exponent of the weighted kernel
//                  integrals above the critical order
//
// Conventions: CSV columns as named in each command; floats with 17
// significant digits; identical config + seed gives byte-identical output.
// BIANGLE_THREADS caps worker threads (reductions are deterministic at any
// thread count).  Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "biangle/biangle.hpp"

namespace {

using nlohmann::json;
using namespace biangle;

struct Config {
    double alpha = 1.0;
    double beta = 0.5;
    std::string delta_spec = "positivity";
    unsigned n_max = 20;
    unsigned quad_m = 0;  // 0 = auto per command
    unsigned grid = 0;    // 0 = auto per command
    std::uint64_t seed = 42;
    std::string out = "-";
    std::string function_id = "smooth_exp";
    std::string dump_rule_path;
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// "positivity" -> alpha + 2 beta + 3/2; "critical" or "critical+E" ->
// alpha + beta + 1 (+E); otherwise a plain real.
double resolve_delta(const std::string& spec, double alpha, double beta) {
    if (spec == "positivity") return alpha + 2.0 * beta + 1.5;
    const std::string kw = "critical";
    if (spec.rfind(kw, 0) == 0) {
        const std::string rest = spec.substr(kw.size());
        if (rest.empty()) return alpha + beta + 1.0;
        if (rest[0] != '+') {
            throw std::invalid_argument("bad delta keyword: " + spec);
        }
        char* end = nullptr;
        const double eps = std::strtod(rest.c_str() + 1, &end);
        if (end == rest.c_str() + 1 || *end != '\0') {
            throw std::invalid_argument("bad delta keyword: " + spec);
        }
        return alpha + beta + 1.0 + eps;
    }
    char* end = nullptr;
    const double v = std::strtod(spec.c_str(), &end);
    if (end == spec.c_str() || *end != '\0') {
        throw std::invalid_argument("bad delta value: " + spec);
    }
    return v;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BianglePoint random_point(std::mt19937_64& rng, double x2_min) {
    const double x2 = x2_min + (1.0 - x2_min) * uniform01(rng);
    const double u = 2.0 * uniform01(rng) - 1.0;
    return BianglePoint(u * std::sqrt(x2), x2);
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) {
                throw std::invalid_argument("cannot open output file " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) {
        throw std::runtime_error("non-finite value in " + what);
    }
}

// Direct double-sum kernel values K_n(x, e) for every n <= N in one pass.
std::vector<double> direct_kernel_all(BiangleParams p, double delta,
                                      unsigned N, BianglePoint x,
                                      const BasisTable& tab_e,
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
    (void)delta;
    for (unsigned n = 0; n <= N; ++n) {
        double acc = 0.0;
        for (unsigned k = 0; k <= n; ++k) {
            acc += std::exp(logA[n - k] - logA[n]) * block[k];
        }
        out[n] = acc;
    }
    return out;
}

// Per-degree accumulation of sum w * |K_n| over a rule, deterministic blocks.
std::vector<double> l1_rows(const ClosedKernelScan& scan, unsigned N,
                            const BiangleRule& rule) {
    const std::size_t nn = rule.nodes.size();
    const std::size_t block = 256;
    const std::size_t nblocks = (nn + block - 1) / block;
    std::vector<std::vector<double>> partial(nblocks,
                                             std::vector<double>(N + 1, 0.0));
    for_each_block(nn, block, [&](std::size_t b, std::size_t e,
                                  std::size_t idx) {
        std::vector<double> val(N + 1);
        auto& acc = partial[idx];
        for (std::size_t j = b; j < e; ++j) {
            scan.eval(rule.nodes[j], val.data());
            for (unsigned n = 0; n <= N; ++n) {
                acc[n] += rule.weights[j] * std::fabs(val[n]);
            }
        }
    });
    std::vector<double> out(N + 1, 0.0);
    for (const auto& acc : partial) {
        for (unsigned n = 0; n <= N; ++n) out[n] += acc[n];
    }
    return out;
}

std::vector<double> min_rows(const ClosedKernelScan& scan, unsigned N,
                             const std::vector<BianglePoint>& grid) {
    const std::size_t nn = grid.size();
    const std::size_t block = 256;
    const std::size_t nblocks = (nn + block - 1) / block;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> partial(nblocks,
                                             std::vector<double>(N + 1, inf));
    for_each_block(nn, block, [&](std::size_t b, std::size_t e,
                                  std::size_t idx) {
        std::vector<double> val(N + 1);
        auto& acc = partial[idx];
        for (std::size_t j = b; j < e; ++j) {
            scan.eval(grid[j], val.data());
            for (unsigned n = 0; n <= N; ++n) {
                acc[n] = std::min(acc[n], val[n]);
            }
        }
    });
    std::vector<double> out(N + 1, inf);
    for (const auto& acc : partial) {
        for (unsigned n = 0; n <= N; ++n) out[n] = std::min(out[n], acc[n]);
    }
    return out;
}

int cmd_kernel_table(const Config& cfg) {
    const BiangleParams p(cfg.alpha, cfg.beta);
    const double delta = resolve_delta(cfg.delta_spec, cfg.alpha, cfg.beta);
    const CesaroOrder order(delta);
    const unsigned N = cfg.n_max;
    const unsigned grid_size =
        std::max(cfg.grid ? cfg.grid : 64u, std::max(4 * N, 4u));
    const unsigned M = cfg.quad_m ? cfg.quad_m : std::max(64u, 2 * N);

    std::vector<unsigned> targets(N + 1);
    for (unsigned n = 0; n <= N; ++n) targets[n] = n;
    const ClosedKernelScan scan(p, delta, targets);

    const BiangleRule rule = biangle_rule(p, M);
    const BiangleRule rule2 = biangle_rule(p, 2 * M);
    if (!cfg.dump_rule_path.empty()) dump_rule_csv(rule, cfg.dump_rule_path);

    const std::vector<double> l1 = l1_rows(scan, N, rule);
    const std::vector<double> l1r = l1_rows(scan, N, rule2);
    const std::vector<double> kmin =
        min_rows(scan, N, chebyshev_biangle_grid(grid_size));

    // Closed-vs-direct residual: max over 20 seeded points per degree.
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> logA(N + 1);
    for (unsigned n = 0; n <= N; ++n) logA[n] = log_cesaro_A(delta, n);
    const BasisTable tab_e = basis_table(p, N, e_point());
    TriangularCoeffs g(N);
    for (unsigned n = 0; n <= N; ++n) {
        for (unsigned k = 0; k <= n; ++k) g.at(n, k) = basis_norm_g(p, n, k);
    }
    std::vector<double> resid(N + 1, 0.0), closed(N + 1);
    for (int pt = 0; pt < 20; ++pt) {
        const BianglePoint x = random_point(rng, 0.01);
        scan.eval(x, closed.data());
        const std::vector<double> direct =
            direct_kernel_all(p, delta, N, x, tab_e, g, logA);
        for (unsigned n = 0; n <= N; ++n) {
            resid[n] = std::max(resid[n],
                                std::fabs(closed[n] - direct[n]) /
                                    (1.0 + std::fabs(direct[n])));
        }
    }

    Output out(cfg.out);
    out.stream()
        << "n,delta,l1_norm,l1_norm_refined,min_kernel,closed_vs_direct_"
           "residual\n";
    for (unsigned n = 0; n <= N; ++n) {
        for (double v : {l1[n], l1r[n], kmin[n], resid[n]}) {
            require_finite(v, "kernel-table row " + std::to_string(n));
        }
        out.stream() << n << ',' << fmt17(delta) << ',' << fmt17(l1[n]) << ','
                     << fmt17(l1r[n]) << ',' << fmt17(kmin[n]) << ','
                     << fmt17(resid[n]) << '\n';
    }
    return 0;
}

double builtin_function(const std::string& id, BianglePoint z) {
    if (id == "smooth_exp") return std::exp(z.x1 + z.x2);
    if (id == "abs_edge") return std::fabs(z.x1);
    if (id == "dist_cusp") return std::sqrt(std::max(z.x2 - z.x1 * z.x1, 0.0));
    if (id == "poly3") {
        return 1.0 + 2.0 * z.x1 - z.x2 + 0.5 * z.x1 * z.x2 - z.x2 * z.x2 +
               z.x1 * z.x1 * z.x1;
    }
    throw std::invalid_argument("unknown function id: " + id);
}

int cmd_approx(const Config& cfg) {
    const BiangleParams p(cfg.alpha, cfg.beta);
    const double delta = resolve_delta(cfg.delta_spec, cfg.alpha, cfg.beta);
    const CesaroOrder order(delta);
    const unsigned N = cfg.n_max;
    const unsigned M = cfg.quad_m ? cfg.quad_m : 200;
    const unsigned G = cfg.grid ? cfg.grid : 48;
    const std::string fid = cfg.function_id;
    const auto f = [&](BianglePoint z) { return builtin_function(fid, z); };
    builtin_function(fid, e_point());  // validate the id before heavy work

    const BiangleRule rule = biangle_rule(p, M);
    const TriangularCoeffs c = fourier_coeffs(f, p, N, rule);
    TriangularCoeffs cg(N);
    for (unsigned n = 0; n <= N; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
            cg.at(n, k) = c.at(n, k) * basis_norm_g(p, n, k);
        }
    }
    std::vector<double> logA(N + 1);
    for (unsigned n = 0; n <= N; ++n) logA[n] = log_cesaro_A(delta, n);

    // proj[k](x) = degree-k component of f at x; one basis sweep per point
    // serves every degree row.
    const auto projections = [&](BianglePoint x, std::vector<double>& proj) {
        const BasisTable tab = basis_table(p, N, x);
        for (unsigned k = 0; k <= N; ++k) {
            double s = 0.0;
            for (unsigned l = 0; l <= k; ++l) s += cg.at(k, l) * tab.at(k, l);
            proj[k] = s;
        }
    };
    const auto mean_from_proj = [&](const std::vector<double>& proj,
                                    unsigned n) {
        double acc = 0.0;
        for (unsigned k = 0; k <= n; ++k) {
            acc += std::exp(logA[n - k] - logA[n]) * proj[k];
        }
        return acc;
    };

    const auto grid = chebyshev_biangle_grid(G);
    std::vector<double> sup_err(N + 1, 0.0);
    {
        std::vector<double> proj(N + 1);
        for (const BianglePoint& x : grid) {
            projections(x, proj);
            const double fx = f(x);
            for (unsigned n = 0; n <= N; ++n) {
                sup_err[n] = std::max(sup_err[n],
                                      std::fabs(mean_from_proj(proj, n) - fx));
            }
        }
    }

    // L2(W) error via the coefficient rule, deterministic blocked reduction.
    const std::size_t nn = rule.nodes.size();
    const std::size_t block = 256;
    const std::size_t nblocks = (nn + block - 1) / block;
    std::vector<std::vector<double>> partial(nblocks,
                                             std::vector<double>(N + 1, 0.0));
    for_each_block(nn, block, [&](std::size_t b, std::size_t e,
                                  std::size_t idx) {
        std::vector<double> proj(N + 1);
        auto& acc = partial[idx];
        for (std::size_t j = b; j < e; ++j) {
            projections(rule.nodes[j], proj);
            const double fx = f(rule.nodes[j]);
            for (unsigned n = 0; n <= N; ++n) {
                const double err = mean_from_proj(proj, n) - fx;
                acc[n] += rule.weights[j] * err * err;
            }
        }
    });
    std::vector<double> l2_err(N + 1, 0.0);
    for (const auto& acc : partial) {
        for (unsigned n = 0; n <= N; ++n) l2_err[n] += acc[n];
    }

    Output out(cfg.out);
    out.stream() << "n,sup_error_on_grid,l2_error\n";
    for (unsigned n = 0; n <= N; ++n) {
        const double l2 = std::sqrt(std::max(l2_err[n], 0.0));
        require_finite(sup_err[n], "approx row " + std::to_string(n));
        require_finite(l2, "approx row " + std::to_string(n));
        out.stream() << n << ',' << fmt17(sup_err[n]) << ',' << fmt17(l2)
                     << '\n';
    }
    return 0;
}

int cmd_verify(const Config& cfg) {
    const BiangleParams p(cfg.alpha, cfg.beta);
    std::mt19937_64 rng(cfg.seed);
    json report;
    report["generator"] = "mt19937_64";
    report["alpha"] = cfg.alpha;
    report["beta"] = cfg.beta;
    report["seed"] = cfg.seed;

    // Closed form vs direct double sum over the four standard orders.
    const unsigned N = std::max(1u, std::min(cfg.n_max, 20u));
    double closed_resid = 0.0;
    const std::vector<double> deltas = {
        0.5, 1.0, cfg.alpha + cfg.beta + 1.1,
        cfg.alpha + 2.0 * cfg.beta + 1.5};
    const BasisTable tab_e = basis_table(p, N, e_point());
    TriangularCoeffs g(N);
    for (unsigned n = 0; n <= N; ++n) {
        for (unsigned k = 0; k <= n; ++k) g.at(n, k) = basis_norm_g(p, n, k);
    }
    std::vector<unsigned> targets(N + 1);
    for (unsigned n = 0; n <= N; ++n) targets[n] = n;
    for (double delta : deltas) {
        const ClosedKernelScan scan(p, delta, targets);
        std::vector<double> logA(N + 1), closed(N + 1);
        for (unsigned n = 0; n <= N; ++n) logA[n] = log_cesaro_A(delta, n);
        for (int pt = 0; pt < 20; ++pt) {
            const BianglePoint x = random_point(rng, 0.01);
            scan.eval(x, closed.data());
            const std::vector<double> direct =
                direct_kernel_all(p, delta, N, x, tab_e, g, logA);
            for (unsigned n = 0; n <= N; ++n) {
                closed_resid = std::max(closed_resid,
                                        std::fabs(closed[n] - direct[n]) /
                                            (1.0 + std::fabs(direct[n])));
            }
        }
    }
    report["closed_form_max_residual"] = closed_resid;

    // Addition formula at the configured parameters.
    double add_resid = 0.0;
    for (unsigned n = 0; n <= 6; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const AdditionSample s{2.0 * uniform01(rng) - 1.0,
                                   2.0 * uniform01(rng) - 1.0,
                                   0.02 + 0.96 * uniform01(rng),
                                   0.05 + 3.0 * uniform01(rng)};
            add_resid = std::max(
                add_resid,
                addition_formula_residual(cfg.alpha, cfg.beta, n, s));
        }
    }
    report["addition_formula_max_residual"] = add_resid;

    // Product formula, only inside its validity region.
    std::optional<double> pf_resid;
    if (p.product_formula_valid()) {
        const unsigned m = cfg.quad_m ? cfg.quad_m : 16;
        const ProductMeasureRule mrule = mu_rule(p, m);
        double worst = 0.0;
        for (int pair = 0; pair < 10; ++pair) {
            const double x2 = 0.15 + 0.85 * uniform01(rng);
            const double y2 = 0.15 + 0.85 * uniform01(rng);
            const double x1 = (2.0 * uniform01(rng) - 1.0) * x2;
            const double y1 = (2.0 * uniform01(rng) - 1.0) * y2;
            for (unsigned n = 0; n <= 4; ++n) {
                for (unsigned k = 0; k <= n; ++k) {
                    worst = std::max(worst, product_formula_residual(
                                                p, n, k, {x1, x2}, {y1, y2},
                                                mrule));
                }
            }
        }
        pf_resid = worst;
        report["product_formula_max_residual"] = worst;
    } else {
        report["product_formula_max_residual"] = "out_of_validity";
    }

    // Orthonormality of the scaled basis.
    {
        const unsigned Ng = 8;
        const BiangleRule rule = biangle_rule(p, 12);
        const std::size_t dim = (Ng + 1) * (Ng + 2) / 2;
        std::vector<double> gram(dim * dim, 0.0), scale(dim);
        std::size_t pos = 0;
        for (unsigned n = 0; n <= Ng; ++n) {
            for (unsigned k = 0; k <= n; ++k, ++pos) {
                scale[pos] = std::sqrt(basis_norm_g(p, n, k));
            }
        }
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const BasisTable tab = basis_table(p, Ng, rule.nodes[j]);
            std::vector<double> v(dim);
            pos = 0;
            for (unsigned n = 0; n <= Ng; ++n) {
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
        double offdiag = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                offdiag = std::max(offdiag, std::fabs(gram[a * dim + b]));
            }
        }
        report["gram_max_offdiag"] = offdiag;
    }

    // Squared norms against quadrature.
    {
        double relerr = 0.0;
        const std::vector<JacobiParams> sets = {
            JacobiParams(cfg.alpha, cfg.beta),
            JacobiParams(cfg.alpha - 0.5, cfg.beta),
            JacobiParams(cfg.alpha + cfg.beta + 0.5, cfg.beta)};
        for (const JacobiParams& jp : sets) {
            const QuadratureRule r = gauss_jacobi(jp, 20);
            const JacobiRecurrence rec(jp, 15);
            std::vector<double> acc(16, 0.0), vals(16);
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                rec.eval_all(r.nodes[i], vals.data());
                for (unsigned n = 0; n <= 15; ++n) {
                    acc[n] += r.weights[i] * vals[n] * vals[n];
                }
            }
            for (unsigned n = 0; n <= 15; ++n) {
                const double h = jacobi_norm_h(jp, n);
                relerr = std::max(relerr, std::fabs(acc[n] - h) / h);
            }
        }
        report["h_n_oracle_max_relerr"] = relerr;
    }

    struct Gate {
        const char* field;
        double value;
        double threshold;
        bool active;
    };
    const std::vector<Gate> gates = {
        {"closed_form_max_residual", closed_resid, 1e-8, true},
        {"addition_formula_max_residual", add_resid, 1e-9, true},
        {"product_formula_max_residual", pf_resid.value_or(0.0), 1e-6,
         pf_resid.has_value()},
        {"gram_max_offdiag", report["gram_max_offdiag"].get<double>(), 1e-9,
         true},
        {"h_n_oracle_max_relerr",
         report["h_n_oracle_max_relerr"].get<double>(), 1e-10, true},
    };
    bool ok = true;
    json thresholds, passes;
    for (const Gate& gt : gates) {
        thresholds[gt.field] = gt.threshold;
        if (!gt.active) continue;
        const bool pass = std::isfinite(gt.value) && gt.value <= gt.threshold;
        passes[gt.field] = pass;
        if (!pass) {
            ok = false;
            std::cerr << "verify: " << gt.field << " = " << fmt17(gt.value)
                      << " exceeds " << fmt17(gt.threshold) << "\n";
        }
    }
    report["thresholds"] = thresholds;
    report["pass"] = passes;
    report["all_pass"] = ok;

    Output out(cfg.out);
    out.stream() << report.dump(2) << '\n';
    return ok ? 0 : 3;
}

int cmd_growth_slope(const Config& cfg) {
    const BiangleParams p(cfg.alpha, cfg.beta);
    const double delta = resolve_delta(cfg.delta_spec, cfg.alpha, cfg.beta);
    if (!(delta > cfg.alpha + cfg.beta + 1.0)) {
        throw std::invalid_argument(
            "growth-slope needs delta > alpha + beta + 1");
    }
    std::vector<unsigned> ladder;
    for (unsigned n = 8; n <= std::max(cfg.n_max, 8u); n *= 2) {
        ladder.push_back(n);
    }
    if (ladder.size() < 3) {
        throw std::invalid_argument(
            "growth-slope needs a ladder of at least 3 points; raise --n-max "
            "to 32 or more");
    }

    const JacobiParams poly_params(cfg.alpha + cfg.beta + delta + 0.5,
                                   cfg.beta);
    const JacobiParams weight_params(cfg.alpha + cfg.beta + 0.5, cfg.beta);
    std::vector<double> in_values;
    for (unsigned n : ladder) {
        const unsigned mt = std::max(200u, 4 * n);
        const unsigned mx = std::max(120u, 2 * n);
        const QuadratureRule trule = gauss_jacobi(weight_params, mt);
        const BiangleRule xrule = biangle_rule(p, mx);
        const JacobiRecurrence rec(poly_params, n);
        const double value =
            block_sum(xrule.nodes.size(), [&](std::size_t j) {
                double inner = 0.0;
                for (std::size_t i = 0; i < trule.nodes.size(); ++i) {
                    inner += trule.weights[i] *
                             std::fabs(rec.eval_top(
                                 z_arg(xrule.nodes[j], trule.nodes[i])));
                }
                return xrule.weights[j] * inner;
            }, 64);
        require_finite(value, "growth ladder n = " + std::to_string(n));
        in_values.push_back(value);
    }

    // Least-squares slope of log I(n) against log n.
    const std::size_t m = ladder.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(static_cast<double>(ladder[i]));
        const double ly = std::log(in_values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    Output out(cfg.out);
    out.stream() << "n,i_n,slope\n";
    for (std::size_t i = 0; i < m; ++i) {
        out.stream() << ladder[i] << ',' << fmt17(in_values[i]) << ','
                     << fmt17(slope) << '\n';
    }
    return 0;
}

void add_common_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--alpha", cfg.alpha, "first weight exponent (> -1/2)");
    cmd->add_option("--beta", cfg.beta, "second weight exponent (> -1/2)");
    cmd->add_option("--delta", cfg.delta_spec,
                    "Cesaro order: a real, or 'critical+E' (alpha+beta+1+E), "
                    "or 'positivity' (alpha+2beta+3/2)");
    cmd->add_option("--n-max", cfg.n_max, "largest degree");
    cmd->add_option("--quad-m", cfg.quad_m,
                    "quadrature size override (0 = auto)");
    cmd->add_option("--grid", cfg.grid, "evaluation grid size (0 = auto)");
    cmd->add_option("--seed", cfg.seed, "random sample seed");
    cmd->add_option("--out", cfg.out, "output path ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Cesaro summability experiments for orthogonal expansions on the "
        "parabolic biangle"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* t = app.add_subcommand(
        "kernel-table", "kernel L1 norms, minima, and identity residuals");
    add_common_options(t, cfg);
    t->add_option("--dump-rule", cfg.dump_rule_path,
                  "also write the biangle quadrature rule to this CSV path");

    CLI::App* a =
        app.add_subcommand("approx", "approximation errors of the means");
    add_common_options(a, cfg);
    a->add_option("--function", cfg.function_id,
                  "test function: smooth_exp | abs_edge | dist_cusp | poly3");

    CLI::App* v =
        app.add_subcommand("verify", "JSON residual report for identities");
    add_common_options(v, cfg);

    CLI::App* gcmd = app.add_subcommand(
        "growth-slope", "dyadic growth exponent above the critical order");
    add_common_options(gcmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (t->parsed()) return cmd_kernel_table(cfg);
        if (a->parsed()) return cmd_approx(cfg);
        if (v->parsed()) return cmd_verify(cfg);
        if (gcmd->parsed()) return cmd_growth_slope(cfg);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
