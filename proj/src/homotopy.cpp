#include "peculiar/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace peculiar {

namespace {

// Endgame divergence: a path at a singular solution at infinity grows like
// (1 - t)^{-1/m}, too slowly to cross the hard threshold before the step
// size underflows. Such a path is classified AtInfinity when it stalls close
// to t = 1 with a large norm that has kept growing across nearly an order of
// magnitude in (1 - t).
constexpr double kEndgameTime = 1e-3;     // 1 - t below this
constexpr double kEndgameNorm = 100.0;    // finite solutions stay far below
constexpr double kEndgameWindow = 8.0;    // reference distance factor in (1 - t)
constexpr double kEndgameGrowth = 1.3;    // required norm growth over the window

// An endpoint with a larger norm is never accepted as a finite solution: the
// degree-scaled relative residual of a diverged iterate tends to zero along
// an infinity direction, so the residual test alone would be fooled.
constexpr double kFiniteNormCap = 1e4;

double mag(const Complex& z) { return std::fabs(z.real()) + std::fabs(z.imag()); }

template <typename C>
double pivot_mag(const C& v);
template <>
double pivot_mag<Complex>(const Complex& v) { return mag(v); }
template <>
double pivot_mag<CDD>(const CDD& v) { return mag1(v); }

// In-place Gaussian elimination with partial pivoting; solves A x = b into b.
template <typename C>
bool lu_solve(int n, std::vector<C>& A, std::vector<C>& b) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = pivot_mag(A[std::size_t(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            double m = pivot_mag(A[std::size_t(r) * n + col]);
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (!(best > 1e-300)) return false;
        if (piv != col) {
            for (int k = col; k < n; ++k)
                std::swap(A[std::size_t(piv) * n + k], A[std::size_t(col) * n + k]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            C f = A[std::size_t(r) * n + col] / A[std::size_t(col) * n + col];
            if (pivot_mag(f) == 0.0) continue;
            for (int k = col + 1; k < n; ++k)
                A[std::size_t(r) * n + k] -= f * A[std::size_t(col) * n + k];
            b[r] -= f * b[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        C acc = b[row];
        for (int k = row + 1; k < n; ++k) acc -= A[std::size_t(row) * n + k] * b[k];
        b[row] = acc / A[std::size_t(row) * n + row];
    }
    return true;
}

double norm_inf(std::span<const Complex> y) {
    double m = 0.0;
    for (const Complex& v : y) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(std::span<const Complex> y) {
    for (const Complex& v : y) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

// max_i |F_i| / max(1, |y|_inf)^{deg_i} over an already-evaluated residual vector.
double rel_residual(std::span<const Complex> vals, std::span<const Complex> y,
                    const std::vector<int>& degrees) {
    double ynorm = std::max(1.0, norm_inf(y));
    double worst = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        worst = std::max(worst, std::abs(vals[i]) / std::pow(ynorm, degrees[i]));
    return worst;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Newton against the target system in double precision; keeps the best
// iterate seen. Returns the achieved relative residual.
double newton_double(const AlgebraicSystem& s, std::vector<Complex>& y, double target,
                     int max_iters) {
    const int n = s.num_unknowns();
    std::vector<Complex> F(n), A(std::size_t(n) * n);
    std::vector<Complex> best = y;
    double best_res = s.residual(y);
    int stalls = 0;
    std::vector<Complex> cur = y;
    for (int it = 0; it < max_iters && best_res > target; ++it) {
        s.eval_into<Complex>(cur, F);
        s.jacobian_into<Complex>(cur, A);
        if (!lu_solve(n, A, F)) break;
        for (int k = 0; k < n; ++k) cur[k] -= F[k];
        if (!all_finite(cur)) break;
        double res = s.residual(cur);
        if (res < best_res) {
            best = cur;
            best_res = res;
            stalls = 0;
        } else if (++stalls > 6) {
            break;
        }
    }
    y = best;
    return best_res;
}

double dd_rel_residual(const AlgebraicSystem& s, std::span<const CDD> y,
                       std::vector<CDD>& F) {
    s.eval_into<CDD>(y, F);
    double ynorm = 1.0;
    for (const CDD& v : y) ynorm = std::max(ynorm, mag1(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i)
        worst = std::max(worst, mag1(F[i]) / std::pow(ynorm, s.degrees[i]));
    return worst;
}

// Compensated double-double Newton refinement stage.
double newton_extended(const AlgebraicSystem& s, std::vector<Complex>& y, double target,
                       int max_iters) {
    const int n = s.num_unknowns();
    std::vector<CDD> cur(n), best(n), F(n), A(std::size_t(n) * n);
    for (int k = 0; k < n; ++k) cur[k] = CDD(y[k]);
    best = cur;
    double best_res = dd_rel_residual(s, cur, F);
    int stalls = 0;
    for (int it = 0; it < max_iters && best_res > target; ++it) {
        s.eval_into<CDD>(cur, F);
        s.jacobian_into<CDD>(cur, A);
        if (!lu_solve(n, A, F)) break;
        for (int k = 0; k < n; ++k) cur[k] -= F[k];
        double res = dd_rel_residual(s, cur, F);
        if (res < best_res) {
            best = cur;
            best_res = res;
            stalls = 0;
        } else if (++stalls > 6) {
            break;
        }
    }
    for (int k = 0; k < n; ++k) y[k] = best[k].to_complex();
    return best_res;
}

bool lex_less_vec(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return false;
}

double round_grid(double v) { return std::nearbyint(v * 1e9) * 1e-9; }

double rel_point_dist(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double scale = std::max(1.0, std::max(norm_inf(a), norm_inf(b)));
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d / scale;
}

} // namespace

bool lex_less_rounded(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        double ar = round_grid(a[k].real()), br = round_grid(b[k].real());
        if (ar != br) return ar < br;
        double ai = round_grid(a[k].imag()), bi = round_grid(b[k].imag());
        if (ai != bi) return ai < bi;
    }
    return false;
}

Complex gamma_from_seed(std::uint64_t seed) {
    double u = double(splitmix64(seed) >> 11) * 0x1.0p-53;
    double theta = M_PI * (0.15 + 0.7 * u); // bounded away from the real axis
    return {std::cos(theta), std::sin(theta)};
}

std::pair<AlgebraicSystem, std::vector<std::vector<Complex>>> start_system(
    const AlgebraicSystem& target, const TrackOptions& opts) {
    const int n = target.num_unknowns();
    if (static_cast<int>(target.equations.size()) != n)
        throw DimensionMismatch("start_system: target is not square");
    if (target.bezout > opts.path_budget)
        throw BudgetExceeded("start_system: bezout " + std::to_string(target.bezout) +
                             " exceeds path budget");

    AlgebraicSystem g;
    g.variant = SystemVariant::TotalDegreeStart;
    g.degree_n = target.degree_n;
    g.unknowns = target.unknowns;
    std::vector<int> zero(n, 0);
    for (int i = 0; i < n; ++i) {
        MultiPoly p(n);
        std::vector<int> e(n, 0);
        e[i] = target.degrees[i];
        p.add_term(1, e);
        p.add_term(-1, zero);
        g.equations.push_back(std::move(p));
    }
    g.finalize();

    std::vector<std::vector<Complex>> starts;
    starts.reserve(std::size_t(target.bezout));
    for (long long idx = 0; idx < target.bezout; ++idx) {
        std::vector<Complex> p(n);
        long long rem = idx;
        for (int i = 0; i < n; ++i) {
            int d = target.degrees[i];
            int k = static_cast<int>(rem % d);
            rem /= d;
            double th = 2.0 * M_PI * double(k) / double(d);
            p[i] = {std::cos(th), std::sin(th)};
        }
        starts.push_back(std::move(p));
    }
    return {std::move(g), std::move(starts)};
}

PathResult track_path(const AlgebraicSystem& target, const AlgebraicSystem& start_sys,
                      std::span<const Complex> start, int start_index,
                      const TrackOptions& opts) {
    const int n = target.num_unknowns();
    const Complex gamma = gamma_from_seed(opts.gamma_seed);

    PathResult result;
    result.start_index = start_index;

    std::vector<Complex> y(start.begin(), start.end());
    std::vector<Complex> F(n), G(n), H(n);
    std::vector<Complex> JF(std::size_t(n) * n), JG(std::size_t(n) * n), A(std::size_t(n) * n);
    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), stage(n), ypred(n), ycand(n), rhs(n);

    auto eval_H = [&](const std::vector<Complex>& yy, double t, std::vector<Complex>& out) {
        target.eval_into<Complex>(yy, F);
        start_sys.eval_into<Complex>(yy, G);
        for (int i = 0; i < n; ++i) out[i] = (1.0 - t) * gamma * G[i] + t * F[i];
    };
    auto build_JH = [&](const std::vector<Complex>& yy, double t) {
        target.jacobian_into<Complex>(yy, JF);
        start_sys.jacobian_into<Complex>(yy, JG);
        for (std::size_t k = 0; k < A.size(); ++k) A[k] = (1.0 - t) * gamma * JG[k] + t * JF[k];
    };
    // Davidenko ODE slope: J_H dy/dt = gamma G - F.
    auto slope = [&](const std::vector<Complex>& yy, double t, std::vector<Complex>& out) -> bool {
        if (!all_finite(yy)) return false;
        target.eval_into<Complex>(yy, F);
        start_sys.eval_into<Complex>(yy, G);
        for (int i = 0; i < n; ++i) rhs[i] = gamma * G[i] - F[i];
        build_JH(yy, t);
        if (!lu_solve(n, A, rhs)) return false;
        out = rhs;
        return true;
    };

    std::vector<std::pair<double, double>> trail; // (t, |y|_inf) at accepted steps
    trail.reserve(256);
    trail.emplace_back(0.0, norm_inf(y));

    auto classify_stall = [&](double t) {
        double norm = norm_inf(y);
        if (norm > opts.infinity_threshold && t >= 0.9) return PathStatus::AtInfinity;
        if (1.0 - t <= kEndgameTime && norm >= kEndgameNorm) {
            double target = std::max(kEndgameWindow * (1.0 - t), 1e-6);
            for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
                if (1.0 - it->first >= target) {
                    if (norm >= kEndgameGrowth * it->second) return PathStatus::AtInfinity;
                    break;
                }
            }
        }
        return PathStatus::Failed;
    };

    double t = 0.0;
    double h = opts.step_init;
    int successes = 0;
    int steps = 0;

    while (true) {
        if (steps >= opts.max_steps || h < opts.step_min) {
            result.status = classify_stall(t);
            result.steps_taken = steps;
            return result;
        }
        const double hc = std::min(h, 1.0 - t);
        const double t2 = t + hc;

        bool ok = slope(y, t, k1);
        if (ok) {
            if (opts.euler_predictor) {
                for (int i = 0; i < n; ++i) ypred[i] = y[i] + hc * k1[i];
            } else {
                for (int i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * hc * k1[i];
                ok = slope(stage, t + 0.5 * hc, k2);
                if (ok) {
                    for (int i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * hc * k2[i];
                    ok = slope(stage, t + 0.5 * hc, k3);
                }
                if (ok) {
                    for (int i = 0; i < n; ++i) stage[i] = y[i] + hc * k3[i];
                    ok = slope(stage, t2, k4);
                }
                if (ok) {
                    for (int i = 0; i < n; ++i)
                        ypred[i] = y[i] + hc / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            }
        }

        bool corrected = false;
        if (ok && all_finite(ypred)) {
            ycand = ypred;
            for (int it = 0; it <= 3; ++it) {
                eval_H(ycand, t2, H);
                if (rel_residual(H, ycand, target.degrees) <= opts.corrector_tol) {
                    corrected = true;
                    break;
                }
                if (it == 3) break;
                build_JH(ycand, t2);
                rhs = H;
                if (!lu_solve(n, A, rhs)) break;
                for (int i = 0; i < n; ++i) ycand[i] -= rhs[i];
                if (!all_finite(ycand)) break;
            }
        }

        ++steps;
        if (corrected) {
            y = ycand;
            t = t2;
            trail.emplace_back(t, norm_inf(y));
            if (norm_inf(y) > opts.infinity_threshold) {
                result.status = (t >= 0.9) ? PathStatus::AtInfinity : PathStatus::Failed;
                result.steps_taken = steps;
                return result;
            }
            if (t >= 1.0 - 1e-14) {
                newton_double(target, y, 1e-13, 60);
                double res = target.residual(y);
                result.steps_taken = steps;
                if (res <= opts.accept_tol && norm_inf(y) <= kFiniteNormCap) {
                    result.status = PathStatus::Converged;
                    result.endpoint = y;
                } else {
                    result.status = classify_stall(t);
                }
                return result;
            }
            if (++successes >= 2) {
                h = std::min(h * 1.5, 0.1);
                successes = 0;
            }
        } else {
            successes = 0;
            h *= 0.5;
        }
    }
}

std::vector<PathResult> track_all_serial(const AlgebraicSystem& target,
                                         const AlgebraicSystem& start_sys,
                                         const std::vector<std::vector<Complex>>& starts,
                                         const TrackOptions& opts) {
    std::vector<PathResult> out(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
        out[i] = track_path(target, start_sys, starts[i], static_cast<int>(i), opts);
    }
    return out;
}

std::vector<PathResult> track_all_parallel(const AlgebraicSystem& target,
                                           const AlgebraicSystem& start_sys,
                                           const std::vector<std::vector<Complex>>& starts,
                                           const TrackOptions& opts) {
    std::vector<PathResult> out(starts.size());
    const int count = static_cast<int>(starts.size());
#ifdef _OPENMP
    const int threads = opts.workers > 1 ? opts.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int i = 0; i < count; ++i) {
        out[i] = track_path(target, start_sys, starts[i], i, opts);
    }
    return out;
}

std::vector<Complex> refine(const AlgebraicSystem& s, std::span<const Complex> y,
                            Precision precision) {
    std::vector<Complex> cur(y.begin(), y.end());
    double res = s.residual(cur);
    if (res > 1e-4) throw NonConvergence("refine: start residual outside Newton basin");
    res = newton_double(s, cur, 1e-13, 60);
    if (precision == Precision::Extended) res = newton_extended(s, cur, 1e-25, 80);
    return cur;
}

std::vector<std::pair<std::vector<Complex>, int>> cluster(
    const std::vector<std::vector<Complex>>& points, double dedup_tol) {
    std::vector<std::pair<std::vector<Complex>, int>> out;
    if (points.empty()) return out;
    const int m = static_cast<int>(points.size());

    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less_vec(points[a], points[b]); });

    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };

    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            if (rel_point_dist(points[order[a]], points[order[b]]) <= dedup_tol) {
                parent[find(a)] = find(b);
            }
        }
    }

    // Collect clusters in sorted-order of first member.
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(m, -1);
    for (int a = 0; a < m; ++a) {
        int r = find(a);
        if (group_of[r] < 0) {
            group_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[group_of[r]].push_back(order[a]);
    }

    // Guard: any two clusters within 10x of the radius is ambiguous.
    double min_gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            if (find(a) == find(b)) continue;
            min_gap = std::min(min_gap, rel_point_dist(points[order[a]], points[order[b]]));
        }
    }
    if (min_gap < 10.0 * dedup_tol) {
        throw AmbiguousClustering("cluster: inter-cluster gap " + std::to_string(min_gap) +
                                  " within 10x dedup_tol");
    }

    for (const std::vector<int>& grp : groups) {
        std::vector<Complex> rep(points[grp[0]].size(), Complex(0.0));
        for (int idx : grp) {
            for (std::size_t k = 0; k < rep.size(); ++k) rep[k] += points[idx][k];
        }
        for (Complex& v : rep) v /= double(grp.size());
        out.emplace_back(std::move(rep), static_cast<int>(grp.size()));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return lex_less_rounded(a.first, b.first); });
    return out;
}

SolveResult solve(const AlgebraicSystem& s, const TrackOptions& opts) {
    if (s.bezout > opts.path_budget)
        throw BudgetExceeded("solve: bezout " + std::to_string(s.bezout) +
                             " exceeds path budget " + std::to_string(opts.path_budget));

    TrackOptions cur = opts;
    std::vector<PathResult> results;
    int retries = 0;
    for (int attempt = 0;; ++attempt) {
        auto [start_sys, starts] = start_system(s, cur);
        results = (cur.workers > 1) ? track_all_parallel(s, start_sys, starts, cur)
                                    : track_all_serial(s, start_sys, starts, cur);
        int failed = 0;
        for (const PathResult& r : results)
            if (r.status == PathStatus::Failed) ++failed;
        if (failed == 0 || attempt == 1) break;
        cur.gamma_seed = splitmix64(cur.gamma_seed ^ 0xA5A5A5A5A5A5A5A5ULL);
        ++retries;
    }

    SolveResult out;
    out.accounting.bezout = s.bezout;
    out.accounting.gamma_retries = retries;
    out.accounting.gamma_seed_used = cur.gamma_seed;
    for (const PathResult& r : results) {
        switch (r.status) {
            case PathStatus::Converged: ++out.accounting.converged; break;
            case PathStatus::AtInfinity: ++out.accounting.at_infinity; break;
            case PathStatus::Failed: ++out.accounting.failed; break;
        }
    }
    if (out.accounting.failed > 0) {
        throw QualityFailure("solve: " + std::to_string(out.accounting.failed) +
                             " paths failed after gamma retry");
    }

    std::vector<std::vector<Complex>> endpoints;
    endpoints.reserve(out.accounting.converged);
    for (const PathResult& r : results) {
        if (r.status != PathStatus::Converged) continue;
        endpoints.push_back(refine(s, r.endpoint, cur.refine_precision));
    }

    for (auto& [rep, mult] : cluster(endpoints, cur.dedup_tol)) {
        std::vector<Complex> pinned = refine(s, rep, cur.refine_precision);
        double res = s.residual(pinned);
        if (res > cur.accept_tol) {
            throw QualityFailure("solve: clustered endpoint failed the independent residual check");
        }
        SolutionPoint sp;
        sp.y = s.to_full_coeffs(pinned);
        sp.residual = res;
        sp.multiplicity = mult;
        double scale = std::max(1.0, norm_inf(sp.y));
        double max_im = 0.0;
        for (const Complex& v : sp.y) max_im = std::max(max_im, std::fabs(v.imag()));
        sp.is_real = max_im <= cur.dedup_tol * scale;
        out.solutions.push_back(std::move(sp));
    }
    return out;
}

} // namespace peculiar
