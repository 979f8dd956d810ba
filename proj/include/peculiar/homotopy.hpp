#pragma once

#include <cstdint>
#include <utility>

#include "peculiar/systems.hpp"

namespace peculiar {

enum class Precision { Double, Extended };

struct TrackOptions {
    std::uint64_t gamma_seed = 1;
    double step_init = 0.05;
    double step_min = 1e-8;
    double corrector_tol = 1e-10;
    double accept_tol = 1e-8;       // relative endpoint residual
    double dedup_tol = 1e-6;        // relative clustering radius
    double infinity_threshold = 1e8;
    int max_steps = 10000;
    Precision refine_precision = Precision::Extended;
    bool euler_predictor = false;   // cross-check switch; RK4 on the Davidenko ODE otherwise
    int workers = 0;                // <= 1 runs the serial reference kernel
    long long path_budget = 200000;
};

enum class PathStatus { Converged, AtInfinity, Failed };

struct PathResult {
    int start_index = 0;
    PathStatus status = PathStatus::Failed;
    std::vector<Complex> endpoint; // valid iff Converged
    int steps_taken = 0;
};

struct PathAccounting {
    long long bezout = 0;
    int converged = 0;
    int at_infinity = 0;
    int failed = 0;
    int gamma_retries = 0;
    std::uint64_t gamma_seed_used = 0;
};

struct SolveResult {
    std::vector<SolutionPoint> solutions; // clustered, refined, canonical order
    PathAccounting accounting;
};

/// Unit-modulus gamma for the homotopy, derived deterministically from the
/// seed and kept away from the real axis.
Complex gamma_from_seed(std::uint64_t seed);

/// Canonical cross-run ordering: lexicographic on (re, im) rounded to a 1e-9
/// grid, so solutions refined from different gamma seeds sort identically.
bool lex_less_rounded(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Total-degree start system (equation i: y_i^{d_i} - 1 = 0) together with
/// all bezout(target) start points, tuples of roots of unity in mixed-radix
/// order.
std::pair<AlgebraicSystem, std::vector<std::vector<Complex>>> start_system(
    const AlgebraicSystem& target, const TrackOptions& opts);

/**
 * Tracks one path of the convex homotopy
 *   H(y, t) = (1 - t) gamma G(y) + t F(y)
 * from t = 0 to t = 1 by adaptive predictor-corrector advance (RK4 on the
 * Davidenko ODE, Newton corrector) with the step halved on corrector failure
 * and grown 1.5x after two consecutive successes. The endpoint is
 * Newton-refined at t = 1.
 */
PathResult track_path(const AlgebraicSystem& target, const AlgebraicSystem& start_sys,
                      std::span<const Complex> start, int start_index,
                      const TrackOptions& opts);

/// Serial reference kernel: tracks every start point in index order.
std::vector<PathResult> track_all_serial(const AlgebraicSystem& target,
                                         const AlgebraicSystem& start_sys,
                                         const std::vector<std::vector<Complex>>& starts,
                                         const TrackOptions& opts);

/// OpenMP kernel. Paths are independent, results land in slots indexed by
/// start point, so the output is identical to the serial reference.
std::vector<PathResult> track_all_parallel(const AlgebraicSystem& target,
                                           const AlgebraicSystem& start_sys,
                                           const std::vector<std::vector<Complex>>& starts,
                                           const TrackOptions& opts);

/**
 * Newton refinement at t = 1 against the target system only. Double iterates
 * to relative residual < 1e-13, Extended continues in compensated
 * double-double arithmetic to < 1e-25. Requires the input inside the Newton
 * basin (residual < 1e-4); throws NonConvergence otherwise.
 */
std::vector<Complex> refine(const AlgebraicSystem& s, std::span<const Complex> y,
                            Precision precision);

/**
 * Single-linkage clustering at relative radius dedup_tol. Representative is
 * the component-wise mean; deterministic via canonical lexicographic
 * pre-sort. Throws AmbiguousClustering when two clusters approach within 10x
 * dedup_tol instead of resolving silently.
 */
std::vector<std::pair<std::vector<Complex>, int>> cluster(
    const std::vector<std::vector<Complex>>& points, double dedup_tol);

/**
 * Tracks all paths of the total-degree homotopy for s, clusters converged
 * endpoints into solutions with multiplicities and re-checks every residual
 * independently of the tracker. One automatic retry with a fresh gamma is
 * attempted if any path fails; QualityFailure if failures remain.
 */
SolveResult solve(const AlgebraicSystem& s, const TrackOptions& opts);

} // namespace peculiar
