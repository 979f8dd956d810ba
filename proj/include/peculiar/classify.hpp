#pragma once

#include <array>
#include <string>
#include <vector>

#include "peculiar/homotopy.hpp"
#include "peculiar/poly_core.hpp"

namespace peculiar {

struct EnumerationCounts {
    long long total_distinct = 0;
    long long p0 = 0;
    long long p1_minus_p0 = 0;
    long long pt = 0;
    long long p1_total = 0;          // |P_1| = p1_minus_p0 + (P_0 with a unit coefficient)
    long long real_all_nonzero = 0;  // Stein's real filter
};

/// Per-degree census of the full system's solution set.
struct EnumerationReport {
    int degree_n = 0;
    std::vector<SolutionPoint> solutions; // canonical order: class, then lex coordinates
    EnumerationCounts counts;
    PathAccounting accounting;
    TrackOptions options;
    bool reverified_ok = true;            // every solution re-passed is_peculiar
    std::vector<int> reverify_failures;   // indices into solutions
};

/// P0 if some |y_k| <= tol, else P1minusP0 if some |y_k - 1| <= tol, else Pt
/// (tol relative to max(1, |y|_inf)). The precedence implements the disjoint
/// decomposition.
ClassTag classify_solution(const SolutionPoint& p, double tol);

/// Solves the full system for degree N (2 <= N <= 8), re-verifies every
/// solution with the independent root-finder check, classifies and counts.
EnumerationReport enumerate_degree(int N, const TrackOptions& opts);

/// True iff (y_1..y_{N-1}) -> (y_1..y_{N-1}, 0) is a bijection from the
/// previous census onto the P0-tagged solutions of the next one.
bool check_recursion(const EnumerationReport& r_n, const EnumerationReport& r_prev);

struct BoundEntry {
    std::string name;
    long long count = 0;
    long long bound = 0;
    bool holds = true;
    bool equality = false;
};

struct BoundsAudit {
    int degree_n = 0;
    bool applicable = false; // the bounds require N >= 3
    std::array<BoundEntry, 6> entries;
    // Observed strict cases (meaningful for N == 4 resp. N >= 4):
    bool strict1 = false; // |P_1^(4) \ P_0^(4)| < 4
    bool strict2 = false; // |P^(N)| < N!
    bool strict3 = false; // |P_1^(N)| < (N-1)!
    // The two readings of which inequalities become equalities for N >= 5:
    bool equalities_456 = false; // conclusions' reading (consistent one)
    bool equalities_123 = false; // proposition text's reading
};

/// Audits the census against all six bounds. Throws BoundViolation if a
/// count exceeds its bound: that signals a solver bug, not a refutation.
BoundsAudit check_bounds(const EnumerationReport& r);

/// Solutions with every coordinate real and nonzero.
std::vector<SolutionPoint> stein_filter(const EnumerationReport& r);

struct ConjectureProbe {
    int degree_n = 0;
    long long p1nz_distinct = 0;
    long long p1nz_expected = 0; // (N-2)(N-2)!
    long long pt_distinct = 0;
    long long pt_expected = 0;   // (N^2-3N+3)(N-2)!
    bool p1nz_has_yn_zero = false;
    bool p1nz_has_ynm1_minus_one = false;
    bool pt_has_yn_zero = false;
    bool pt_has_ynm1_minus_one = false;
    PathAccounting p1nz_accounting;
    PathAccounting pt_accounting;
    bool census_checked = false;
    bool census_consistent = false;
};

/// Solves the P1-nonzero and truly-peculiar systems independently and
/// compares their finite solution counts against the conjecture-conditional
/// values, scanning for the degeneracies (y_N ~ 0, y_{N-1} ~ -1) that would
/// contradict irreducibility. Optionally cross-checks the full census.
ConjectureProbe check_conjecture(int N, const TrackOptions& opts, bool with_census = true);

} // namespace peculiar
