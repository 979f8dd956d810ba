#include "peculiar/classify.hpp"

#include <algorithm>
#include <cmath>

namespace peculiar {

namespace {

constexpr double kReverifyTol = 1e-7;

double vec_scale(const std::vector<Complex>& y) {
    double s = 1.0;
    for (const Complex& v : y) s = std::max(s, std::abs(v));
    return s;
}

double point_dist_rel(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double scale = std::max(vec_scale(a), vec_scale(b));
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d / scale;
}

// One-to-one matching between two point sets under a relative distance bound.
bool sets_biject(const std::vector<std::vector<Complex>>& a,
                 const std::vector<std::vector<Complex>>& b, double tol) {
    if (a.size() != b.size()) return false;
    const int n = static_cast<int>(a.size());
    std::vector<int> match_b(n, -1);
    std::vector<char> visited;
    auto augment = [&](auto&& self, int i) -> bool {
        for (int j = 0; j < n; ++j) {
            if (!visited[j] && point_dist_rel(a[i], b[j]) <= tol) {
                visited[j] = 1;
                if (match_b[j] < 0 || self(self, match_b[j])) {
                    match_b[j] = i;
                    return true;
                }
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        visited.assign(n, 0);
        if (!augment(augment, i)) return false;
    }
    return true;
}

long long factorial(int n) {
    long long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

bool coeff_near(const Complex& v, double target, double tol_abs) {
    return std::abs(v - Complex(target)) <= tol_abs;
}

bool stein_survivor(const SolutionPoint& sp, double tol) {
    if (!sp.is_real) return false;
    double tol_abs = tol * vec_scale(sp.y);
    for (const Complex& v : sp.y) {
        if (std::abs(v) <= tol_abs) return false;
    }
    return true;
}

} // namespace

ClassTag classify_solution(const SolutionPoint& p, double tol) {
    const double tol_abs = tol * vec_scale(p.y);
    for (const Complex& v : p.y) {
        if (coeff_near(v, 0.0, tol_abs)) return ClassTag::P0;
    }
    for (const Complex& v : p.y) {
        if (coeff_near(v, 1.0, tol_abs)) return ClassTag::P1minusP0;
    }
    return ClassTag::Pt;
}

EnumerationReport enumerate_degree(int N, const TrackOptions& opts) {
    if (N < 2 || N > 8) throw DimensionMismatch("enumerate_degree: N must be in 2..8");

    EnumerationReport report;
    report.degree_n = N;
    report.options = opts;

    SolveResult solved = solve(build_full(N), opts);
    report.accounting = solved.accounting;
    report.solutions = std::move(solved.solutions);

    const double tol = opts.dedup_tol;
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
        SolutionPoint& sp = report.solutions[i];
        sp.class_tag = classify_solution(sp, tol);

        MonicPoly poly{sp.y};
        bool ok = false;
        try {
            ok = is_peculiar(poly, kReverifyTol);
        } catch (const NonConvergence&) {
            ok = false;
        }
        if (!ok) {
            report.reverified_ok = false;
            report.reverify_failures.push_back(static_cast<int>(i));
        }
    }

    std::sort(report.solutions.begin(), report.solutions.end(),
              [](const SolutionPoint& a, const SolutionPoint& b) {
                  if (a.class_tag != b.class_tag) return a.class_tag < b.class_tag;
                  return lex_less_rounded(a.y, b.y);
              });

    EnumerationCounts& c = report.counts;
    c.total_distinct = static_cast<long long>(report.solutions.size());
    for (const SolutionPoint& sp : report.solutions) {
        switch (sp.class_tag) {
            case ClassTag::P0: ++c.p0; break;
            case ClassTag::P1minusP0: ++c.p1_minus_p0; break;
            case ClassTag::Pt: ++c.pt; break;
            case ClassTag::Unclassified: break;
        }
        double tol_abs = tol * vec_scale(sp.y);
        for (const Complex& v : sp.y) {
            if (coeff_near(v, 1.0, tol_abs)) {
                ++c.p1_total;
                break;
            }
        }
        if (stein_survivor(sp, tol)) ++c.real_all_nonzero;
    }
    return report;
}

bool check_recursion(const EnumerationReport& r_n, const EnumerationReport& r_prev) {
    if (r_n.degree_n != r_prev.degree_n + 1)
        throw DimensionMismatch("check_recursion: reports must be consecutive degrees");

    std::vector<std::vector<Complex>> images;
    images.reserve(r_prev.solutions.size());
    for (const SolutionPoint& sp : r_prev.solutions) {
        std::vector<Complex> img = sp.y;
        img.push_back(0.0);
        images.push_back(std::move(img));
    }
    std::vector<std::vector<Complex>> p0;
    for (const SolutionPoint& sp : r_n.solutions) {
        if (sp.class_tag == ClassTag::P0) p0.push_back(sp.y);
    }
    return sets_biject(images, p0, r_n.options.dedup_tol);
}

BoundsAudit check_bounds(const EnumerationReport& r) {
    const int N = r.degree_n;
    const EnumerationCounts& c = r.counts;

    BoundsAudit audit;
    audit.degree_n = N;
    audit.applicable = N >= 3;

    const long long nf = factorial(N);
    const long long nm1f = factorial(N - 1);
    const long long nm2f = (N >= 2) ? factorial(N - 2) : 1;
    audit.entries[0] = {"ineq1", c.total_distinct, nf, true, false};
    audit.entries[1] = {"ineq2", c.p0, nm1f, true, false};
    audit.entries[2] = {"ineq3", c.p1_total, nm1f, true, false};
    audit.entries[3] = {"ineq4", c.total_distinct - c.p0, (N - 1) * nm1f, true, false};
    audit.entries[4] = {"ineq5", c.p1_minus_p0, (N - 2) * nm2f, true, false};
    audit.entries[5] = {"ineq6", c.pt, (long long)(N * N - 3 * N + 3) * nm2f, true, false};

    for (BoundEntry& e : audit.entries) {
        e.holds = e.count <= e.bound;
        e.equality = e.count == e.bound;
    }
    if (audit.applicable) {
        for (const BoundEntry& e : audit.entries) {
            if (!e.holds) {
                throw BoundViolation("check_bounds: " + e.name + " violated at N=" +
                                     std::to_string(N) + " (" + std::to_string(e.count) + " > " +
                                     std::to_string(e.bound) + ")");
            }
        }
    }

    audit.strict1 = (N == 4) && c.p1_minus_p0 < audit.entries[4].bound;
    audit.strict2 = (N >= 4) && c.total_distinct < nf;
    audit.strict3 = (N >= 4) && c.p1_total < nm1f;
    audit.equalities_456 =
        audit.entries[3].equality && audit.entries[4].equality && audit.entries[5].equality;
    audit.equalities_123 =
        audit.entries[0].equality && audit.entries[1].equality && audit.entries[2].equality;
    return audit;
}

std::vector<SolutionPoint> stein_filter(const EnumerationReport& r) {
    std::vector<SolutionPoint> out;
    for (const SolutionPoint& sp : r.solutions) {
        if (stein_survivor(sp, r.options.dedup_tol)) out.push_back(sp);
    }
    return out;
}

ConjectureProbe check_conjecture(int N, const TrackOptions& opts, bool with_census) {
    if (N < 4) throw DimensionMismatch("check_conjecture: N must be >= 4");

    ConjectureProbe probe;
    probe.degree_n = N;
    probe.p1nz_expected = (N - 2) * factorial(N - 2);
    probe.pt_expected = (long long)(N * N - 3 * N + 3) * factorial(N - 2);

    SolveResult p1nz = solve(build_p1_nonzero(N), opts);
    SolveResult pt = solve(build_pt(N), opts);
    probe.p1nz_accounting = p1nz.accounting;
    probe.pt_accounting = pt.accounting;
    probe.p1nz_distinct = static_cast<long long>(p1nz.solutions.size());
    probe.pt_distinct = static_cast<long long>(pt.solutions.size());

    auto scan = [&](const std::vector<SolutionPoint>& sols, bool& yn_zero, bool& ynm1_m1) {
        for (const SolutionPoint& sp : sols) {
            double tol_abs = opts.dedup_tol * vec_scale(sp.y);
            if (coeff_near(sp.y[N - 1], 0.0, tol_abs)) yn_zero = true;
            if (coeff_near(sp.y[N - 2], -1.0, tol_abs)) ynm1_m1 = true;
        }
    };
    scan(p1nz.solutions, probe.p1nz_has_yn_zero, probe.p1nz_has_ynm1_minus_one);
    scan(pt.solutions, probe.pt_has_yn_zero, probe.pt_has_ynm1_minus_one);

    if (with_census && N <= 8) {
        EnumerationReport census = enumerate_degree(N, opts);
        probe.census_checked = true;

        std::vector<std::vector<Complex>> census_p1, census_pt;
        for (const SolutionPoint& sp : census.solutions) {
            if (sp.class_tag == ClassTag::P1minusP0) census_p1.push_back(sp.y);
            if (sp.class_tag == ClassTag::Pt) census_pt.push_back(sp.y);
        }
        std::vector<std::vector<Complex>> probe_p1;
        for (const SolutionPoint& sp : p1nz.solutions) {
            double tol_abs = opts.dedup_tol * vec_scale(sp.y);
            if (!coeff_near(sp.y[N - 1], 0.0, tol_abs)) probe_p1.push_back(sp.y);
        }
        std::vector<std::vector<Complex>> probe_pt;
        for (const SolutionPoint& sp : pt.solutions) probe_pt.push_back(sp.y);

        probe.census_consistent = sets_biject(probe_p1, census_p1, opts.dedup_tol) &&
                                  sets_biject(probe_pt, census_pt, opts.dedup_tol);
    }
    return probe;
}

} // namespace peculiar
