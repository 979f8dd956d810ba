// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// gating criterion fails. The optional N=7 extended run is enabled with
// PECULIAR_RUN_N7=1 and reported without gating.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <map>
#include <string>
#include <vector>

#include "peculiar/intpoly.hpp"
#include "peculiar/report.hpp"

using namespace peculiar;

namespace {

double wtime() {
    timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return double(ts.tv_sec) + double(ts.tv_nsec) / 1.0e9;
}

int g_failures = 0;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

void report_line(int id, const std::string& name, const Check& c, double seconds,
                 bool gating = true) {
    std::printf("[%s] criterion %-2d %-58s (%.2f s)%s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(),
                seconds, gating ? "" : " [non-gating]");
    if (!c.ok) {
        std::printf("       %s\n", c.detail.c_str());
        if (gating) ++g_failures;
    }
}

double point_dist(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

TrackOptions default_opts(int workers) {
    TrackOptions o;
    o.workers = workers;
    return o;
}

std::map<int, EnumerationReport> g_census;
std::map<int, double> g_census_seconds;

const EnumerationReport& census(int n, int workers = 2) {
    auto it = g_census.find(n);
    if (it != g_census.end()) return it->second;
    double t0 = wtime();
    EnumerationReport r = enumerate_degree(n, default_opts(workers));
    g_census_seconds[n] = wtime() - t0;
    return g_census.emplace(n, std::move(r)).first->second;
}

bool counts_equal(const EnumerationReport& r, long long total, long long p0, long long p1,
                  long long pt, Check& c) {
    c.require(r.counts.total_distinct == total,
              "total " + std::to_string(r.counts.total_distinct) + " != " + std::to_string(total));
    c.require(r.counts.p0 == p0,
              "p0 " + std::to_string(r.counts.p0) + " != " + std::to_string(p0));
    c.require(r.counts.p1_minus_p0 == p1,
              "p1\\p0 " + std::to_string(r.counts.p1_minus_p0) + " != " + std::to_string(p1));
    c.require(r.counts.pt == pt,
              "pt " + std::to_string(r.counts.pt) + " != " + std::to_string(pt));
    return c.ok;
}

// Minimum distance from a substituted known-answer point to same-class
// census solutions.
double nearest_census_distance(const EnumerationReport& r, const std::vector<Complex>& y,
                               ClassTag tag) {
    double best = 1e300;
    for (const SolutionPoint& sp : r.solutions) {
        if (sp.class_tag != tag) continue;
        best = std::min(best, point_dist(sp.y, y));
    }
    return best;
}

void criterion1() {
    double t0 = wtime();
    Check c;
    const EnumerationReport& r = census(2, 1);
    double seconds = g_census_seconds[2];
    c.require(r.counts.total_distinct == 2, "expected 2 distinct solutions");
    std::vector<Complex> zero{Complex(0.0), Complex(0.0)};
    std::vector<Complex> ulam{Complex(1.0), Complex(-2.0)};
    bool have_zero = false, have_ulam = false;
    for (const SolutionPoint& sp : r.solutions) {
        if (point_dist(sp.y, zero) < 1e-12) have_zero = true;
        if (point_dist(sp.y, ulam) < 1e-12) {
            have_ulam = true;
            c.require(sp.residual < 1e-12, "residual of (1,-2) not below 1e-12");
        }
    }
    c.require(have_zero, "missing (0,0)");
    c.require(have_ulam, "missing (1,-2) to 1e-12");
    c.require(seconds < 1.0, "runtime above 1 s");
    report_line(1, "N=2 census {(0,0),(1,-2)}", c, wtime() - t0);
}

void criterion2() {
    double t0 = wtime();
    Check c;
    const EnumerationReport& r = census(3, 1);
    counts_equal(r, 6, 2, 1, 3, c);
    c.require(g_census_seconds[3] < 5.0, "runtime above 5 s");

    // P_t points against the explicit formulas over the cubic's roots.
    int matched = 0;
    for (const KnownAnswer& ka : known_answers()) {
        if (ka.degree_n != 3 || ka.class_tag != ClassTag::Pt) continue;
        for (const auto& y : substitute_known_answer(ka, Precision::Extended)) {
            double d = nearest_census_distance(r, y, ClassTag::Pt);
            c.require(d < 1e-9, "P_t formula point off by " + std::to_string(d));
            if (d < 1e-9) ++matched;
        }
    }
    c.require(matched == 3, "expected 3 formula matches");

    int real_pt = 0;
    for (const SolutionPoint& sp : r.solutions) {
        if (sp.class_tag == ClassTag::Pt && sp.is_real) {
            ++real_pt;
            c.require(std::abs(sp.y[0].real() - 0.5651977) < 1e-6, "real root not 0.5651977");
        }
    }
    c.require(real_pt == 1, "expected exactly one real P_t point");
    report_line(2, "N=3 census {p0:2, p1\\p0:1, pt:3} + formulas", c, wtime() - t0);
}

void criterion3() {
    double t0 = wtime();
    Check c;
    const EnumerationReport& r = census(4, 1);
    counts_equal(r, 23, 6, 3, 14, c);
    c.require(r.accounting.bezout == 24 && r.accounting.converged == 24, "24 paths expected");
    c.require(g_census_seconds[4] < 10.0, "runtime above 10 s");

    int doubles = 0;
    for (const SolutionPoint& sp : r.solutions) {
        if (sp.multiplicity == 2) {
            ++doubles;
            std::vector<Complex> dp{Complex(1.0), Complex(-1.0), Complex(-1.0), Complex(0.0)};
            c.require(point_dist(sp.y, dp) < 1e-6, "double point not at (1,-1,-1,0)");
        }
    }
    c.require(doubles == 1, "expected exactly one multiplicity-2 point");

    BoundsAudit audit = check_bounds(r);
    c.require(audit.strict1, "strict1 (3 < 4) not confirmed");
    c.require(audit.strict2, "strict2 (23 < 24) not confirmed");

    int eq41 = 0, deg14 = 0;
    for (const KnownAnswer& ka : known_answers()) {
        if (ka.degree_n != 4) continue;
        for (const auto& y : substitute_known_answer(ka, Precision::Extended)) {
            double d = nearest_census_distance(r, y, ka.class_tag);
            c.require(d < 1e-8, "known-answer point off by " + std::to_string(d));
            if (d < 1e-8) (ka.class_tag == ClassTag::P1minusP0 ? eq41 : deg14)++;
        }
    }
    c.require(eq41 == 3, "expected 3 matches of the P1\\P0 cubic data");
    c.require(deg14 == 14, "expected 14 matches of the degree-14 data");

    // 7 conjugate pairs, none real
    std::vector<const SolutionPoint*> pts;
    for (const SolutionPoint& sp : r.solutions) {
        if (sp.class_tag == ClassTag::Pt) pts.push_back(&sp);
    }
    int pairs = 0;
    std::vector<char> used(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        c.require(!pts[i]->is_real, "a truly-peculiar quartic came out real");
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            std::vector<Complex> conj(pts[i]->y.size());
            for (std::size_t k = 0; k < conj.size(); ++k) conj[k] = std::conj(pts[i]->y[k]);
            if (point_dist(conj, pts[j]->y) < 1e-6) {
                used[i] = used[j] = 1;
                ++pairs;
                break;
            }
        }
    }
    c.require(pairs == 7, "expected 7 conjugate pairs, got " + std::to_string(pairs));
    report_line(3, "N=4 census, double point, strictness, known answers", c, wtime() - t0);
}

void criterion4() {
    double t0 = wtime();
    Check c;
    const int expected[] = {0, 0, 1, 2, 1, 0, 0};
    for (int n = 2; n <= 6; ++n) {
        auto survivors = stein_filter(census(n));
        c.require(static_cast<int>(survivors.size()) == expected[n],
                  "N=" + std::to_string(n) + ": " + std::to_string(survivors.size()) +
                      " real all-nonzero, expected " + std::to_string(expected[n]));
        if (n == 4 && survivors.size() == 1) {
            c.require(std::abs(survivors[0].y[1].real() - (-1.7548777)) < 1e-5,
                      "N=4 survivor y2 mismatch");
            c.require(std::abs(survivors[0].y[2].real() - (-0.5698403)) < 1e-5,
                      "N=4 survivor y3 mismatch");
        }
    }
    report_line(4, "Stein reproduction: 1,2,1,0,0 for N=2..6", c, wtime() - t0);
}

void criterion5() {
    double t0 = wtime();
    Check c;
    counts_equal(census(5), 119, 23, 18, 78, c);
    c.require(g_census_seconds[5] < 30.0,
              "N=5 runtime " + std::to_string(g_census_seconds[5]) + " above 30 s");
    counts_equal(census(6), 719, 119, 96, 504, c);
    c.require(g_census_seconds[6] < 300.0,
              "N=6 runtime " + std::to_string(g_census_seconds[6]) + " above 5 min");
    report_line(5, "conjecture-conditional censuses N=5, N=6", c, wtime() - t0);

    const char* run_n7 = std::getenv("PECULIAR_RUN_N7");
    if (run_n7 && std::strcmp(run_n7, "1") == 0) {
        double t1 = wtime();
        Check c7;
        counts_equal(census(7), 5039, 719, 600, 3720, c7);
        c7.require(g_census_seconds[7] < 1800.0, "N=7 runtime above 30 min");
        report_line(5, "optional N=7 extended census", c7, wtime() - t1, /*gating=*/false);
    } else {
        std::printf("[....] criterion 5b optional N=7 census skipped (set PECULIAR_RUN_N7=1)\n");
    }
}

void criterion6() {
    double t0 = wtime();
    Check c;
    for (const auto& [n, r] : g_census) {
        const PathAccounting& a = r.accounting;
        c.require(a.converged + a.at_infinity + a.failed == a.bezout,
                  "N=" + std::to_string(n) + ": path accounting does not sum to bezout");
        c.require(a.failed == 0, "N=" + std::to_string(n) + ": failed paths remain");
        c.require(a.gamma_retries <= 1, "more than one gamma retry");
        c.require(a.at_infinity == 0,
                  "N=" + std::to_string(n) + ": full system should have no paths at infinity");
    }
    // Reduced systems exercise the at-infinity branch of the accounting.
    for (const AlgebraicSystem& s : {build_pt(4), build_pt(3)}) {
        SolveResult r = solve(s, default_opts(2));
        const PathAccounting& a = r.accounting;
        c.require(a.converged + a.at_infinity + a.failed == a.bezout,
                  "pt system accounting does not sum to bezout");
        c.require(a.failed == 0, "pt system has failed paths");
        c.require(a.at_infinity > 0, "pt system should lose paths to infinity");
    }
    report_line(6, "Bezout accounting identity, failed=0, infinity rules", c, wtime() - t0);
}

void criterion7() {
    double t0 = wtime();
    Check c;
    for (int n = 3; n <= 6; ++n) {
        c.require(check_recursion(census(n), census(n - 1)),
                  "recursion bijection failed for " + std::to_string(n - 1) + " -> " +
                      std::to_string(n));
    }
    report_line(7, "recursion audit for consecutive degrees 2..6", c, wtime() - t0);
}

void criterion8() {
    double t0 = wtime();
    Check c;
    MonicPoly counterexample{{Complex(-0.5), Complex(-0.5)}};
    c.require(satisfies_eq3(counterexample, 1e-10), "(-1/2,-1/2) must satisfy eq3");
    c.require(!is_peculiar(counterexample, 1e-8), "(-1/2,-1/2) must not be peculiar");
    report_line(8, "necessary-vs-sufficient separation at (-1/2,-1/2)", c, wtime() - t0);
}

void criterion9() {
    double t0 = wtime();
    Check c;
    int certified = 0;
    for (const KnownAnswer& ka : known_answers()) {
        if (ka.defining_poly.degree() < 2) continue;
        c.require(rational_roots(ka.defining_poly).empty(), "defining polynomial has a rational root");
        auto cert = certify_irreducible(ka.defining_poly, 200);
        c.require(cert.has_value(), "no certificate prime below 200");
        if (cert) ++certified;
    }
    c.require(certified == 3, "expected 3 certificates (two cubics + degree-14)");

    IntPoly w4p1{{1, 0, 0, 0, 1}};
    c.require(!certify_irreducible(w4p1, 200).has_value(), "w^4+1 must stay inconclusive");
    c.require(rational_roots(w4p1).empty(), "w^4+1 has no rational roots");
    report_line(9, "irreducibility certificates and the negative control", c, wtime() - t0);
}

void criterion10() {
    double t0 = wtime();
    Check c;

    // Round trip: 1000 random zero multisets, N <= 8.
    {
        std::uint64_t state = 2024;
        auto next = [&]() {
            state += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            z = z ^ (z >> 31);
            return 2.0 * (double(z >> 11) * 0x1.0p-53) - 1.0;
        };
        int bad = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            int n = 1 + trial % 8;
            ZeroSet xs;
            while (static_cast<int>(xs.size()) < n) {
                Complex z{next(), next()};
                if (std::abs(z) > 1.0) continue;
                bool ok = true;
                for (const Complex& w : xs) {
                    if (std::abs(z - w) <= 1e-3) ok = false;
                }
                if (ok) xs.push_back(z);
            }
            RootSet roots = find_roots(ulam_transform(xs));
            if (!match_multisets(roots.flatten(), xs, 1e-8).has_value()) ++bad;
        }
        c.require(bad == 0, std::to_string(bad) + " round-trip failures out of 1000");
    }

    // Jacobian vs central finite differences.
    {
        std::uint64_t state = 77;
        auto next = [&]() {
            state += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            z = z ^ (z >> 31);
            return 2.0 * (double(z >> 11) * 0x1.0p-53) - 1.0;
        };
        const double h = 1e-5;
        for (const AlgebraicSystem& s : {build_full(4), build_pt(4), build_nonzero(4)}) {
            const int m = s.num_unknowns();
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<Complex> y(m);
                for (Complex& v : y) v = {next(), next()};
                std::vector<Complex> J = s.jacobian(y);
                double scale = 1.0;
                for (const Complex& v : J) scale = std::max(scale, std::abs(v));
                for (int col = 0; col < m; ++col) {
                    std::vector<Complex> yp = y, ym = y;
                    yp[col] += h;
                    ym[col] -= h;
                    std::vector<Complex> fp = s.eval(yp), fm = s.eval(ym);
                    for (int row = 0; row < m; ++row) {
                        Complex fd = (fp[row] - fm[row]) / (2.0 * h);
                        if (std::abs(fd - J[std::size_t(row) * m + col]) > 1e-6 * scale) {
                            c.require(false, "jacobian mismatch vs finite differences");
                        }
                    }
                }
            }
        }
    }

    // Conjugation closure of every census solution set.
    for (const auto& [n, r] : g_census) {
        for (const SolutionPoint& sp : r.solutions) {
            std::vector<Complex> conj(sp.y.size());
            for (std::size_t k = 0; k < sp.y.size(); ++k) conj[k] = std::conj(sp.y[k]);
            bool found = false;
            for (const SolutionPoint& other : r.solutions) {
                if (point_dist(other.y, conj) < 1e-6) found = true;
            }
            if (!found) {
                c.require(false, "census N=" + std::to_string(n) + " not conjugation-closed");
            }
        }
    }

    // Gamma robustness: three seeds, identical censuses for N <= 5.
    for (int n = 2; n <= 5; ++n) {
        EnumerationCounts base;
        std::vector<int> base_mults;
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            TrackOptions o = default_opts(2);
            o.gamma_seed = seed;
            EnumerationReport r = enumerate_degree(n, o);
            std::vector<int> mults;
            for (const SolutionPoint& sp : r.solutions) mults.push_back(sp.multiplicity);
            std::sort(mults.begin(), mults.end());
            if (seed == 1) {
                base = r.counts;
                base_mults = mults;
            } else {
                bool same = r.counts.total_distinct == base.total_distinct &&
                            r.counts.p0 == base.p0 && r.counts.p1_minus_p0 == base.p1_minus_p0 &&
                            r.counts.pt == base.pt && mults == base_mults;
                if (!same) {
                    c.require(false, "seed " + std::to_string(seed) + " changes the N=" +
                                         std::to_string(n) + " census");
                }
            }
        }
    }

    // Serial vs parallel byte-identical JSON.
    {
        TrackOptions serial = default_opts(1);
        TrackOptions parallel = default_opts(4);
        EnumerationReport a = enumerate_degree(4, serial);
        EnumerationReport b = enumerate_degree(4, parallel);
        BoundsAudit aa = check_bounds(a);
        BoundsAudit ab = check_bounds(b);
        c.require(to_json(make_doc(a, &aa)) == to_json(make_doc(b, &ab)),
                  "serial and parallel JSON differ");
    }

    report_line(10, "property suites (round trip, FD, conjugation, gamma, JSON)", c, wtime() - t0);
}

} // namespace

int main() {
    std::printf("acceptance suite, tool version %s\n", kToolVersion);
    double t0 = wtime();
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10();
    } catch (const std::exception& e) {
        std::printf("[FAIL] suite aborted: %s\n", e.what());
        ++g_failures;
    }
    std::printf("total: %.1f s, %d gating failure(s)\n", wtime() - t0, g_failures);
    return g_failures == 0 ? 0 : 1;
}
