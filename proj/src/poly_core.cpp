#include "peculiar/poly_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace peculiar {

namespace {

bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Full coefficient vector c[0..N] with c[0] = 1 (descending powers).
std::vector<Complex> full_coeffs(const MonicPoly& p) {
    std::vector<Complex> c(p.coeffs.size() + 1);
    c[0] = 1.0;
    std::copy(p.coeffs.begin(), p.coeffs.end(), c.begin() + 1);
    return c;
}

// p(z) and p'(z) in one Horner pass over descending coefficients.
void horner2(const std::vector<Complex>& c, Complex z, Complex& val, Complex& der) {
    val = c[0];
    der = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        der = der * z + val;
        val = val * z + c[k];
    }
}

// Coefficients of the k-th derivative, descending powers.
std::vector<Complex> derivative_coeffs(std::vector<Complex> c, int k) {
    for (int pass = 0; pass < k; ++pass) {
        int deg = static_cast<int>(c.size()) - 1;
        if (deg == 0) return {Complex(0.0)};
        std::vector<Complex> d(deg);
        for (int j = 0; j < deg; ++j) d[j] = c[j] * Complex(double(deg - j));
        c = std::move(d);
    }
    return c;
}

// Shifted coefficients b_j = p^{(j)}(x0)/j! via repeated synthetic division
// by (z - x0). Input descending; output ascending with b[0] = p(x0).
std::vector<Complex> taylor_shift(std::vector<Complex> a, Complex x0) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<Complex> b(n + 1);
    for (int j = 0; j <= n; ++j) {
        const int deg = n - j;
        Complex acc = a[0];
        for (int k = 1; k <= deg; ++k) {
            Complex next = acc * x0 + a[k];
            a[k - 1] = acc; // quotient coefficient
            acc = next;
        }
        b[j] = acc; // remainder
        a.resize(deg);
        if (deg == 0) break;
    }
    return b;
}

// Multiplicity-aware polish: Newton on p^{(m-1)}, which has a simple zero at
// an m-fold zero of p.
Complex polish_multiple(const std::vector<Complex>& c, Complex x, int m) {
    std::vector<Complex> g = derivative_coeffs(c, m - 1);
    for (int it = 0; it < 12; ++it) {
        Complex v, d;
        horner2(g, x, v, d);
        if (std::abs(d) == 0.0) break;
        Complex step = v / d;
        x -= step;
        if (std::abs(step) < 1e-18 * (1.0 + std::abs(x))) break;
    }
    return x;
}

// A candidate m-fold zero at x is accepted when the first m shifted Taylor
// coefficients all vanish relative to the largest one. A genuine m-fold zero
// leaves them at rounding level (~1e-15); two distinct zeros merely close
// together leave b_0 or b_1 well above the 1e-10 cut.
bool multiplicity_valid(const std::vector<Complex>& c, Complex x, int m) {
    std::vector<Complex> b = taylor_shift(c, x);
    double big = 0.0;
    for (const Complex& v : b) big = std::max(big, std::abs(v));
    if (big == 0.0) return true;
    for (int j = 0; j < m; ++j) {
        if (std::abs(b[j]) > 1e-10 * big) return false;
    }
    return true;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Augmenting-path bipartite matching restricted to edges with d <= thr.
bool perfect_matching(const std::vector<std::vector<double>>& d, double thr,
                      std::vector<int>& match_a) {
    int n = static_cast<int>(d.size());
    match_a.assign(n, -1);
    std::vector<int> match_b(n, -1);
    std::vector<char> visited;

    auto augment = [&](auto&& self, int i) -> bool {
        for (int j = 0; j < n; ++j) {
            if (d[i][j] <= thr && !visited[j]) {
                visited[j] = 1;
                if (match_b[j] < 0 || self(self, match_b[j])) {
                    match_a[i] = j;
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

} // namespace

int RootSet::total() const {
    int n = 0;
    for (const RootCluster& c : clusters) n += c.multiplicity;
    return n;
}

std::vector<Complex> RootSet::flatten() const {
    std::vector<Complex> out;
    out.reserve(total());
    for (const RootCluster& c : clusters) {
        for (int k = 0; k < c.multiplicity; ++k) out.push_back(c.value);
    }
    return out;
}

double poly_scale(const MonicPoly& p) {
    double s = 1.0;
    for (const Complex& y : p.coeffs) s = std::max(s, std::abs(y));
    return s;
}

std::vector<Complex> elementary_symmetric(ZeroSet xs) {
    std::sort(xs.begin(), xs.end(), lex_less);
    const int n = static_cast<int>(xs.size());
    std::vector<Complex> e(n + 1, Complex(0.0));
    e[0] = 1.0;
    for (const Complex& x : xs) {
        for (int m = n; m >= 1; --m) e[m] += x * e[m - 1];
    }
    return {e.begin() + 1, e.end()};
}

MonicPoly ulam_transform(const ZeroSet& zeros) {
    std::vector<Complex> sigma = elementary_symmetric(zeros);
    MonicPoly p;
    p.coeffs.resize(sigma.size());
    double sign = -1.0;
    for (std::size_t m = 0; m < sigma.size(); ++m) {
        p.coeffs[m] = sign * sigma[m];
        sign = -sign;
    }
    return p;
}

Complex eval_poly(const MonicPoly& p, Complex z) {
    Complex v = 1.0;
    for (const Complex& y : p.coeffs) v = v * z + y;
    return v;
}

RootSet find_roots(const MonicPoly& p, const RootOptions& opts) {
    const int n = p.degree();
    if (n < 1) throw DimensionMismatch("find_roots: degree must be >= 1");
    const std::vector<Complex> c = full_coeffs(p);
    const double scale = poly_scale(p);

    // Deterministic start configuration: circle of radius 1 + max|y| with an
    // irrational angular offset so no start aligns with an axis.
    double radius = 1.0;
    for (const Complex& y : p.coeffs) radius = std::max(radius, 1.0 + std::abs(y));
    constexpr double kOffset = 0.41421356237309515; // sqrt(2) - 1
    std::vector<Complex> x(n);
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * (double(i) + kOffset) / double(n);
        x[i] = radius * Complex(std::cos(th), std::sin(th));
    }

    const double target = std::min(opts.residual_tol, 1e-14);
    double residual = 0.0;
    double best_residual = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        residual = 0.0;
        std::vector<Complex> xnew = x;
        for (int i = 0; i < n; ++i) {
            Complex v, d;
            horner2(c, x[i], v, d);
            residual = std::max(residual, std::abs(v) / scale);
            Complex newton = (std::abs(d) > 0.0) ? v / d : Complex(0.0);
            Complex s = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = x[i] - x[j];
                if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
                s += 1.0 / diff;
            }
            Complex den = 1.0 - newton * s;
            Complex w = (std::abs(den) > 1e-12) ? newton / den : newton;
            xnew[i] = x[i] - w;
            if (!std::isfinite(xnew[i].real()) || !std::isfinite(xnew[i].imag())) {
                xnew[i] = x[i] * 0.5; // pull a runaway iterate back in
            }
        }
        x = std::move(xnew);
        if (residual <= target) break;
        if (residual < best_residual * 0.5) {
            best_residual = std::min(best_residual, residual);
            stall = 0;
        } else if (++stall > 30) {
            break;
        }
    }
    // Recompute the final residual at the accepted iterates.
    residual = 0.0;
    for (int i = 0; i < n; ++i) residual = std::max(residual, std::abs(eval_poly(p, x[i])) / scale);
    if (residual > opts.residual_tol) {
        throw NonConvergence("find_roots: Aberth iteration stalled at residual " + std::to_string(residual));
    }

    // Root magnitude scale used for relative merge radii.
    double rscale = 1.0;
    for (int i = 0; i < n; ++i) rscale = std::max(rscale, std::abs(x[i]));

    // Base merge at 1e-6 relative distance, then validated growth: an m-fold
    // zero scatters its Aberth iterates over a disc of radius ~ residual^{1/m}
    // (widest for m = n), so candidate links are accepted up to that generous
    // radius but every multi-root hypothesis must pass the shifted-Taylor
    // test before it sticks.
    UnionFind uf(n);
    const double eps_res = std::max(residual, 1e-15);
    const double link_radius = std::pow(1e3 * eps_res, 1.0 / double(n)) * rscale;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(x[i] - x[j]) <= 1e-6 * rscale) uf.unite(i, j);
        }
    }
    auto collect = [&]() {
        std::vector<std::vector<int>> groups;
        std::vector<int> root_of(n, -1);
        for (int i = 0; i < n; ++i) {
            int r = uf.find(i);
            if (root_of[r] < 0) {
                root_of[r] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[root_of[r]].push_back(i);
        }
        return groups;
    };

    bool merged = true;
    while (merged) {
        merged = false;
        std::vector<std::vector<int>> groups = collect();
        const int g = static_cast<int>(groups.size());
        for (int a = 0; a < g && !merged; ++a) {
            for (int b = a + 1; b < g && !merged; ++b) {
                int m = static_cast<int>(groups[a].size() + groups[b].size());
                double gap = std::numeric_limits<double>::infinity();
                for (int i : groups[a])
                    for (int j : groups[b]) gap = std::min(gap, std::abs(x[i] - x[j]));
                if (gap > link_radius) continue;
                Complex mean = 0.0;
                for (int i : groups[a]) mean += x[i];
                for (int j : groups[b]) mean += x[j];
                mean /= double(m);
                Complex cand = polish_multiple(c, mean, m);
                if (multiplicity_valid(c, cand, m)) {
                    uf.unite(groups[a][0], groups[b][0]);
                    merged = true;
                }
            }
        }
    }

    RootSet out;
    out.max_residual = residual;
    for (std::vector<int>& grp : collect()) {
        int m = static_cast<int>(grp.size());
        Complex mean = 0.0;
        std::sort(grp.begin(), grp.end(), [&](int i, int j) { return lex_less(x[i], x[j]); });
        for (int i : grp) mean += x[i];
        mean /= double(m);
        Complex value = (m > 1) ? polish_multiple(c, mean, m) : mean;
        if (m > 1 && !multiplicity_valid(c, value, m)) {
            // Base-radius merge of genuinely distinct zeros: keep them split.
            for (int i : grp) out.clusters.push_back({x[i], 1});
            continue;
        }
        out.clusters.push_back({value, m});
    }
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const RootCluster& a, const RootCluster& b) { return lex_less(a.value, b.value); });
    return out;
}

std::optional<std::vector<int>> match_multisets(const ZeroSet& a, const ZeroSet& b, double tol) {
    if (a.size() != b.size()) throw DimensionMismatch("match_multisets: |a| != |b|");
    const int n = static_cast<int>(a.size());
    if (n == 0) return std::vector<int>{};

    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    std::vector<double> values;
    values.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            d[i][j] = std::abs(a[i] - b[j]);
            if (d[i][j] <= tol) values.push_back(d[i][j]);
        }
    }

    std::vector<int> match;
    if (!perfect_matching(d, tol, match)) return std::nullopt;

    // Tighten to the bottleneck-optimal threshold for reporting.
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    int lo = 0, hi = static_cast<int>(values.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        std::vector<int> m2;
        if (perfect_matching(d, values[mid], m2)) {
            match = std::move(m2);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return match;
}

bool is_peculiar(const MonicPoly& p, double tol) {
    RootSet roots = find_roots(p);
    return match_multisets(roots.flatten(), p.coeffs, tol * poly_scale(p)).has_value();
}

bool satisfies_eq3(const MonicPoly& p, double tol) {
    const double bound = tol * poly_scale(p);
    for (const Complex& y : p.coeffs) {
        if (std::abs(eval_poly(p, y)) > bound) return false;
    }
    return true;
}

} // namespace peculiar
