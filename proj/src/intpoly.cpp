#include "peculiar/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace peculiar {

namespace {

using Fp = std::vector<long long>; // polynomial over F_p, ascending, normalized

long long mod_pos(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long mul_mod(long long a, long long b, long long p) {
    return static_cast<long long>((__int128)a * b % p);
}

long long pow_mod(long long a, long long e, long long p) {
    long long r = 1 % p;
    a = mod_pos(a, p);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

long long inv_mod(long long a, long long p) { return pow_mod(a, p - 2, p); }

void trim(Fp& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Fp mul_fp(const Fp& a, const Fp& b, long long p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mul_mod(a[i], b[j], p)) % p;
        }
    }
    trim(r);
    return r;
}

// Remainder of a mod m (m monic) over F_p.
Fp rem_fp(Fp a, const Fp& m, long long p) {
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        long long lead = a.back();
        int shift = static_cast<int>(a.size()) - 1 - dm;
        if (lead != 0) {
            for (int k = 0; k <= dm; ++k) {
                a[k + shift] = mod_pos(a[k + shift] - mul_mod(lead, m[k], p), p);
            }
        }
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Fp gcd_fp(Fp a, Fp b, long long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic for the reduction
        Fp bm = b;
        long long inv = inv_mod(bm.back(), p);
        for (long long& c : bm) c = mul_mod(c, inv, p);
        Fp r = rem_fp(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^{p^k} mod f via iterated Frobenius, f monic.
Fp frobenius_power(const Fp& f, long long p, int k) {
    Fp x = {0, 1};
    x = rem_fp(x, f, p);
    for (int i = 0; i < k; ++i) {
        // x <- x^p mod f by square-and-multiply on the exponent p
        Fp base = x;
        Fp acc = {1};
        long long e = p;
        while (e > 0) {
            if (e & 1) acc = rem_fp(mul_fp(acc, base, p), f, p);
            base = rem_fp(mul_fp(base, base, p), f, p);
            e >>= 1;
        }
        x = std::move(acc);
    }
    return x;
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime_small(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::vector<long long> positive_divisors(long long n) {
    n = std::llabs(n);
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exact sign test of f(r/s) via sum c_k r^k s^{n-k} in 128-bit arithmetic.
bool is_rational_root(const IntPoly& f, long long r, long long s) {
    const int n = f.degree();
    __int128 acc = 0;
    for (int k = 0; k <= n; ++k) {
        __int128 term = f.c[k];
        for (int i = 0; i < k; ++i) term *= r;
        for (int i = k; i < n; ++i) term *= s;
        acc += term;
    }
    return acc == 0;
}

// Horner evaluation of an ascending integer polynomial at a CDD point.
CDD eval_ascending_dd(const std::vector<long long>& coeffs, CDD x) {
    CDD acc(0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * x + CDD(double(coeffs[k]));
    }
    return acc;
}

Complex eval_ascending(const std::vector<long long>& coeffs, Complex x) {
    Complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * x + Complex(double(coeffs[k]));
    }
    return acc;
}

ClassTag class_from_string(const std::string& s) {
    if (s == "p0") return ClassTag::P0;
    if (s == "p1_minus_p0") return ClassTag::P1minusP0;
    if (s == "pt") return ClassTag::Pt;
    return ClassTag::Unclassified;
}

} // namespace

void IntPoly::normalize() {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
}

bool irreducible_mod_p(const IntPoly& f, long long p) {
    if (!is_prime_small(p)) throw BadPrime("irreducible_mod_p: p is not prime");
    if (f.c.empty() || f.c.back() % p == 0)
        throw BadPrime("irreducible_mod_p: p divides the leading coefficient");
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;

    Fp fm(f.c.size());
    for (std::size_t k = 0; k < f.c.size(); ++k) fm[k] = mod_pos(f.c[k], p);
    long long inv = inv_mod(fm.back(), p);
    for (long long& c : fm) c = mul_mod(c, inv, p);

    // x^{p^n} == x (mod f)
    Fp xpn = frobenius_power(fm, p, n);
    Fp x = rem_fp({0, 1}, fm, p);
    Fp diff = xpn;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (std::size_t k = 0; k < x.size(); ++k) diff[k] = mod_pos(diff[k] - x[k], p);
    trim(diff);
    if (!diff.empty()) return false;

    // gcd(x^{p^{n/q}} - x, f) = 1 for every prime q | n
    for (int q : prime_divisors(n)) {
        Fp xq = frobenius_power(fm, p, n / q);
        Fp d = xq;
        d.resize(std::max(d.size(), x.size()), 0);
        for (std::size_t k = 0; k < x.size(); ++k) d[k] = mod_pos(d[k] - x[k], p);
        trim(d);
        Fp g = gcd_fp(fm, d, p);
        if (static_cast<int>(g.size()) - 1 != 0) return false;
    }
    return true;
}

std::optional<Certificate> certify_irreducible(const IntPoly& f, long long prime_bound) {
    if (f.degree() < 1) return std::nullopt;
    // A rational root of a degree >= 2 polynomial rules out irreducibility;
    // never certify in that case (soundness cross-check).
    if (f.degree() >= 2 && !rational_roots(f).empty()) return std::nullopt;
    for (long long p = 2; p <= prime_bound; ++p) {
        if (!is_prime_small(p)) continue;
        if (f.c.back() % p == 0) continue;
        if (irreducible_mod_p(f, p)) return Certificate{p};
    }
    return std::nullopt;
}

std::vector<Rational> rational_roots(const IntPoly& f) {
    if (f.c.empty()) throw DimensionMismatch("rational_roots: empty polynomial");
    IntPoly g = f;
    g.normalize();
    std::vector<Rational> out;

    // Factor out z^k first.
    std::size_t low = 0;
    while (low < g.c.size() && g.c[low] == 0) ++low;
    if (low == g.c.size()) return out; // zero polynomial guard
    if (low > 0) {
        out.push_back({0, 1});
        g.c.erase(g.c.begin(), g.c.begin() + low);
    }
    if (g.degree() == 0) return out;

    for (long long s : positive_divisors(g.c.back())) {
        for (long long r : positive_divisors(g.c.front())) {
            if (std::gcd(r, s) != 1) continue;
            for (long long sign : {1LL, -1LL}) {
                if (is_rational_root(g, sign * r, s)) out.push_back({sign * r, s});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
        return (double)a.num / a.den < (double)b.num / b.den;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Rational& a, const Rational& b) {
                              return a.num == b.num && a.den == b.den;
                          }),
              out.end());
    return out;
}

std::vector<KnownAnswer> parse_known_answers(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    std::vector<KnownAnswer> out;
    for (const auto& entry : j.at("entries")) {
        KnownAnswer ka;
        ka.degree_n = entry.at("degree").get<int>();
        ka.class_tag = class_from_string(entry.at("class").get<std::string>());
        ka.defining_poly.c = entry.at("defining_poly").get<std::vector<long long>>();
        ka.defining_poly.normalize();
        ka.denominator = entry.at("denominator").get<long long>();
        for (const auto& formula : entry.at("formulas")) {
            CoeffFormula cf;
            cf.w_poly = formula.at("w").get<std::vector<long long>>();
            if (formula.contains("y2")) cf.y2_poly = formula.at("y2").get<std::vector<long long>>();
            ka.formulas.push_back(std::move(cf));
        }
        out.push_back(std::move(ka));
    }
    return out;
}

std::vector<std::vector<Complex>> substitute_known_answer(const KnownAnswer& ka,
                                                          Precision precision) {
    // Roots of the defining polynomial, Newton-polished on the exact integer
    // coefficients in double-double before substitution.
    const int n = ka.defining_poly.degree();
    MonicPoly mp;
    mp.coeffs.resize(n);
    double lead = double(ka.defining_poly.c.back());
    for (int m = 1; m <= n; ++m) mp.coeffs[m - 1] = double(ka.defining_poly.c[n - m]) / lead;
    RootSet roots = find_roots(mp);

    std::vector<long long> der(n);
    for (int k = 1; k <= n; ++k) der[k - 1] = ka.defining_poly.c[k] * k;

    std::vector<std::vector<Complex>> points;
    for (const Complex& w0 : roots.flatten()) {
        CDD w(w0);
        for (int it = 0; it < 4; ++it) {
            CDD v = eval_ascending_dd(ka.defining_poly.c, w);
            CDD d = eval_ascending_dd(der, w);
            if (mag1(d) == 0.0) break;
            w = w - v / d;
        }
        std::vector<Complex> y;
        if (precision == Precision::Extended) {
            CDD denom(double(ka.denominator));
            CDD y2(0.0);
            for (std::size_t k = 0; k < ka.formulas.size(); ++k) {
                CDD val = eval_ascending_dd(ka.formulas[k].w_poly, w);
                if (!ka.formulas[k].y2_poly.empty())
                    val += eval_ascending_dd(ka.formulas[k].y2_poly, y2);
                val = val / denom;
                if (k == 1) y2 = val;
                y.push_back(val.to_complex());
            }
        } else {
            Complex wd = w.to_complex();
            Complex y2 = 0.0;
            for (std::size_t k = 0; k < ka.formulas.size(); ++k) {
                Complex val = eval_ascending(ka.formulas[k].w_poly, wd);
                if (!ka.formulas[k].y2_poly.empty())
                    val += eval_ascending(ka.formulas[k].y2_poly, y2);
                val /= double(ka.denominator);
                if (k == 1) y2 = val;
                y.push_back(val);
            }
        }
        points.push_back(std::move(y));
    }
    return points;
}

KnownAnswerAudit verify_known_answers(int N, const EnumerationReport& report) {
    if (N < 2 || N > 4)
        throw DimensionMismatch("verify_known_answers: explicit data exists for N in 2..4");
    if (report.degree_n != N)
        throw DimensionMismatch("verify_known_answers: report degree mismatch");

    static const int expected_points[] = {0, 0, 1, 4, 17};

    KnownAnswerAudit audit;
    audit.degree_n = N;
    AlgebraicSystem full = build_full(N);
    const double dedup = report.options.dedup_tol;

    std::vector<char> used(report.solutions.size(), 0);
    for (const KnownAnswer& ka : known_answers()) {
        if (ka.degree_n != N) continue;
        for (const std::vector<Complex>& y : substitute_known_answer(ka, Precision::Extended)) {
            ++audit.points_total;
            double res = full.residual(y);
            audit.max_system_residual = std::max(audit.max_system_residual, res);
            if (res >= 1e-9) {
                audit.mismatches.push_back("substituted point residual " + std::to_string(res));
                continue;
            }
            int hit = -1;
            double scale = 1.0;
            for (const Complex& v : y) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < report.solutions.size(); ++i) {
                const SolutionPoint& sp = report.solutions[i];
                double d = 0.0;
                for (std::size_t k = 0; k < y.size(); ++k)
                    d = std::max(d, std::abs(y[k] - sp.y[k]));
                if (d <= dedup * scale) {
                    if (hit >= 0) {
                        hit = -2; // matched two census points: ambiguous
                        break;
                    }
                    hit = static_cast<int>(i);
                }
            }
            if (hit < 0) {
                audit.mismatches.push_back("no unique census match for a substituted point");
                continue;
            }
            if (used[hit]) {
                audit.mismatches.push_back("census solution matched twice");
                continue;
            }
            if (report.solutions[hit].class_tag != ka.class_tag) {
                audit.mismatches.push_back("matched census solution has the wrong class");
                continue;
            }
            used[hit] = 1;
            ++audit.points_matched;
        }
    }
    audit.ok = audit.mismatches.empty() && audit.points_total == expected_points[N] &&
               audit.points_matched == audit.points_total;
    if (audit.points_total != expected_points[N]) {
        audit.mismatches.push_back("expected " + std::to_string(expected_points[N]) +
                                   " substituted points, got " + std::to_string(audit.points_total));
    }
    return audit;
}

} // namespace peculiar
