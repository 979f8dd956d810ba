#include "peculiar/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace peculiar {

namespace {

constexpr int kMaxDegreeN = 10; // dense sigma expansion guard

void check_degree(int N, int min_n, const char* who) {
    if (N < min_n)
        throw DimensionMismatch(std::string(who) + ": N below supported range");
    if (N > kMaxDegreeN)
        throw CapacityExceeded(std::string(who) + ": N > 10 exceeds the term-count guard");
}

std::vector<int> unit_exp(int num_vars, int var) {
    std::vector<int> e(num_vars, 0);
    e[var] = 1;
    return e;
}

std::vector<int> iota_vars(int count, int first = 0) {
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

long long sign_of(int m) { return (m % 2 == 0) ? 1 : -1; }

std::vector<std::string> var_names(int first, int count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (int k = 0; k < count; ++k) names.push_back("y" + std::to_string(first + k));
    return names;
}

} // namespace

const char* variant_name(SystemVariant v) {
    switch (v) {
        case SystemVariant::Full: return "full";
        case SystemVariant::P0Reduced: return "p0_reduced";
        case SystemVariant::P1Reduced: return "p1_reduced";
        case SystemVariant::NonZero: return "nonzero";
        case SystemVariant::P1NonZero: return "p1_nonzero";
        case SystemVariant::TruePeculiar: return "pt";
        case SystemVariant::Y1OneSubset: return "y1_one_subset";
        case SystemVariant::TotalDegreeStart: return "total_degree_start";
    }
    return "unknown";
}

const char* class_name(ClassTag t) {
    switch (t) {
        case ClassTag::P0: return "p0";
        case ClassTag::P1minusP0: return "p1_minus_p0";
        case ClassTag::Pt: return "pt";
        case ClassTag::Unclassified: return "unclassified";
    }
    return "unknown";
}

void AlgebraicSystem::finalize() {
    const int n = static_cast<int>(equations.size());
    degrees.resize(n);
    bezout = 1;
    for (int i = 0; i < n; ++i) {
        degrees[i] = equations[i].total_degree();
        bezout *= degrees[i];
    }
    jacobian_polys.clear();
    jacobian_polys.reserve(std::size_t(n) * num_unknowns());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < num_unknowns(); ++j) {
            jacobian_polys.push_back(equations[i].derivative(j));
        }
    }
}

std::vector<Complex> AlgebraicSystem::eval(const std::vector<Complex>& y) const {
    std::vector<Complex> out(equations.size());
    eval_into<Complex>(y, out);
    return out;
}

std::vector<Complex> AlgebraicSystem::jacobian(const std::vector<Complex>& y) const {
    std::vector<Complex> out(equations.size() * num_unknowns());
    jacobian_into<Complex>(y, out);
    return out;
}

double AlgebraicSystem::residual(std::span<const Complex> y) const {
    std::vector<Complex> vals(equations.size());
    eval_into<Complex>(y, vals);
    double ynorm = 1.0;
    for (const Complex& v : y) ynorm = std::max(ynorm, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        worst = std::max(worst, std::abs(vals[i]) / std::pow(ynorm, degrees[i]));
    }
    return worst;
}

std::vector<Complex> AlgebraicSystem::to_full_coeffs(std::span<const Complex> u) const {
    if (static_cast<int>(u.size()) != num_unknowns())
        throw DimensionMismatch("to_full_coeffs: wrong unknown count");
    std::vector<Complex> full;
    switch (variant) {
        case SystemVariant::P0Reduced:
            full.assign(u.begin(), u.end());
            full.push_back(0.0);
            break;
        case SystemVariant::P1Reduced:
        case SystemVariant::P1NonZero:
        case SystemVariant::Y1OneSubset:
            full.push_back(1.0);
            full.insert(full.end(), u.begin(), u.end());
            break;
        default:
            full.assign(u.begin(), u.end());
            break;
    }
    return full;
}

std::string AlgebraicSystem::to_json() const {
    std::string s = "{\"variant\":\"";
    s += variant_name(variant);
    s += "\",\"degree_n\":" + std::to_string(degree_n);
    s += ",\"homogeneous\":";
    s += homogeneous ? "true" : "false";
    s += ",\"unknowns\":[";
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        if (i) s += ",";
        s += "\"" + unknowns[i] + "\"";
    }
    s += "],\"degrees\":[";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(degrees[i]);
    }
    s += "],\"bezout\":" + std::to_string(bezout);
    s += ",\"equations\":[";
    for (std::size_t i = 0; i < equations.size(); ++i) {
        if (i) s += ",";
        s += "[";
        const std::vector<Term>& terms = equations[i].terms();
        for (std::size_t t = 0; t < terms.size(); ++t) {
            if (t) s += ",";
            s += "[" + std::to_string(terms[t].coeff) + ",[";
            for (int k = 0; k < num_unknowns(); ++k) {
                if (k) s += ",";
                s += std::to_string(int(terms[t].exps[k]));
            }
            s += "]]";
        }
        s += "]";
    }
    s += "]}";
    return s;
}

AlgebraicSystem build_full(int N) {
    check_degree(N, 1, "build_full");
    AlgebraicSystem s;
    s.variant = SystemVariant::Full;
    s.degree_n = N;
    s.unknowns = var_names(1, N);
    std::vector<int> all = iota_vars(N);
    for (int m = 1; m <= N; ++m) {
        MultiPoly eq = elementary_symmetric_poly(N, all, m);
        eq.add_term(-sign_of(m), unit_exp(N, m - 1)); // - (-1)^m y_m
        s.equations.push_back(std::move(eq));
    }
    s.finalize();
    return s;
}

AlgebraicSystem build_p0_reduced(int N) {
    check_degree(N, 2, "build_p0_reduced");
    AlgebraicSystem s;
    s.variant = SystemVariant::P0Reduced;
    s.degree_n = N;
    const int n = N - 1;
    s.unknowns = var_names(1, n);
    std::vector<int> all = iota_vars(n);
    for (int m = 1; m <= n; ++m) {
        MultiPoly eq = elementary_symmetric_poly(n, all, m);
        eq.add_term(-sign_of(m), unit_exp(n, m - 1));
        s.equations.push_back(std::move(eq));
    }
    s.finalize();
    return s;
}

AlgebraicSystem build_p1_reduced(int N) {
    check_degree(N, 3, "build_p1_reduced");
    AlgebraicSystem s;
    s.variant = SystemVariant::P1Reduced;
    s.degree_n = N;
    const int n = N - 1; // unknowns y_2..y_N, var k is y_{k+2}
    s.unknowns = var_names(2, n);
    std::vector<int> all = iota_vars(n);
    std::vector<int> zero(n, 0);

    // sigma_1(y_2..y_N) + 2 = 0
    MultiPoly first = elementary_symmetric_poly(n, all, 1);
    first.add_term(2, zero);
    s.equations.push_back(std::move(first));

    // (-1)^m [sigma_{m-1} + sigma_m] - y_m = 0, m = 2..N-1
    for (int m = 2; m <= N - 1; ++m) {
        MultiPoly eq(n);
        eq.add_scaled(elementary_symmetric_poly(n, all, m - 1), sign_of(m));
        eq.add_scaled(elementary_symmetric_poly(n, all, m), sign_of(m));
        eq.add_term(-1, unit_exp(n, m - 2));
        s.equations.push_back(std::move(eq));
    }
    s.finalize();
    return s;
}

AlgebraicSystem build_nonzero(int N) {
    check_degree(N, 3, "build_nonzero");
    AlgebraicSystem s;
    s.variant = SystemVariant::NonZero;
    s.degree_n = N;
    s.unknowns = var_names(1, N);
    std::vector<int> all = iota_vars(N);
    std::vector<int> zero(N, 0);
    for (int m = 1; m <= N - 1; ++m) {
        MultiPoly eq = elementary_symmetric_poly(N, all, m);
        eq.add_term(-sign_of(m), unit_exp(N, m - 1));
        s.equations.push_back(std::move(eq));
    }
    // y_1 ... y_{N-1} = (-1)^N
    MultiPoly prod(N);
    std::vector<int> exps(N, 1);
    exps[N - 1] = 0;
    prod.add_term(1, exps);
    prod.add_term(-sign_of(N), zero);
    s.equations.push_back(std::move(prod));
    s.finalize();
    return s;
}

namespace {

// Shared body of eq:1minus0 / eq:14 in the affine chart y_0 = 1.
AlgebraicSystem build_p1_nonzero_body(int N, SystemVariant variant, const char* who) {
    check_degree(N, 4, who);
    AlgebraicSystem s;
    s.variant = variant;
    s.degree_n = N;
    const int n = N - 1; // unknowns y_2..y_N
    s.unknowns = var_names(2, n);
    std::vector<int> all = iota_vars(n);
    std::vector<int> zero(n, 0);

    // y_2 + ... + y_N = -2
    MultiPoly first = elementary_symmetric_poly(n, all, 1);
    first.add_term(2, zero);
    s.equations.push_back(std::move(first));

    // sigma_m(1, y_2..y_N) = (-1)^m y_m, m = 2..N-2
    for (int m = 2; m <= N - 2; ++m) {
        MultiPoly eq(n);
        eq.add_scaled(elementary_symmetric_poly(n, all, m), 1);
        eq.add_scaled(elementary_symmetric_poly(n, all, m - 1), 1);
        eq.add_term(-sign_of(m), unit_exp(n, m - 2));
        s.equations.push_back(std::move(eq));
    }

    // y_2 ... y_{N-1} = (-1)^N
    MultiPoly prod(n);
    std::vector<int> exps(n, 1);
    exps[n - 1] = 0; // exclude y_N
    prod.add_term(1, exps);
    prod.add_term(-sign_of(N), zero);
    s.equations.push_back(std::move(prod));

    s.finalize();
    return s;
}

} // namespace

AlgebraicSystem build_p1_nonzero(int N) {
    return build_p1_nonzero_body(N, SystemVariant::P1NonZero, "build_p1_nonzero");
}

AlgebraicSystem build_y1_one_subset(int N) {
    return build_p1_nonzero_body(N, SystemVariant::Y1OneSubset, "build_y1_one_subset");
}

AlgebraicSystem build_pt(int N) {
    check_degree(N, 3, "build_pt");
    AlgebraicSystem s;
    s.variant = SystemVariant::TruePeculiar;
    s.degree_n = N;
    s.unknowns = var_names(1, N);
    std::vector<int> all = iota_vars(N);
    std::vector<int> zero(N, 0);

    for (int m = 1; m <= N - 2; ++m) {
        MultiPoly eq = elementary_symmetric_poly(N, all, m);
        eq.add_term(-sign_of(m), unit_exp(N, m - 1));
        s.equations.push_back(std::move(eq));
    }

    MultiPoly prod(N);
    std::vector<int> exps(N, 1);
    exps[N - 1] = 0;
    prod.add_term(1, exps);
    prod.add_term(-sign_of(N), zero);
    s.equations.push_back(std::move(prod));

    // 2 y_1 sum_{l=0}^{N-2} y_1^l + sum_{k=2}^{N-1} y_k sum_{l=0}^{N-k-1} y_1^l = 0.
    // The printed k=1 start double-counts the leading y_1 geometric sum.
    MultiPoly last(N);
    for (int l = 0; l <= N - 2; ++l) {
        std::vector<int> e(N, 0);
        e[0] = l + 1;
        last.add_term(2, e);
    }
    for (int k = 2; k <= N - 1; ++k) {
        for (int l = 0; l <= N - k - 1; ++l) {
            std::vector<int> e(N, 0);
            e[0] = l;
            e[k - 1] += 1;
            last.add_term(1, e);
        }
    }
    s.equations.push_back(std::move(last));

    s.finalize();
    return s;
}

AlgebraicSystem homogenize(const AlgebraicSystem& s) {
    AlgebraicSystem h;
    h.variant = s.variant;
    h.degree_n = s.degree_n;
    h.homogeneous = true;
    h.unknowns.push_back("y0");
    h.unknowns.insert(h.unknowns.end(), s.unknowns.begin(), s.unknowns.end());
    const int n = s.num_unknowns();
    if (n + 1 > kMaxVars) throw CapacityExceeded("homogenize: too many variables");
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
        const int d = s.degrees[i];
        MultiPoly eq(n + 1);
        for (const Term& t : s.equations[i].terms()) {
            std::vector<int> e(n + 1, 0);
            int td = 0;
            for (int k = 0; k < n; ++k) {
                e[k + 1] = t.exps[k];
                td += t.exps[k];
            }
            e[0] = d - td;
            eq.add_term(t.coeff, e);
        }
        h.equations.push_back(std::move(eq));
    }
    h.finalize();
    return h;
}

} // namespace peculiar
