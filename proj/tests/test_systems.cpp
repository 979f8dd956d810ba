#include <doctest.h>

#include <cmath>
#include <cstdint>

#include <json.hpp>

#include "peculiar/systems.hpp"

using namespace peculiar;

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    double next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z = z ^ (z >> 31);
        return 2.0 * (double(z >> 11) * 0x1.0p-53) - 1.0;
    }
};

std::vector<Complex> random_point(Rng& rng, int n) {
    std::vector<Complex> y(n);
    for (Complex& v : y) v = {rng.next(), rng.next()};
    return y;
}

} // namespace

TEST_CASE("build_full: N=2 equations, frozen evaluations and jacobian") {
    AlgebraicSystem s = build_full(2);
    CHECK(s.degrees == std::vector<int>{1, 2});
    CHECK(s.bezout == 2);

    // {2 y1 + y2, y1 y2 - y2}; hand-differentiated jacobian at (1, -2).
    std::vector<Complex> v = s.eval({Complex(1.0), Complex(-2.0)});
    CHECK(v[0] == Complex(0.0));
    CHECK(v[1] == Complex(0.0));
    v = s.eval({Complex(0.0), Complex(0.0)});
    CHECK(v[0] == Complex(0.0));
    CHECK(v[1] == Complex(0.0));

    std::vector<Complex> j = s.jacobian({Complex(1.0), Complex(-2.0)});
    CHECK(j[0] == Complex(2.0));
    CHECK(j[1] == Complex(1.0));
    CHECK(j[2] == Complex(-2.0));
    CHECK(j[3] == Complex(0.0));
}

TEST_CASE("bezout numbers match the stated counts") {
    CHECK(build_full(2).bezout == 2);
    CHECK(build_full(4).bezout == 24);
    CHECK(build_full(7).bezout == 5040);

    CHECK(build_p0_reduced(2).bezout == 1);
    CHECK(build_p0_reduced(3).bezout == 2);
    CHECK(build_p0_reduced(5).bezout == 24);

    CHECK(build_p1_reduced(3).bezout == 2);
    CHECK(build_p1_reduced(4).bezout == 6);
    CHECK(build_p1_reduced(5).bezout == 24);

    CHECK(build_nonzero(3).bezout == 4);
    CHECK(build_nonzero(4).bezout == 18);
    CHECK(build_nonzero(5).bezout == 96);

    CHECK(build_p1_nonzero(4).bezout == 4);
    CHECK(build_p1_nonzero(4).degrees == std::vector<int>{1, 2, 2});
    CHECK(build_p1_nonzero(5).bezout == 18);
    CHECK(build_p1_nonzero(7).bezout == 600);

    CHECK(build_y1_one_subset(4).bezout == 4);
    CHECK(build_y1_one_subset(5).bezout == 18);

    // Degree audit of the truly-peculiar system: (1, 2, .., N-2, N-1, N-1),
    // raw product (N-1)(N-1)!.
    CHECK(build_pt(4).degrees == std::vector<int>{1, 2, 3, 3});
    CHECK(build_pt(4).bezout == 18);
    CHECK(build_pt(3).bezout == 4);

    for (int n = 3; n <= 7; ++n) {
        CHECK(build_full(n).bezout == factorial(n));
        CHECK(build_p0_reduced(n).bezout == factorial(n - 1));
        CHECK(build_p1_reduced(n).bezout == factorial(n - 1));
        CHECK(build_nonzero(n).bezout == (n - 1) * factorial(n - 1));
        if (n >= 4) CHECK(build_p1_nonzero(n).bezout == (n - 2) * factorial(n - 2));
        CHECK(build_pt(n).bezout == (n - 1) * factorial(n - 1));
    }
}

TEST_CASE("systems are square and capacity-guarded") {
    for (int n = 3; n <= 7; ++n) {
        for (const AlgebraicSystem& s :
             {build_full(n), build_p0_reduced(n), build_p1_reduced(n), build_nonzero(n),
              build_pt(n)}) {
            CHECK(static_cast<int>(s.equations.size()) == s.num_unknowns());
        }
    }
    CHECK_THROWS_AS(build_full(11), CapacityExceeded);
    CHECK_THROWS_AS(build_p1_nonzero(3), DimensionMismatch);
}

TEST_CASE("exact evaluation at integer solutions") {
    // (1,-1,-1) solves the full N=3 system; all arithmetic is exact.
    AlgebraicSystem s = build_full(3);
    std::vector<Complex> v = s.eval({Complex(1.0), Complex(-1.0), Complex(-1.0)});
    for (const Complex& c : v) CHECK(c == Complex(0.0));

    // The double point of the N=4 full system.
    AlgebraicSystem s4 = build_full(4);
    v = s4.eval({Complex(1.0), Complex(-1.0), Complex(-1.0), Complex(0.0)});
    for (const Complex& c : v) CHECK(c == Complex(0.0));
}

TEST_CASE("truly-peculiar system reproduces the published cubic at N=3") {
    // Substituting y2 = -2 y1 - 2 y1^2 (last equation) into the product
    // equation must give 2 y1^3 + 2 y1^2 - 1 = 0; check at all three roots.
    AlgebraicSystem s = build_pt(3);
    // roots of 2w^3+2w^2-1: real one near 0.56519771; follow via Newton
    Complex w(0.5, 0.0);
    for (int it = 0; it < 60; ++it) {
        Complex f = 2.0 * w * w * w + 2.0 * w * w - 1.0;
        Complex d = 6.0 * w * w + 4.0 * w;
        w -= f / d;
    }
    std::vector<Complex> y{w, -2.0 * w - 2.0 * w * w, 2.0 * w * w};
    CHECK(s.residual(y) < 1e-12);
}

TEST_CASE("jacobian agrees with central finite differences") {
    const double h = 1e-5;
    Rng rng(123);
    for (int n = 3; n <= 5; ++n) {
        for (const AlgebraicSystem& s :
             {build_full(n), build_p1_reduced(n), build_nonzero(n), build_pt(n)}) {
            const int m = s.num_unknowns();
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<Complex> y = random_point(rng, m);
                std::vector<Complex> J = s.jacobian(y);
                double scale = 0.0;
                for (const Complex& v : J) scale = std::max(scale, std::abs(v));
                for (int col = 0; col < m; ++col) {
                    std::vector<Complex> yp = y, ym = y;
                    yp[col] += h;
                    ym[col] -= h;
                    std::vector<Complex> fp = s.eval(yp), fm = s.eval(ym);
                    for (int row = 0; row < m; ++row) {
                        Complex fd = (fp[row] - fm[row]) / (2.0 * h);
                        CHECK(std::abs(fd - J[std::size_t(row) * m + col]) <=
                              1e-6 * std::max(1.0, scale));
                    }
                }
            }
        }
    }
}

TEST_CASE("homogenize: chart consistency, degree preservation, infinity") {
    Rng rng(5);
    for (int n = 2; n <= 5; ++n) {
        AlgebraicSystem s = build_full(n);
        AlgebraicSystem h = homogenize(s);
        CHECK(h.degrees == s.degrees);
        CHECK(h.num_unknowns() == n + 1);

        // Exact chart consistency at exactly-representable points.
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Complex> y(n);
            for (Complex& v : y) {
                double re = std::floor(rng.next() * 4.0) * 0.5;
                double im = std::floor(rng.next() * 4.0) * 0.5;
                v = {re, im};
            }
            std::vector<Complex> y0(n + 1);
            y0[0] = 1.0;
            std::copy(y.begin(), y.end(), y0.begin() + 1);
            std::vector<Complex> va = s.eval(y);
            std::vector<Complex> vh = h.eval(y0);
            for (int i = 0; i < n; ++i) CHECK(va[i] == vh[i]);
        }

        // At y0 = 0 the full system collapses to sigma_m(y) = 0 for all m,
        // whose only solution is y = 0; random nonzero points must miss.
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Complex> y0(n + 1);
            y0[0] = 0.0;
            bool nonzero = false;
            for (int k = 1; k <= n; ++k) {
                y0[k] = {rng.next(), rng.next()};
                if (std::abs(y0[k]) > 1e-2) nonzero = true;
            }
            if (!nonzero) continue;
            std::vector<Complex> vh = h.eval(y0);
            double worst = 0.0;
            for (const Complex& v : vh) worst = std::max(worst, std::abs(v));
            CHECK(worst > 1e-8);
        }
    }

    // The N=2 peculiar polynomial in projective coordinates.
    AlgebraicSystem h2 = homogenize(build_full(2));
    std::vector<Complex> v = h2.eval({Complex(1.0), Complex(1.0), Complex(-2.0)});
    CHECK(v[0] == Complex(0.0));
    CHECK(v[1] == Complex(0.0));
}

TEST_CASE("to_full_coeffs per variant") {
    std::vector<Complex> u{Complex(2.0), Complex(3.0)};
    AlgebraicSystem p0 = build_p0_reduced(3);
    auto full = p0.to_full_coeffs(u);
    REQUIRE(full.size() == 3);
    CHECK(full[2] == Complex(0.0));

    AlgebraicSystem p1 = build_p1_reduced(3);
    full = p1.to_full_coeffs(u);
    REQUIRE(full.size() == 3);
    CHECK(full[0] == Complex(1.0));
    CHECK(full[1] == Complex(2.0));
}

TEST_CASE("system JSON serialization") {
    AlgebraicSystem s = build_full(2);
    nlohmann::json j = nlohmann::json::parse(s.to_json());
    CHECK(j["variant"] == "full");
    CHECK(j["degree_n"] == 2);
    CHECK(j["bezout"] == 2);
    CHECK(j["unknowns"].size() == 2);
    CHECK(j["equations"].size() == 2);
    // first equation is 2 y1 + y2
    CHECK(j["equations"][0].size() == 2);
}

TEST_CASE("dimension mismatch is reported") {
    AlgebraicSystem s = build_full(3);
    CHECK_THROWS_AS(s.eval({Complex(1.0)}), DimensionMismatch);
    CHECK_THROWS_AS(s.jacobian({Complex(1.0)}), DimensionMismatch);
}
