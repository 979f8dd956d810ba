#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "peculiar/dd.hpp"
#include "peculiar/errors.hpp"

namespace peculiar {

using Complex = std::complex<double>;

/// Hard cap on system variables (y0..y10 homogenized is the largest we build).
constexpr int kMaxVars = 12;

/// One sparse term: exact integer coefficient times a monomial.
struct Term {
    long long coeff = 0;
    std::array<std::uint8_t, kMaxVars> exps{};

    int total_degree() const {
        int d = 0;
        for (std::uint8_t e : exps) d += e;
        return d;
    }
};

/**
 * Sparse multivariate polynomial with exact integer coefficients. Terms are
 * kept canonical (sorted by exponent vector, no duplicates, no zeros), so
 * construction and evaluation at rational points are exact.
 */
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(int num_vars);

    int num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int total_degree() const;

    void add_term(long long coeff, std::span<const int> exps);
    /// Adds every term of other (same variable space) scaled by factor.
    void add_scaled(const MultiPoly& other, long long factor);
    /// Product with a single variable (shifts exponents).
    MultiPoly times_var(int var) const;
    MultiPoly derivative(int var) const;

    /// Sort + combine + drop zero coefficients. Called by mutators.
    void canonicalize();

    template <typename C>
    C eval(std::span<const C> y) const {
        if (static_cast<int>(y.size()) != num_vars_)
            throw DimensionMismatch("MultiPoly::eval: wrong variable count");
        C acc = C(0.0);
        for (const Term& t : terms_) {
            C v = C(double(t.coeff));
            for (int k = 0; k < num_vars_; ++k) {
                for (int e = 0; e < t.exps[k]; ++e) v = v * y[k];
            }
            acc = acc + v;
        }
        return acc;
    }

private:
    int num_vars_ = 0;
    std::vector<Term> terms_;
};

/// Elementary symmetric polynomial e_m of the listed variables, expanded to
/// sparse terms via e_m(S + v) = e_m(S) + y_v e_{m-1}(S).
MultiPoly elementary_symmetric_poly(int num_vars, std::span<const int> vars, int m);

} // namespace peculiar
