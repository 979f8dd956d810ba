#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peculiar/classify.hpp"

namespace peculiar {

/// Integer polynomial, constant term first. Leading coefficient nonzero.
struct IntPoly {
    std::vector<long long> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    void normalize(); // strip zero leading coefficients
};

/**
 * Exact irreducibility test of f over F_p (Rabin): f of degree n is
 * irreducible iff x^{p^n} == x (mod f) and gcd(x^{p^{n/q}} - x, f) = 1 for
 * every prime divisor q of n. Throws BadPrime if p divides the leading
 * coefficient.
 */
bool irreducible_mod_p(const IntPoly& f, long long p);

struct Certificate {
    long long prime;
};

/**
 * Smallest prime p <= prime_bound with f irreducible mod p: a sound
 * certificate of irreducibility over Q. nullopt means inconclusive; it never
 * claims reducibility (w^4 + 1 is reducible mod every prime yet irreducible).
 */
std::optional<Certificate> certify_irreducible(const IntPoly& f, long long prime_bound);

struct Rational {
    long long num;
    long long den; // > 0, gcd(|num|, den) = 1
};

/// All rational roots, via the rational root theorem with exact evaluation.
std::vector<Rational> rational_roots(const IntPoly& f);

/// y_k = (w_poly(w) + y2_poly(y_2)) / denominator, with y_2 the second
/// formula's value (the N=4 truly-peculiar data expresses y_3, y_4 in both
/// w and y_2, exactly as printed).
struct CoeffFormula {
    std::vector<long long> w_poly;  // ascending powers of w
    std::vector<long long> y2_poly; // ascending powers of y_2 (may be empty)
};

struct KnownAnswer {
    int degree_n = 0;
    ClassTag class_tag = ClassTag::Unclassified;
    IntPoly defining_poly; // in w
    long long denominator = 1;
    std::vector<CoeffFormula> formulas; // one per coefficient y_1..y_N
};

/// The data file shipped with the repo (data/known_answers.json), embedded
/// at build time.
const std::vector<KnownAnswer>& known_answers();
std::vector<KnownAnswer> parse_known_answers(const std::string& json_text);

/// All points obtained by substituting every root w of the defining
/// polynomial into the coefficient formulas, at the requested precision.
std::vector<std::vector<Complex>> substitute_known_answer(const KnownAnswer& ka,
                                                          Precision precision);

struct KnownAnswerAudit {
    int degree_n = 0;
    bool ok = false;
    int points_total = 0;
    int points_matched = 0;
    double max_system_residual = 0.0;
    std::vector<std::string> mismatches;
};

/**
 * Substitutes each known answer of degree N, checks the full-system residual
 * (< 1e-9), matches every substituted point against exactly one census
 * solution of the right class within dedup_tol, and checks the per-degree
 * point counts (1, 1+3, 3+14 for N = 2, 3, 4).
 */
KnownAnswerAudit verify_known_answers(int N, const EnumerationReport& report);

} // namespace peculiar
