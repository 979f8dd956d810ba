#pragma once

#include <span>
#include <string>
#include <vector>

#include "peculiar/multipoly.hpp"

namespace peculiar {

/// Which of the paper's algebraic systems an AlgebraicSystem encodes.
/// TotalDegreeStart is the solver's start system y_i^{d_i} - 1.
enum class SystemVariant {
    Full,          // sigma_m(y) = (-1)^m y_m, m = 1..N
    P0Reduced,     // y_N = 0 eliminated, last identity dropped
    P1Reduced,     // y_1 = 1 chart, superfluous last equation dropped
    NonZero,       // m = N equation divided by y_N
    P1NonZero,     // y_1 = 1 chart and product equation (P_1 \ P_0 candidates)
    TruePeculiar,  // the truly-peculiar system
    Y1OneSubset,   // y_1 = y_0 subset of the nonzero system, chart y_0 = 1
    TotalDegreeStart,
};

const char* variant_name(SystemVariant v);

/// Class tags of the disjoint decomposition. Precedence P0 > P1minusP0 > Pt.
enum class ClassTag { P0, P1minusP0, Pt, Unclassified };

const char* class_name(ClassTag t);

/// One distinct endpoint of an enumeration, extended to the full coefficient
/// vector y_1..y_N of the polynomial it represents.
struct SolutionPoint {
    std::vector<Complex> y;
    double residual = 0.0; // relative, re-checked independently of the tracker
    int multiplicity = 1;
    ClassTag class_tag = ClassTag::Unclassified;
    bool is_real = false;
};

/**
 * Square system of sparse integer-coefficient polynomial equations with its
 * total degrees and Bezout number. Immutable after construction; safe for
 * shared concurrent reads during parallel path tracking.
 */
struct AlgebraicSystem {
    SystemVariant variant = SystemVariant::Full;
    int degree_n = 0; // the polynomial degree N this system concerns
    bool homogeneous = false;
    std::vector<std::string> unknowns;
    std::vector<MultiPoly> equations;
    std::vector<int> degrees;
    long long bezout = 1;
    std::vector<MultiPoly> jacobian_polys; // row-major n*n, filled by finalize()

    int num_unknowns() const { return static_cast<int>(unknowns.size()); }

    /// Computes degrees, bezout and the derivative polynomials.
    void finalize();

    template <typename C>
    void eval_into(std::span<const C> y, std::span<C> out) const {
        const int n = static_cast<int>(equations.size());
        if (static_cast<int>(y.size()) != num_unknowns() || static_cast<int>(out.size()) != n)
            throw DimensionMismatch("AlgebraicSystem::eval_into: dimension mismatch");
        for (int i = 0; i < n; ++i) out[i] = equations[i].eval(y);
    }

    template <typename C>
    void jacobian_into(std::span<const C> y, std::span<C> out_rowmajor) const {
        const int n = static_cast<int>(equations.size());
        if (static_cast<int>(y.size()) != num_unknowns() ||
            static_cast<int>(out_rowmajor.size()) != n * num_unknowns())
            throw DimensionMismatch("AlgebraicSystem::jacobian_into: dimension mismatch");
        for (std::size_t k = 0; k < jacobian_polys.size(); ++k)
            out_rowmajor[k] = jacobian_polys[k].eval(y);
    }

    std::vector<Complex> eval(const std::vector<Complex>& y) const;
    std::vector<Complex> jacobian(const std::vector<Complex>& y) const;

    /// max_i |F_i(y)| / max(1, |y|_inf)^{deg_i}.
    double residual(std::span<const Complex> y) const;

    /// Extends a solution of this (possibly reduced) system to the full
    /// coefficient vector y_1..y_N of the polynomial it describes.
    std::vector<Complex> to_full_coeffs(std::span<const Complex> u) const;

    /// Debug / cross-implementation serialization of the exact term data.
    std::string to_json() const;
};

AlgebraicSystem build_full(int N);        // N >= 1, bezout N!
AlgebraicSystem build_p0_reduced(int N);  // N >= 2, bezout (N-1)!
AlgebraicSystem build_p1_reduced(int N);  // N >= 3, bezout (N-1)!
AlgebraicSystem build_nonzero(int N);     // N >= 3, bezout (N-1)(N-1)!
AlgebraicSystem build_p1_nonzero(int N);  // N >= 4, bezout (N-2)(N-2)!
AlgebraicSystem build_pt(int N);          // N >= 3, bezout (N-1)(N-1)!
AlgebraicSystem build_y1_one_subset(int N); // N >= 4, same affine system as P1NonZero

/// Adds the projective variable y_0; setting y_0 = 1 recovers the affine
/// system and y_0 = 0 the system "at infinity". Degree-preserving.
AlgebraicSystem homogenize(const AlgebraicSystem& s);

} // namespace peculiar
