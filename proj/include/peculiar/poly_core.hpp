#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "peculiar/errors.hpp"

namespace peculiar {

using Complex = std::complex<double>;

/// Unordered multiset of complex numbers. All operations that consume one
/// canonicalize the element order themselves, so callers may pass any order.
using ZeroSet = std::vector<Complex>;

/**
 * Monic polynomial of degree N, stored by its N trailing coefficients:
 *
 *   p(z) = z^N + y_1 z^{N-1} + ... + y_{N-1} z + y_N
 *
 * The coefficient list is ordered and never reordered; the multiset view is
 * applied only to zeros.
 */
struct MonicPoly {
    std::vector<Complex> coeffs; // y_1 .. y_N

    int degree() const { return static_cast<int>(coeffs.size()); }
};

/// A zero together with its estimated multiplicity.
struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

struct RootSet {
    std::vector<RootCluster> clusters; // canonical (re, im) lex order
    double max_residual = 0.0;         // max |p(x)| / scale(p) at the reported roots

    int total() const;
    /// Roots repeated according to multiplicity, canonical order.
    std::vector<Complex> flatten() const;
};

struct RootOptions {
    double residual_tol = 1e-10; // relative to scale(p)
    int max_iters = 400;
};

/// scale(p) = max(1, max_m |y_m|); residual tolerances are relative to this.
double poly_scale(const MonicPoly& p);

/// Elementary symmetric functions sigma_1..sigma_N of the multiset, computed
/// by incremental expansion of prod (z - x_n) after canonical sorting, so the
/// result is exactly permutation invariant.
std::vector<Complex> elementary_symmetric(ZeroSet xs);

/// Maps a zero multiset to the monic polynomial having exactly those zeros:
/// y_m = (-1)^m sigma_m.
MonicPoly ulam_transform(const ZeroSet& zeros);

/// Horner evaluation of the monic polynomial at z.
Complex eval_poly(const MonicPoly& p, Complex z);

/**
 * Finds all N zeros with multiplicity estimates using the Aberth-Ehrlich
 * simultaneous iteration from a deterministic start circle. Roots closer
 * than the cluster radius are merged, validated against the shifted Taylor
 * coefficients, and polished with a multiplicity-aware Newton step.
 *
 * Throws NonConvergence if the iteration cannot reach
 * opts.residual_tol * scale(p).
 */
RootSet find_roots(const MonicPoly& p, const RootOptions& opts = {});

/**
 * Optimal bottleneck matching between two equally sized multisets: returns a
 * pairing (a[i] <-> b[perm[i]]) minimizing the maximum pairwise distance,
 * or nullopt if no pairing achieves max distance <= tol. Uses augmenting-path
 * bipartite matching over the thresholded distance matrix; greedy matching is
 * deliberately not used (it fails on near-degenerate clusters).
 */
std::optional<std::vector<int>> match_multisets(const ZeroSet& a, const ZeroSet& b, double tol);

/// True iff the zero multiset of p can be ordered to coincide with its
/// coefficient list within tol * scale(p). Propagates NonConvergence.
bool is_peculiar(const MonicPoly& p, double tol);

/// True iff p vanishes at each of its own coefficients within tol * scale(p).
/// Necessary for peculiarity but not sufficient.
bool satisfies_eq3(const MonicPoly& p, double tol);

} // namespace peculiar
