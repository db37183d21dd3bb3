#pragma once

#include "puncture/complexes.hpp"
#include "puncture/report.hpp"

namespace puncture {

/// The index-truncated two-term free resolution of K[t, 1/t]:
///   (+)_{ -N <= n <= -1 } K[t] r_n  ->  (+)_{ -N <= n <= 0 } K[t] s_n,
///   r_n |-> t s_n - s_{n+1},
/// with s_n in grading degree n and r_n in degree n+1.  The truncation
/// resolves t^{-N} K[t]; the genuine Laurent module (and its Ext^1,
/// which vanishes at every finite stage) only appears in the limit over
/// N, via the tower calculus.
struct TruncatedResolution {
    int n_trunc = 1;    // N >= 1
    int degree_cap = 1; // D >= 1, default polynomial-degree cap for realizations
    Field field;
    AdmissibleModule r_term; // index i <-> n = -N + i, atom Free(n+1)
    AdmissibleModule s_term; // index i <-> n = -N + i, atom Free(n)
    AtomMorphism differential; // r_term -> s_term

    int r_index(int n) const { return n + n_trunc; }     // n in [-N, -1]
    int s_index(int n) const { return n + n_trunc; }     // n in [-N, 0]
};

TruncatedResolution build_resolution(int n_trunc, int degree_cap, const Field& f);

/// The dual two-term complex with gradings negated: degree 0 term
/// (+) K[t] s_n^* (s_n^* = Free(-n)), degree 1 term (+) K[t] r_n^*
/// (r_n^* = Free(-n-1)); s_n^* |-> t r_n^* - r_{n-1}^*, boundary
/// generators dropped (so s_0^* |-> -r_{-1}^* and s_{-N}^* |-> t r_{-N}^*).
Complex dualize(const TruncatedResolution& r);

/// The evaluation onto the power-series shadow: r_n^* |-> t^{-n-1} in
/// PS(0).
AtomMorphism sigma_map(const TruncatedResolution& r);

/// Windowed exactness of the dual sequence: (a) the dual first map is
/// injective degreewise, (b) ker Sigma = im of the dual map restricted
/// to the s_n^*, n <= -1 columns, (c) Sigma surjects onto the PS(0)
/// shadow.  Checks run per total degree on the margin-trimmed interior,
/// additionally capped at degree N-1: at degrees >= N the truncated
/// dual matrix is no longer square (the index cutoff contributes the
/// kernel element sum_n t^{N+n} s_n^*) and the window stops being a
/// faithful shadow of the infinite products.
Report verify_exact(const TruncatedResolution& r, const DegreeWindow& w, int margin);

/// Interior degrees actually checked by verify_exact for this N.
DegreeWindow faithful_interior(const TruncatedResolution& r, const DegreeWindow& w, int margin);

} // namespace puncture
