#pragma once

#include "puncture/complexes.hpp"
#include "puncture/oracle.hpp"

namespace puncture {

/// The functors of the localization diagram, instantiated on admissible
/// modules over K[t] with K[t, 1/t] inverted.
enum class FunctorTag { Restrict_i, Localize_iL, RightAdj_iR, TorsionPart_jjR };

/// i i^L: invert t.  Free(k) -> Laurent(k), Torsion -> 0, local atoms
/// unchanged, PowerSeries(k) -> LaurentSeries(k).
AdmissibleModule localize(const AdmissibleModule& m);

/// i i^R = RHom(K[t,1/t], -) presented as a genuine two-term complex
/// (degree 0: lim, degree 1: lim^1 of the tower (M, t)), so that cones
/// over it can be formed.  For Free(k) this is Tail(k)[-1].
Complex right_adj(const AdmissibleModule& m, const Field& f);

/// j j^R via the exact triangle jj^R -> id -> ii^L: the complex
/// cone(unit)[-1], with symbolic cohomology when identifiable.
Complex torsion_part(const AdmissibleModule& m, const Field& f);

/// The unit c -> i i^L(c): identity coefficients into the localized
/// atoms, zero on torsion.
AtomMorphism unit_map(const AdmissibleModule& m, const Field& f);

/// Degreewise agreement of H0 RHom(ii^L c, s) with H0 RHom(c, s) for
/// perfect-type c and local s, checked both on the symbolic table and
/// by the brute-force oracle.
Report verify_adjunction(const AdmissibleModule& c, const AdmissibleModule& s, const DegreeWindow& w, int margin,
                         const Field& f);

} // namespace puncture
