#pragma once

#include <functional>

#include "puncture/atoms.hpp"
#include "puncture/report.hpp"

namespace puncture {

/// Brute-force windowed Hom: for each internal degree d, the space of
/// degreewise maps M_e -> N_{e+d} commuting with the t-action, computed
/// by explicit kernel extraction.  The equivariance system is solved on
/// the window grown by `pad` and the dims are read off on `w`, so that
/// kill chains (torsion tops, localization denominators) reaching past
/// the window edge stay visible; pad 0 gives the raw edge-artifact
/// behaviour that the stabilization check is designed to catch.
/// `basis` holds one witness map per solution dimension.
struct BruteHom {
    GradedSpace dims;
    std::map<int, std::vector<GradedMap>> basis; // keyed by internal degree
};

BruteHom brute_hom(const AdmissibleModule& m, const AdmissibleModule& n, const DegreeWindow& w, const Field& f,
                   int pad = 4);

/// Independent Ext computation for a torsion source via its free
/// resolution: per internal degree, H0/H1 of
///   Hom(F(k), B) --(o t^m)--> Hom(F(k+m), B)
/// with both Hom spaces produced by brute_hom.
struct BruteExt {
    GradedSpace h0;
    GradedSpace h1;
};

BruteExt brute_ext_torsion(int m, int k, const AdmissibleModule& b, const DegreeWindow& w, const Field& f);

/// Compares interior dims of a re-runnable windowed computation against
/// the same computation on a window grown by `growth`.
Report stabilization_check(const std::string& name,
                           const std::function<std::map<int, int>(const DegreeWindow&)>& dims_at,
                           const DegreeWindow& w, int growth = 4, int margin = 2);

/// Exact per-degree comparison of a symbolic module's shadow against a
/// brute-force graded space on the margin-trimmed interior.  Tail
/// summands realize to zero; the verdict records them as
/// shadow-invisible.
Report compare(const AdmissibleModule& symbolic, const GradedSpace& brute, const DegreeWindow& w, int margin,
               const Field& f);

} // namespace puncture
