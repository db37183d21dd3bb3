#pragma once

#include <optional>

#include "puncture/atoms.hpp"

namespace puncture {

/// A representative cocycle attached to an RHom computation: H0
/// generators come as validated morphisms, H1 classes as proper
/// rational functions living on the dual-resolution model.
struct RHomWitness {
    std::string description;
    std::optional<AtomMorphism> generator; // H0 generator
    std::optional<RatFunc> h1_class;       // H1 class, proper rational form
};

struct RHomResult {
    AdmissibleModule h0;
    AdmissibleModule h1;
    std::vector<RHomWitness> witnesses;
};

/// An inverse system indexed by the naturals: a finitely generated body
/// (Free and Torsion atoms only) with an endomorphism as transition.
struct Tower {
    AdmissibleModule body;
    AtomMorphism transition;

    Tower(AdmissibleModule b, AtomMorphism t);
};

/// Derived inverse limit (lim, lim1) by closed-form rules.  Finite
/// truncation is never used here: every finite stage of these towers is
/// Mittag-Leffler and would silently report lim1 = 0.
///   (Free(k), t^e), e >= 1   ->  (0, Tail(k))
///   (Torsion,  t^e), e >= 1  ->  (0, 0)
///   invertible transition    ->  (body, 0)
/// Direct sums split.  Throws CalculusError("tower out of calculus")
/// unless the transition is diagonal with monomial entries.
std::pair<AdmissibleModule, AdmissibleModule> tower_lim(const Tower& t);

/// Symbolic derived Hom between atoms over K[t].  Supported sources:
/// Free (all targets), Laurent (Free/Laurent/LaurentSeries/Torsion
/// targets), Torsion (via its length-1 free resolution).  Anything else
/// throws CalculusError("unsupported RHom pair ...").
RHomResult rhom_atoms(const Atom& a, const Atom& b, const Field& f);

/// Biadditive extension of rhom_atoms; witnesses concatenated.
RHomResult rhom_modules(const AdmissibleModule& m, const AdmissibleModule& n, const Field& f);

} // namespace puncture
