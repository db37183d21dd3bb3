#pragma once

#include <functional>

#include "puncture/rhom.hpp"

namespace puncture {

/// Marks the canonical connecting class gluing a Tail summand to a
/// Laurent summand inside one term of a complex.  The glued subquotient
/// is the nontrivial extension (identified with LaurentSeries) when the
/// class is nonzero and the nontriviality certificate is available;
/// coefficient zero means the split sum.
struct GluingMark {
    int degree;
    size_t tail_index;
    size_t laurent_index;
    RatFunc coeff;

    GluingMark(int deg, size_t tail, size_t laurent, RatFunc c)
        : degree(deg), tail_index(tail), laurent_index(laurent), coeff(std::move(c)) {}
};

/// A bounded complex of admissible modules with differentials d^n:
/// term(n) -> term(n+1) satisfying d^{n+1} o d^n = 0 as an exact
/// rational-function identity.
class Complex {
  public:
    explicit Complex(const Field& f) : field_(f) {}

    const Field& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    AdmissibleModule term(int n) const;
    AtomMorphism diff(int n) const; // zero morphism when absent
    const std::map<int, AdmissibleModule>& terms() const { return terms_; }
    const std::vector<GluingMark>& marks() const { return marks_; }

    int min_degree() const;
    int max_degree() const;

    void set_term(int n, AdmissibleModule m);
    void set_diff(int n, AtomMorphism d); // shapes must match the terms
    void add_mark(GluingMark mark);

    /// Re-checks d^2 = 0; throws StructuralError naming the degree.
    void verify() const;

    std::string to_string() const;

  private:
    Field field_;
    std::map<int, AdmissibleModule> terms_;
    std::map<int, AtomMorphism> diffs_;
    std::vector<GluingMark> marks_;
};

/// A degreewise morphism of complexes commuting with the differentials.
struct ChainMap {
    Complex source;
    Complex target;
    std::map<int, AtomMorphism> components;

    ChainMap(Complex s, Complex t) : source(std::move(s)), target(std::move(t)) {}

    AtomMorphism component(int n) const;
    /// Throws StructuralError naming the failing square.
    void verify() const;
};

/// Standard cone with sign convention (-d_source, 0; phi, d_target):
/// term n = source[n+1] (+) target[n].  Gluing marks of the inputs are
/// carried across; callers register new canonical marks themselves.
Complex cone(const ChainMap& phi);

/// Shift with sign (-1)^s on differentials.
Complex shift(const Complex& x, int s);

/// Shift a chain map in parallel with its endpoints.
ChainMap shift(const ChainMap& phi, int s);

/// What the symbolic cohomology may assume about the canonical
/// extension class.
struct CohomologyContext {
    bool extension_certified = false;
};

/// Symbolic cohomology via the whitelisted rules: zero rows/columns,
/// monomial pivots between free or Laurent atoms, and the registered
/// canonical-cone identification for marked Tail/Laurent pairs.
/// Throws CalculusError("cohomology not in calculus ...") otherwise.
std::map<int, AdmissibleModule> cohomology(const Complex& x, const CohomologyContext& ctx = {});

/// Degreewise shadow of a complex on a window.
struct RealizedComplex {
    DegreeWindow window;
    Field field;
    std::map<int, Realization> terms;  // cohomological degree -> shadow
    std::map<int, GradedMap> diffs;    // internal degree 0 maps

    const Realization& term(int n) const;
    GradedMap diff(int n) const;
    int min_degree() const;
    int max_degree() const;
};

RealizedComplex realize(const Complex& x, const DegreeWindow& w);

/// Shadow cohomology: per cohomological degree, the graded dimensions
/// of ker/im computed by exact elimination.
std::map<int, GradedSpace> shadow_cohomology(const RealizedComplex& x);

/// A chain map between realized complexes (internal degree 0).
struct RealizedChainMap {
    RealizedComplex source;
    RealizedComplex target;
    std::map<int, GradedMap> components;

    GradedMap component(int n) const;
    void verify() const;
};

struct HomotopyResult {
    bool obstructed = false;
    // witness components h^n : X^n -> Y^{n-1} when unobstructed
    std::map<int, GradedMap> witness;
    std::string note;
};

/// Solves h d + d h = phi for a t-equivariant degreewise h, with the
/// homotopy equations imposed on the margin-trimmed window interior.
/// Returns the witness or certifies that the linear system is
/// inconsistent there.
HomotopyResult null_homotopy_obstruction(const RealizedChainMap& phi, const DegreeWindow& w, int margin);

} // namespace puncture
