#pragma once

#include "puncture/appendix.hpp"
#include "puncture/functors.hpp"

namespace puncture {

/// Configuration for the extension nontriviality certificate backing
/// the LaurentSeries identification.
struct RabOptions {
    int witness_n = 6;
    DegreeWindow witness_window{0, 8};
    int witness_margin = 2;
};

/// Hom in the punctured-neighborhood category as the cone
///   Cone( RHom(ii^L c, d) -> RHom(c, ii^L d) )
/// with the map induced by the unit maps.  For c, d built from Free and
/// Torsion atoms the rational part of the cone map vanishes degreewise
/// and the connecting data is carried by gluing marks; the cached
/// cohomology applies the registered identification, gated on the
/// certificate.
struct RabComplex {
    AdmissibleModule c, d;
    Complex complex;
    std::map<int, AdmissibleModule> cohomology;
};

/// Certifies on the truncated dual-resolution model that the connecting
/// class delta: Tail(0)[-1] -> Laurent is not null-homotopic (windowed,
/// margin-trimmed), that the zero-map control is null-homotopic, and
/// that the honest cone has H^0 shadow dims identically 1.
Report extension_witness(const Field& f, int n_trunc, const DegreeWindow& w, int margin);

/// Memoized per field.
bool extension_certified(const Field& f, const RabOptions& opt = {});

RabComplex rab_complex(const AdmissibleModule& c, const AdmissibleModule& d, const Field& f,
                       const RabOptions& opt = {});

/// The right-adjoint form RHom(c, Cone(ii^R d -> ii^L d)).
Complex remark_form(const AdmissibleModule& c, const AdmissibleModule& d, const Field& f);

/// An element of Tail(k) = K[[t]]/K[t]: the series class of a rational
/// function expansion, stored as the canonical strictly proper
/// representative (denominator nonvanishing at t = 0).  t acts
/// invertibly.
class TailClass {
  public:
    explicit TailClass(const Field& f) : rep_(RatFunc::zero(f)) {}
    /// Canonicalize any rational function: poles at t = 0 are resolved
    /// through the inverse t-action, polynomial parts are dropped.
    static TailClass from(const RatFunc& r);

    const RatFunc& rep() const { return rep_; }
    const Field& field() const { return rep_.field(); }
    bool is_zero() const { return rep_.is_zero(); }

    TailClass operator+(const TailClass& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        return from(rep_ + o.rep_);
    }
    TailClass operator-() const { return from(-rep_); }
    bool operator==(const TailClass& o) const { return rep_ == o.rep_; }
    bool operator!=(const TailClass& o) const { return !(*this == o); }

    /// Action of a rational function (Laurent polynomials in
    /// particular); the exact u-preimage extraction is the proper-part
    /// normalization.
    TailClass acted_by(const RatFunc& g) const;

    /// Series coefficient of the canonical representative.
    Scalar series_coeff(int e) const { return rep_.series_coeff(e); }

    std::string to_string() const { return rep_.to_string(); }

  private:
    static TailClass div_t(const TailClass& x);
    RatFunc rep_;
};

/// A cohomology-level morphism class of the punctured-neighborhood
/// category between perfect objects: g in H^0 Hom(ii^L c0, ii^L c1) and
/// f the H^1 component of Hom(ii^L c0, c1)[1], stored per
/// (c1 summand, localize(c0) summand) as Tail classes.
struct RabClass {
    AdmissibleModule c0, c1;
    std::vector<std::vector<TailClass>> f; // [c1 atom][localize(c0) atom]
    AtomMorphism g;                        // localize(c0) -> localize(c1)

    RabClass(AdmissibleModule from, AdmissibleModule to, std::vector<std::vector<TailClass>> f_part,
             AtomMorphism g_part);

    bool is_zero() const;
    bool operator==(const RabClass& o) const;
    std::string to_string() const;
};

RabClass zero_class(const AdmissibleModule& c0, const AdmissibleModule& c1, const Field& f);
/// (0, id on localize(c)); the zero class for purely torsion objects.
RabClass unit_class(const AdmissibleModule& c, const Field& f);

/// The cohomology-level composition
///   (f1, g1) o (f0, g0) = (u^{-1} g1 u f0 + f1 g0, g1 g0).
/// Throws CalculusError("composition leaves calculus ...") when a g
/// entry is not a Laurent polynomial, since then the exact u-preimage
/// solve leaves the admissible class.
RabClass compose_classes(const RabClass& x1, const RabClass& x0);

RabClass scale_class(const RabClass& x, const Scalar& a);
RabClass add_classes(const RabClass& x, const RabClass& y);

} // namespace puncture
