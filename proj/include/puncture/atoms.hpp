#pragma once

#include <optional>
#include <string>
#include <vector>

#include "puncture/linalg.hpp"
#include "puncture/ratfunc.hpp"

namespace puncture {

/// The closed class of Tate-type K[t]-modules:
///   Free(k)          t^k K[t]
///   Laurent(k)       K[t, 1/t]            (k is bookkeeping for grading)
///   PowerSeries(k)   t^k K[[t]]
///   LaurentSeries(k) K((t))               (k is bookkeeping)
///   Tail(k)          K[[t]]/K[t]          (degreewise invisible; pro-side)
///   Torsion(m, k)    t^k K[t]/(t^m)
enum class AtomKind { Free, Laurent, PowerSeries, LaurentSeries, Tail, Torsion };

struct Atom {
    AtomKind kind = AtomKind::Free;
    int shift = 0;  // grading shift k
    int length = 0; // torsion length m, Torsion only

    static Atom free(int k) { return {AtomKind::Free, k, 0}; }
    static Atom laurent(int k = 0) { return {AtomKind::Laurent, k, 0}; }
    static Atom power_series(int k) { return {AtomKind::PowerSeries, k, 0}; }
    static Atom laurent_series(int k = 0) { return {AtomKind::LaurentSeries, k, 0}; }
    static Atom tail(int k) { return {AtomKind::Tail, k, 0}; }
    static Atom torsion(int m, int k);

    Atom shifted(int by) const;
    /// Degreewise shadow dimension (0 or 1).
    int dim_at(int degree) const;
    /// The shadow's t-action connects d -> d+1 by the identity exactly
    /// when both degrees carry dimension (torsion truncates at the top).
    bool t_connects(int degree) const { return dim_at(degree) == 1 && dim_at(degree + 1) == 1; }

    bool operator==(const Atom& o) const { return kind == o.kind && shift == o.shift && length == o.length; }
    bool operator!=(const Atom& o) const { return !(*this == o); }
    bool operator<(const Atom& o) const;

    /// "F(2)", "L", "L(1)", "PS(0)", "LS", "Q(0)", "T(3,-1)"
    std::string to_string() const;
    static Atom parse(const std::string& text);
};

/// A finite formal direct sum of atoms.  Summands keep construction
/// order; equality compares canonical (sorted) forms.
class AdmissibleModule {
  public:
    AdmissibleModule() = default;
    explicit AdmissibleModule(std::vector<Atom> summands) : summands_(std::move(summands)) {}
    static AdmissibleModule zero() { return AdmissibleModule(); }
    static AdmissibleModule of(const Atom& a) { return AdmissibleModule({a}); }

    const std::vector<Atom>& summands() const { return summands_; }
    size_t size() const { return summands_.size(); }
    bool is_zero() const { return summands_.empty(); }
    const Atom& at(size_t i) const { return summands_.at(i); }

    AdmissibleModule direct_sum(const AdmissibleModule& o) const;
    AdmissibleModule shifted(int k) const;

    bool operator==(const AdmissibleModule& o) const;
    bool operator!=(const AdmissibleModule& o) const { return !(*this == o); }

    std::string to_string() const; // summands joined with " + ", "0" if empty
    static AdmissibleModule parse(const std::string& text);

  private:
    std::vector<Atom> summands_;
};

AdmissibleModule shift_atom(const AdmissibleModule& m, int k);

/// Degreewise shadow of a module on a window: the graded space, the
/// t-action (internal degree +1) and which summand owns each slot.
struct Realization {
    GradedSpace space;
    GradedMap t_action;
    // slot_owner[d][s] = summand index owning slot s of degree d
    std::map<int, std::vector<int>> slot_owner;
};

Realization realize_module(const AdmissibleModule& m, const DegreeWindow& w, const Field& f);

/// A morphism between admissible modules.  Entries are rational
/// functions in generator-coefficient form: the source summand's
/// generator maps to entry * (target summand's generator), so entries
/// compose by plain matrix products.  Every entry must satisfy the
/// Hom-space admissibility rule of its (source atom, target atom) pair.
class AtomMorphism {
  public:
    /// Zero morphism.
    AtomMorphism(const Field& f, AdmissibleModule source, AdmissibleModule target);
    /// Validates all entries; throws StructuralError on a violation.
    AtomMorphism(const Field& f, AdmissibleModule source, AdmissibleModule target,
                 std::vector<std::vector<RatFunc>> entries);

    static AtomMorphism identity(const Field& f, const AdmissibleModule& m);

    const Field& field() const { return field_; }
    const AdmissibleModule& source() const { return source_; }
    const AdmissibleModule& target() const { return target_; }
    /// Entry at (target summand i, source summand j).
    const RatFunc& entry(size_t i, size_t j) const { return entries_.at(i).at(j); }
    void set_entry(size_t i, size_t j, RatFunc v); // revalidates the entry

    bool is_zero() const;
    AtomMorphism operator+(const AtomMorphism& o) const;
    AtomMorphism operator-() const;
    AtomMorphism scaled(const RatFunc& c) const;
    bool operator==(const AtomMorphism& o) const;

    std::string to_string() const;

  private:
    Field field_;
    AdmissibleModule source_, target_;
    std::vector<std::vector<RatFunc>> entries_; // [target idx][source idx]
};

/// g after f.
AtomMorphism compose(const AtomMorphism& g, const AtomMorphism& f);

struct ValidationReport {
    bool ok = true;
    std::string message; // names the entry and the violated rule
};

/// Checks every entry against the Hom-space table without throwing.
ValidationReport validate_morphism(const AtomMorphism& f);
/// Rule check for a single prospective entry.
ValidationReport validate_entry(const Atom& src, const Atom& tgt, const RatFunc& v);

/// Windowed realization of a morphism, split into homogeneous
/// components keyed by internal degree.  Degreewise maps of mixed
/// degree (series entries) produce several components.
std::map<int, GradedMap> realize_morphism(const AtomMorphism& f, const DegreeWindow& w);

/// Realization of a morphism that must be homogeneous of internal
/// degree 0 (differentials, unit maps); throws otherwise.
GradedMap realize_morphism_flat(const AtomMorphism& f, const DegreeWindow& w);

} // namespace puncture
