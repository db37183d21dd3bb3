#include "puncture/functors.hpp"

#include "puncture/rhom.hpp"

namespace puncture {

namespace {

std::optional<Atom> localize_atom(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Free:
            return Atom::laurent(a.shift);
        case AtomKind::Torsion:
            return std::nullopt;
        case AtomKind::Laurent:
            return a;
        case AtomKind::PowerSeries:
            return Atom::laurent_series(a.shift);
        case AtomKind::LaurentSeries:
            return a;
        case AtomKind::Tail:
            return a; // t is already invertible on K[[t]]/K[t]
    }
    return std::nullopt;
}

} // namespace

AdmissibleModule localize(const AdmissibleModule& m) {
    std::vector<Atom> out;
    for (const Atom& a : m.summands())
        if (auto l = localize_atom(a)) out.push_back(*l);
    return AdmissibleModule(std::move(out));
}

Complex right_adj(const AdmissibleModule& m, const Field& f) {
    std::vector<Atom> lim, lim1;
    for (const Atom& a : m.summands()) {
        switch (a.kind) {
            case AtomKind::Free:
                lim1.push_back(Atom::tail(a.shift)); // lim^1 of (K[t], t)
                break;
            case AtomKind::Torsion:
                break; // nilpotent tower
            case AtomKind::Laurent:
            case AtomKind::LaurentSeries:
                lim.push_back(a); // invertible tower
                break;
            default:
                throw CalculusError("right_adj: unsupported RHom pair (L, " + a.to_string() + ")");
        }
    }
    Complex c(f);
    c.set_term(0, AdmissibleModule(std::move(lim)));
    c.set_term(1, AdmissibleModule(std::move(lim1)));
    return c;
}

AtomMorphism unit_map(const AdmissibleModule& m, const Field& f) {
    AdmissibleModule loc = localize(m);
    AtomMorphism u(f, m, loc);
    size_t target = 0;
    for (size_t j = 0; j < m.size(); ++j) {
        if (!localize_atom(m.at(j))) continue; // torsion dies
        u.set_entry(target, j, RatFunc::one(f));
        ++target;
    }
    return u;
}

Complex torsion_part(const AdmissibleModule& m, const Field& f) {
    Complex x(f), y(f);
    x.set_term(0, m);
    y.set_term(0, localize(m));
    ChainMap unit(std::move(x), std::move(y));
    unit.components.emplace(0, unit_map(m, f));
    return shift(cone(unit), -1);
}

Report verify_adjunction(const AdmissibleModule& c, const AdmissibleModule& s, const DegreeWindow& w, int margin,
                         const Field& f) {
    for (const Atom& a : c.summands())
        if (a.kind != AtomKind::Free && a.kind != AtomKind::Torsion)
            throw StructuralError("verify_adjunction: c must be perfect-type (Free/Torsion), got " + a.to_string());
    for (const Atom& a : s.summands())
        if (a.kind != AtomKind::Laurent && a.kind != AtomKind::LaurentSeries)
            throw StructuralError("verify_adjunction: s must be local (Laurent/LaurentSeries), got " + a.to_string());

    Report rep;
    rep.name = "adjunction " + c.to_string() + " | " + s.to_string();
    AdmissibleModule lc = localize(c);
    AdmissibleModule left = rhom_modules(lc, s, f).h0;
    AdmissibleModule right = rhom_modules(c, s, f).h0;
    Realization rl = realize_module(left, w, f);
    Realization rr = realize_module(right, w, f);
    BruteHom bl = brute_hom(lc, s, w, f);
    BruteHom br = brute_hom(c, s, w, f);

    DegreeWindow interior = w.interior(margin);
    nlohmann::json table = nlohmann::json::array();
    for (int d = interior.lo; d <= interior.hi; ++d) {
        int a1 = rl.space.dim(d), a2 = rr.space.dim(d);
        int b1 = bl.dims.dim(d), b2 = br.dims.dim(d);
        table.push_back({{"degree", d},
                         {"symbolic_localized", a1},
                         {"symbolic_direct", a2},
                         {"brute_localized", b1},
                         {"brute_direct", b2}});
        if (a1 != a2 || b1 != b2 || a1 != b1)
            rep.fail("adjunction mismatch at degree " + std::to_string(d));
    }
    rep.detail["per_degree"] = std::move(table);
    rep.detail["h0_localized"] = left.to_string();
    rep.detail["h0_direct"] = right.to_string();
    return rep;
}

} // namespace puncture
