#include "puncture/rhom.hpp"

namespace puncture {

Tower::Tower(AdmissibleModule b, AtomMorphism t) : body(std::move(b)), transition(std::move(t)) {
    for (const Atom& a : body.summands())
        if (a.kind != AtomKind::Free && a.kind != AtomKind::Torsion)
            throw StructuralError("Tower: body must consist of finitely generated atoms, got " + a.to_string());
    if (!(transition.source() == body) || !(transition.target() == body))
        throw StructuralError("Tower: transition must be an endomorphism of the body");
}

std::pair<AdmissibleModule, AdmissibleModule> tower_lim(const Tower& t) {
    const size_t n = t.body.size();
    // the calculus covers t-power multiples of diagonal maps only
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const RatFunc& e = t.transition.entry(i, j);
            if (i != j && !e.is_zero())
                throw CalculusError("tower out of calculus: off-diagonal transition entry at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            if (i == j && !e.is_zero() && !e.as_monomial())
                throw CalculusError("tower out of calculus: non-monomial transition entry at index " +
                                    std::to_string(i));
        }
    std::vector<Atom> lim, lim1;
    for (size_t i = 0; i < n; ++i) {
        const Atom& a = t.body.at(i);
        const RatFunc& e = t.transition.entry(i, i);
        if (e.is_zero()) continue; // eventually-zero tower: lim = lim1 = 0
        auto [coeff, exp] = *e.as_monomial();
        (void)coeff;
        if (exp == 0) {
            lim.push_back(a); // invertible transition
            continue;
        }
        if (exp < 0)
            throw CalculusError("tower out of calculus: transition with negative t-power");
        if (a.kind == AtomKind::Free) lim1.push_back(Atom::tail(a.shift));
        // nilpotent on torsion: nothing survives
    }
    return {AdmissibleModule(std::move(lim)), AdmissibleModule(std::move(lim1))};
}

namespace {

RHomWitness h0_generator_witness(const Field& f, const Atom& a, const Atom& b) {
    AtomMorphism gen(f, AdmissibleModule::of(a), AdmissibleModule::of(b));
    gen.set_entry(0, 0, RatFunc::one(f));
    return RHomWitness{"H0 generator " + a.to_string() + " -> " + b.to_string() + " with entry 1", gen, std::nullopt};
}

// kernel and cokernel of multiplication by t^m on an atom, as atoms
std::pair<AdmissibleModule, AdmissibleModule> ker_coker_tm(const Atom& b, int m) {
    switch (b.kind) {
        case AtomKind::Free:
        case AtomKind::PowerSeries:
            // t^m (t^k K[t]) = t^{k+m} K[t]; same for power series
            return {AdmissibleModule::zero(), AdmissibleModule::of(Atom::torsion(m, b.shift))};
        case AtomKind::Laurent:
        case AtomKind::LaurentSeries:
            return {AdmissibleModule::zero(), AdmissibleModule::zero()};
        case AtomKind::Tail:
            // t^m is bijective on K[[t]]/K[t]: any series is t^m * series
            // up to a polynomial, and t^m f polynomial forces f polynomial
            return {AdmissibleModule::zero(), AdmissibleModule::zero()};
        case AtomKind::Torsion: {
            int mm = std::min(m, b.length);
            AdmissibleModule ker = AdmissibleModule::of(Atom::torsion(mm, b.shift + std::max(b.length - m, 0)));
            AdmissibleModule coker = AdmissibleModule::of(Atom::torsion(mm, b.shift));
            return {ker, coker};
        }
    }
    return {AdmissibleModule::zero(), AdmissibleModule::zero()};
}

RHomResult rhom_laurent_source(const Atom& b, const Field& f) {
    RHomResult out;
    switch (b.kind) {
        case AtomKind::Free: {
            out.h1 = AdmissibleModule::of(Atom::tail(b.shift));
            RHomWitness w;
            w.description = "H1 class: diagonal cochain on the dual resolution, proper form 1/(1-t)";
            w.h1_class = RatFunc::one(f) / (RatFunc::one(f) - RatFunc::t_power(f, 1));
            out.witnesses.push_back(std::move(w));
            return out;
        }
        case AtomKind::Torsion:
            return out; // nilpotent tower
        case AtomKind::Laurent:
            out.h0 = AdmissibleModule::of(Atom::laurent(b.shift));
            out.witnesses.push_back(h0_generator_witness(f, Atom::laurent(0), b));
            return out;
        case AtomKind::LaurentSeries:
            out.h0 = AdmissibleModule::of(Atom::laurent_series(b.shift));
            out.witnesses.push_back(h0_generator_witness(f, Atom::laurent(0), b));
            return out;
        case AtomKind::PowerSeries:
        case AtomKind::Tail:
            throw CalculusError("unsupported RHom pair (L, " + b.to_string() + ")");
    }
    return out;
}

} // namespace

RHomResult rhom_atoms(const Atom& a, const Atom& b, const Field& f) {
    RHomResult out;
    switch (a.kind) {
        case AtomKind::Free: {
            // Free sources are projective: H0 = target shifted, H1 = 0
            out.h0 = AdmissibleModule::of(b.shifted(-a.shift));
            if (b.kind != AtomKind::Tail) out.witnesses.push_back(h0_generator_witness(f, a, b));
            return out;
        }
        case AtomKind::Laurent: {
            RHomResult base = rhom_laurent_source(b, f);
            out.h0 = base.h0.shifted(-a.shift);
            out.h1 = base.h1.shifted(-a.shift);
            out.witnesses = std::move(base.witnesses);
            return out;
        }
        case AtomKind::Torsion: {
            // from the length-1 free resolution of the source:
            // H0 = ker(t^m on b) shifted by -k, H1 = coker(t^m on b)
            // shifted by -(k+m)
            auto [ker, coker] = ker_coker_tm(b, a.length);
            out.h0 = ker.shifted(-a.shift);
            out.h1 = coker.shifted(-(a.shift + a.length));
            if (!out.h1.is_zero()) {
                RHomWitness w;
                w.description = "H1 class on the resolution F(" + std::to_string(a.shift + a.length) + ") -> F(" +
                                std::to_string(a.shift) + "): cochain with entry 1";
                out.witnesses.push_back(std::move(w));
            }
            return out;
        }
        default:
            throw CalculusError("unsupported RHom pair (" + a.to_string() + ", " + b.to_string() + ")");
    }
}

RHomResult rhom_modules(const AdmissibleModule& m, const AdmissibleModule& n, const Field& f) {
    RHomResult out;
    for (const Atom& a : m.summands())
        for (const Atom& b : n.summands()) {
            RHomResult part = rhom_atoms(a, b, f);
            out.h0 = out.h0.direct_sum(part.h0);
            out.h1 = out.h1.direct_sum(part.h1);
            for (auto& w : part.witnesses) out.witnesses.push_back(std::move(w));
        }
    return out;
}

} // namespace puncture
