#include "puncture/rab.hpp"

#include <mutex>

namespace puncture {

// --- extension certificate --------------------------------------------------

namespace {

struct DeltaModel {
    Complex dual;     // degrees 0, 1: the dual resolution
    Complex laurent;  // Laurent(0) in degree 0
    ChainMap delta;   // s_0^* |-> 1, the connecting representative
};

DeltaModel delta_on_resolution(const Field& f, int n_trunc, int degree_cap) {
    TruncatedResolution res = build_resolution(n_trunc, degree_cap, f);
    Complex dual = dualize(res);
    Complex laurent(f);
    laurent.set_term(0, AdmissibleModule::of(Atom::laurent(0)));
    AtomMorphism phi0(f, dual.term(0), laurent.term(0));
    // restriction along the unit lifts 1 to s_0; only the s_0^* column
    // survives
    phi0.set_entry(0, static_cast<size_t>(res.s_index(0)), RatFunc::one(f));
    ChainMap delta(dual, laurent);
    delta.components.emplace(0, std::move(phi0));
    return DeltaModel{std::move(dual), std::move(laurent), std::move(delta)};
}

} // namespace

Report extension_witness(const Field& f, int n_trunc, const DegreeWindow& w, int margin) {
    Report rep;
    rep.name = "extension witness";
    rep.detail["n"] = n_trunc;
    rep.detail["window"] = {w.lo, w.hi};
    rep.detail["margin"] = margin;
    rep.detail["field"] = f.to_string();

    if (n_trunc > w.interior(margin).hi)
        rep.detail["note"] = "index truncation boundary lies outside the checked interior; the windowed "
                             "system cannot detect the obstruction";

    DeltaModel model = delta_on_resolution(f, n_trunc, w.hi - w.lo + 1);
    RealizedComplex rx = realize(model.dual, w);
    RealizedComplex ry = realize(model.laurent, w);

    // (b) the connecting representative is obstructed
    RealizedChainMap rdelta{rx, ry, {}};
    rdelta.components.emplace(0, realize_morphism_flat(model.delta.component(0), w));
    HomotopyResult obs = null_homotopy_obstruction(rdelta, w, margin);
    rep.detail["delta_obstructed"] = obs.obstructed;
    if (!obs.obstructed) rep.fail("connecting representative is null-homotopic: " + obs.note);

    // negative control: the zero map splits
    RealizedChainMap rzero{rx, ry, {}};
    HomotopyResult control = null_homotopy_obstruction(rzero, w, margin);
    rep.detail["zero_control_splits"] = !control.obstructed;
    if (control.obstructed) rep.fail("zero-map control unexpectedly obstructed");

    // (a) the honest cone has H^0 shadow dims identically 1 on the
    // faithful interior (and no cohomology elsewhere)
    Complex cone_model = cone(model.delta);
    RealizedComplex rc = realize(cone_model, w);
    auto coh = shadow_cohomology(rc);
    DegreeWindow interior = w.interior(margin);
    int cap = std::min(interior.hi, n_trunc - 1);
    nlohmann::json dims = nlohmann::json::array();
    for (int d = interior.lo; d <= cap; ++d) {
        int h0 = coh.count(0) ? coh.at(0).dim(d) : 0;
        dims.push_back({{"degree", d}, {"h0", h0}});
        if (h0 != 1) rep.fail("cone H0 shadow dim != 1 at degree " + std::to_string(d));
        for (const auto& [n, space] : coh)
            if (n != 0 && space.dim(d) != 0)
                rep.fail("cone has cohomology in degree " + std::to_string(n) + " at t-degree " + std::to_string(d));
    }
    rep.detail["cone_h0"] = std::move(dims);
    return rep;
}

bool extension_certified(const Field& f, const RabOptions& opt) {
    static std::mutex mu;
    static std::map<std::string, bool> cache;
    std::string key = f.to_string() + "#" + std::to_string(opt.witness_n) + "#" +
                      std::to_string(opt.witness_window.lo) + ":" + std::to_string(opt.witness_window.hi) + "#" +
                      std::to_string(opt.witness_margin);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    bool ok = extension_witness(f, opt.witness_n, opt.witness_window, opt.witness_margin).pass;
    cache.emplace(key, ok);
    return ok;
}

// --- the cone formula ---------------------------------------------------------

namespace {

void check_perfect(const AdmissibleModule& m, const char* who) {
    for (const Atom& a : m.summands())
        if (a.kind != AtomKind::Free && a.kind != AtomKind::Torsion)
            throw StructuralError(std::string(who) + " must be a sum of Free/Torsion atoms, got " + a.to_string());
}

} // namespace

RabComplex rab_complex(const AdmissibleModule& c, const AdmissibleModule& d, const Field& f, const RabOptions& opt) {
    check_perfect(c, "rab_complex: c");
    check_perfect(d, "rab_complex: d");
    AdmissibleModule lc = localize(c);

    // X = RHom(ii^L c, d): H0 vanishes (Laurent sources against
    // perfect targets), H1 collects one Tail per (Free in c, Free in d)
    RHomResult x = rhom_modules(lc, d, f);
    if (!x.h0.is_zero())
        throw StructuralError("rab_complex: unexpected H0 in RHom(ii^L c, d): " + x.h0.to_string());

    // Y = RHom(c, ii^L d): concentrated in H0
    AdmissibleModule ld = localize(d);
    RHomResult y = rhom_modules(c, ld, f);
    if (!y.h1.is_zero())
        throw StructuralError("rab_complex: unexpected H1 in RHom(c, ii^L d): " + y.h1.to_string());

    Complex xc(f), yc(f);
    xc.set_term(1, x.h1);
    yc.set_term(0, y.h0);
    ChainMap phi(std::move(xc), std::move(yc)); // unit-induced; rational part vanishes here
    Complex cone_cx = cone(phi);

    // register the connecting classes: both X^1 and Y^0 enumerate the
    // (Free summand of c, Free summand of d) pairs in the same
    // row-major order, so the (i, j) Tail glues to the (i, j) Laurent
    const size_t x1_size = x.h1.size();
    if (x1_size != y.h0.size())
        throw StructuralError("rab_complex: internal pairing bookkeeping failed");
    for (size_t pos = 0; pos < x1_size; ++pos)
        cone_cx.add_mark(GluingMark(0, pos, x1_size + pos, RatFunc::one(f)));

    RabComplex out{c, d, std::move(cone_cx), {}};
    CohomologyContext ctx;
    ctx.extension_certified = out.complex.marks().empty() ? false : extension_certified(f, opt);
    out.cohomology = cohomology(out.complex, ctx);
    return out;
}

Complex remark_form(const AdmissibleModule& c, const AdmissibleModule& d, const Field& f) {
    check_perfect(c, "remark_form: c");
    check_perfect(d, "remark_form: d");

    // Z = cone(ii^R d -> ii^L d); for perfect d the right adjoint is
    // concentrated in degree 1 and the rational part of the map is zero
    Complex radj = right_adj(d, f);
    Complex loc(f);
    loc.set_term(0, localize(d));
    ChainMap eval(radj, loc);
    {
        // identity on any already-local summand (empty for perfect d)
        AtomMorphism comp0(f, radj.term(0), loc.term(0));
        size_t src = 0;
        for (size_t j = 0; j < d.size(); ++j) {
            const Atom& a = d.at(j);
            if (a.kind == AtomKind::Laurent || a.kind == AtomKind::LaurentSeries) {
                // position of j's image inside localize(d)
                size_t tgt = 0;
                for (size_t p = 0; p < j; ++p)
                    if (d.at(p).kind != AtomKind::Torsion) ++tgt;
                comp0.set_entry(tgt, src, RatFunc::one(f));
                ++src;
            }
        }
        if (!comp0.is_zero()) eval.components.emplace(0, std::move(comp0));
    }
    Complex z = cone(eval);

    // pair the Tail of each Free summand with its Laurent image
    std::vector<size_t> tail_pos_of_d(d.size(), SIZE_MAX), laurent_pos_of_d(d.size(), SIZE_MAX);
    {
        size_t tails = 0;
        for (size_t j = 0; j < d.size(); ++j)
            if (d.at(j).kind == AtomKind::Free) tail_pos_of_d[j] = tails++;
        size_t lpos = 0;
        for (size_t j = 0; j < d.size(); ++j)
            if (d.at(j).kind != AtomKind::Torsion) laurent_pos_of_d[j] = lpos++;
        const size_t x1 = radj.term(1).size();
        for (size_t j = 0; j < d.size(); ++j) {
            if (tail_pos_of_d[j] == SIZE_MAX) continue;
            z.add_mark(GluingMark(0, tail_pos_of_d[j], x1 + laurent_pos_of_d[j], RatFunc::one(f)));
        }
    }

    // RHom(c, Z) termwise: Free(a) summands shift Z by -a, Torsion
    // summands contribute nothing against Laurent/Tail terms
    Complex out(f);
    struct Block {
        size_t c_atom;
        int shift;
    };
    std::vector<Block> blocks;
    for (size_t i = 0; i < c.size(); ++i)
        if (c.at(i).kind == AtomKind::Free) blocks.push_back({i, -c.at(i).shift});
    if (blocks.empty() || z.is_zero()) return out;

    for (int n = z.min_degree(); n <= z.max_degree(); ++n) {
        AdmissibleModule term;
        for (const Block& b : blocks) term = term.direct_sum(z.term(n).shifted(b.shift));
        out.set_term(n, term);
    }
    for (int n = z.min_degree(); n < z.max_degree(); ++n) {
        AtomMorphism dz = z.diff(n);
        if (dz.is_zero()) continue;
        AtomMorphism dn(f, out.term(n), out.term(n + 1));
        size_t row_off = 0, col_off = 0;
        for (const Block& b : blocks) {
            (void)b;
            for (size_t i = 0; i < z.term(n + 1).size(); ++i)
                for (size_t j = 0; j < z.term(n).size(); ++j) dn.set_entry(row_off + i, col_off + j, dz.entry(i, j));
            row_off += z.term(n + 1).size();
            col_off += z.term(n).size();
        }
        out.set_diff(n, std::move(dn));
    }
    for (size_t bi = 0; bi < blocks.size(); ++bi)
        for (const GluingMark& m : z.marks()) {
            GluingMark moved = m;
            moved.tail_index += bi * z.term(m.degree).size();
            moved.laurent_index += bi * z.term(m.degree).size();
            out.add_mark(moved);
        }
    out.verify();
    return out;
}

// --- Tail classes and composition ---------------------------------------------

TailClass TailClass::div_t(const TailClass& x) {
    // the unique class y with t y = x: subtract the constant term, then
    // divide by t
    const Field& f = x.field();
    if (x.is_zero()) return x;
    Scalar c0 = x.rep_.series_coeff(0);
    RatFunc shifted = (x.rep_ - RatFunc::constant(c0)) / RatFunc::t_power(f, 1);
    TailClass out(f);
    out.rep_ = shifted.proper_part();
    return out;
}

TailClass TailClass::from(const RatFunc& r) {
    TailClass out(r.field());
    if (r.is_zero()) return out;
    int v = r.den().valuation();
    if (v == 0) {
        out.rep_ = r.proper_part();
        return out;
    }
    // strip the pole at 0 through the inverse t-action
    std::vector<Scalar> coeffs;
    for (int e = v; e <= r.den().degree(); ++e) coeffs.push_back(r.den().coeff(e));
    Poly u(r.field(), std::move(coeffs));
    TailClass base = from(RatFunc(r.num(), std::move(u)));
    for (int i = 0; i < v; ++i) base = div_t(base);
    return base;
}

TailClass TailClass::acted_by(const RatFunc& g) const {
    if (g.is_zero() || is_zero()) return TailClass(field());
    return from(g * rep_);
}

RabClass::RabClass(AdmissibleModule from, AdmissibleModule to, std::vector<std::vector<TailClass>> f_part,
                   AtomMorphism g_part)
    : c0(std::move(from)), c1(std::move(to)), f(std::move(f_part)), g(std::move(g_part)) {
    check_perfect(c0, "RabClass: c0");
    check_perfect(c1, "RabClass: c1");
    AdmissibleModule lc0 = localize(c0), lc1 = localize(c1);
    if (!(g.source() == lc0) || !(g.target() == lc1))
        throw StructuralError("RabClass: g must map localize(c0) to localize(c1)");
    if (f.size() != c1.size()) throw StructuralError("RabClass: f must have one row per summand of c1");
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].size() != lc0.size())
            throw StructuralError("RabClass: f row " + std::to_string(i) + " must have one column per summand of localize(c0)");
        if (c1.at(i).kind == AtomKind::Torsion)
            for (const TailClass& t : f[i])
                if (!t.is_zero())
                    throw StructuralError("RabClass: f rows over torsion summands vanish (H1 RHom(L, T) = 0)");
    }
}

bool RabClass::is_zero() const {
    if (!g.is_zero()) return false;
    for (const auto& row : f)
        for (const auto& t : row)
            if (!t.is_zero()) return false;
    return true;
}

bool RabClass::operator==(const RabClass& o) const {
    if (!(c0 == o.c0) || !(c1 == o.c1)) return false;
    if (!(g == o.g)) return false;
    return f == o.f;
}

std::string RabClass::to_string() const {
    std::string s = "(f = [";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) s += "; ";
        for (size_t j = 0; j < f[i].size(); ++j) {
            if (j) s += ", ";
            s += f[i][j].to_string();
        }
    }
    s += "], g = " + g.to_string() + ")";
    return s;
}

RabClass zero_class(const AdmissibleModule& c0, const AdmissibleModule& c1, const Field& f) {
    AdmissibleModule lc0 = localize(c0), lc1 = localize(c1);
    std::vector<std::vector<TailClass>> fm(c1.size(), std::vector<TailClass>(lc0.size(), TailClass(f)));
    return RabClass(c0, c1, std::move(fm), AtomMorphism(f, lc0, lc1));
}

RabClass unit_class(const AdmissibleModule& c, const Field& f) {
    AdmissibleModule lc = localize(c);
    std::vector<std::vector<TailClass>> fm(c.size(), std::vector<TailClass>(lc.size(), TailClass(f)));
    return RabClass(c, c, std::move(fm), AtomMorphism::identity(f, lc));
}

namespace {

RatFunc require_laurent_entry(const RatFunc& e, const char* where) {
    if (!e.is_zero() && !e.is_laurent_polynomial())
        throw CalculusError(std::string("composition leaves calculus: ") + where +
                            " entry " + e.to_string() + " has no exact u-preimage");
    return e;
}

// localized index of each non-torsion summand
std::vector<size_t> loc_index(const AdmissibleModule& m) {
    std::vector<size_t> out(m.size(), SIZE_MAX);
    size_t li = 0;
    for (size_t i = 0; i < m.size(); ++i)
        if (m.at(i).kind != AtomKind::Torsion) out[i] = li++;
    return out;
}

} // namespace

RabClass compose_classes(const RabClass& x1, const RabClass& x0) {
    if (!(x0.c1 == x1.c0))
        throw StructuralError("compose_classes: target of the first class (" + x0.c1.to_string() +
                              ") != source of the second (" + x1.c0.to_string() + ")");
    const Field& f = x0.g.field();

    AtomMorphism g = compose(x1.g, x0.g);

    AdmissibleModule lc0 = localize(x0.c0);
    std::vector<size_t> c1_loc = loc_index(x0.c1);
    std::vector<size_t> c2_loc = loc_index(x1.c1);

    const size_t loc_c1_size = localize(x0.c1).size();
    std::vector<std::vector<TailClass>> fm(x1.c1.size(), std::vector<TailClass>(lc0.size(), TailClass(f)));
    for (size_t k = 0; k < x1.c1.size(); ++k) {
        if (x1.c1.at(k).kind == AtomKind::Torsion) continue;
        for (size_t i = 0; i < lc0.size(); ++i) {
            TailClass acc(f);
            // u^{-1} g1 u f0: push f0 classes through g1
            for (size_t j = 0; j < x0.c1.size(); ++j) {
                if (c1_loc[j] == SIZE_MAX || x0.f[j][i].is_zero()) continue;
                const RatFunc& gamma = require_laurent_entry(x1.g.entry(c2_loc[k], c1_loc[j]), "g1");
                acc = acc + x0.f[j][i].acted_by(gamma);
            }
            // f1 g0
            for (size_t q = 0; q < loc_c1_size; ++q) {
                if (x1.f[k][q].is_zero()) continue;
                const RatFunc& gamma = require_laurent_entry(x0.g.entry(q, i), "g0");
                acc = acc + x1.f[k][q].acted_by(gamma);
            }
            fm[k][i] = std::move(acc);
        }
    }
    return RabClass(x0.c0, x1.c1, std::move(fm), std::move(g));
}

RabClass scale_class(const RabClass& x, const Scalar& a) {
    RatFunc c = RatFunc::constant(a);
    std::vector<std::vector<TailClass>> fm(x.f.size());
    for (size_t i = 0; i < x.f.size(); ++i)
        for (const TailClass& t : x.f[i]) fm[i].push_back(t.acted_by(c));
    return RabClass(x.c0, x.c1, std::move(fm), x.g.scaled(c));
}

RabClass add_classes(const RabClass& x, const RabClass& y) {
    if (!(x.c0 == y.c0) || !(x.c1 == y.c1)) throw StructuralError("add_classes: endpoint mismatch");
    std::vector<std::vector<TailClass>> fm(x.f.size());
    for (size_t i = 0; i < x.f.size(); ++i)
        for (size_t j = 0; j < x.f[i].size(); ++j) fm[i].push_back(x.f[i][j] + y.f[i][j]);
    return RabClass(x.c0, x.c1, std::move(fm), x.g + y.g);
}

} // namespace puncture
