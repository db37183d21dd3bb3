#include "puncture/complexes.hpp"

#include <sstream>

namespace puncture {

AdmissibleModule Complex::term(int n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? AdmissibleModule::zero() : it->second;
}

AtomMorphism Complex::diff(int n) const {
    auto it = diffs_.find(n);
    if (it != diffs_.end()) return it->second;
    return AtomMorphism(field_, term(n), term(n + 1));
}

int Complex::min_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first;
}

int Complex::max_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first;
}

void Complex::set_term(int n, AdmissibleModule m) {
    if (m.is_zero())
        terms_.erase(n);
    else
        terms_[n] = std::move(m);
}

void Complex::set_diff(int n, AtomMorphism d) {
    if (!(d.source() == term(n)) || !(d.target() == term(n + 1)))
        throw StructuralError("Complex::set_diff: endpoints do not match terms at degree " + std::to_string(n));
    if (d.is_zero())
        diffs_.erase(n);
    else
        diffs_.insert_or_assign(n, std::move(d));
}

void Complex::add_mark(GluingMark mark) {
    const AdmissibleModule t = term(mark.degree);
    if (mark.tail_index >= t.size() || mark.laurent_index >= t.size())
        throw StructuralError("Complex::add_mark: summand index out of range");
    const Atom& tail = t.at(mark.tail_index);
    const Atom& lau = t.at(mark.laurent_index);
    if (tail.kind != AtomKind::Tail || lau.kind != AtomKind::Laurent)
        throw StructuralError("Complex::add_mark: mark must pair a Tail summand with a Laurent summand");
    if (tail.shift != lau.shift)
        throw StructuralError("Complex::add_mark: mark pairs atoms of different shifts");
    marks_.push_back(std::move(mark));
}

void Complex::verify() const {
    for (const auto& [n, d] : diffs_) {
        auto next = diffs_.find(n + 1);
        if (next == diffs_.end()) continue;
        AtomMorphism sq = puncture::compose(next->second, d);
        if (!sq.is_zero())
            throw StructuralError("Complex: d^2 != 0 between degrees " + std::to_string(n) + " and " +
                                  std::to_string(n + 2));
    }
}

std::string Complex::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it != terms_.begin()) os << " -> ";
        os << "[" << it->first << ": " << it->second.to_string() << "]";
    }
    return os.str();
}

AtomMorphism ChainMap::component(int n) const {
    auto it = components.find(n);
    if (it != components.end()) return it->second;
    return AtomMorphism(source.field(), source.term(n), target.term(n));
}

void ChainMap::verify() const {
    int lo = std::min(source.min_degree(), target.min_degree()) - 1;
    int hi = std::max(source.max_degree(), target.max_degree()) + 1;
    for (const auto& [n, c] : components) {
        if (!(c.source() == source.term(n)) || !(c.target() == target.term(n)))
            throw StructuralError("ChainMap: component endpoints mismatch at degree " + std::to_string(n));
    }
    for (int n = lo; n <= hi; ++n) {
        AtomMorphism lhs = puncture::compose(target.diff(n), component(n));
        AtomMorphism rhs = puncture::compose(component(n + 1), source.diff(n));
        if (!(lhs == rhs))
            throw StructuralError("ChainMap: square at degree " + std::to_string(n) + " does not commute");
    }
}

Complex cone(const ChainMap& phi) {
    phi.verify();
    const Field& f = phi.source.field();
    const Complex& x = phi.source;
    const Complex& y = phi.target;
    Complex c(f);
    if (x.is_zero() && y.is_zero()) return c;
    int lo = std::min(x.min_degree() - 1, y.min_degree()) - 1;
    int hi = std::max(x.max_degree() - 1, y.max_degree()) + 1;
    for (int n = lo; n <= hi; ++n) c.set_term(n, x.term(n + 1).direct_sum(y.term(n)));
    for (int n = lo; n <= hi; ++n) {
        AdmissibleModule src = c.term(n), tgt = c.term(n + 1);
        if (src.is_zero() || tgt.is_zero()) continue;
        AtomMorphism d(f, src, tgt);
        const size_t xs = x.term(n + 1).size();
        const size_t xt = x.term(n + 2).size();
        AtomMorphism dx = x.diff(n + 1);
        AtomMorphism dy = y.diff(n);
        AtomMorphism ph = phi.component(n + 1);
        const Scalar minus_one(f, -1);
        for (size_t i = 0; i < xt; ++i)
            for (size_t j = 0; j < xs; ++j) d.set_entry(i, j, dx.entry(i, j) * RatFunc::constant(minus_one));
        for (size_t i = 0; i < y.term(n + 1).size(); ++i) {
            for (size_t j = 0; j < xs; ++j) d.set_entry(xt + i, j, ph.entry(i, j));
            for (size_t j = 0; j < y.term(n).size(); ++j) d.set_entry(xt + i, xs + j, dy.entry(i, j));
        }
        c.set_diff(n, std::move(d));
    }
    c.verify();
    for (const GluingMark& m : x.marks()) {
        GluingMark moved = m;
        moved.degree = m.degree - 1; // x[n+1]-part of cone degree n
        c.add_mark(moved);
    }
    for (const GluingMark& m : y.marks()) {
        GluingMark moved = m;
        moved.tail_index += x.term(m.degree + 1).size();
        moved.laurent_index += x.term(m.degree + 1).size();
        c.add_mark(moved);
    }
    return c;
}

Complex shift(const Complex& x, int s) {
    Complex r(x.field());
    if (x.is_zero()) return r;
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) r.set_term(n - s, x.term(n));
    const bool flip = (s % 2) != 0;
    for (int n = x.min_degree() - 1; n <= x.max_degree(); ++n) {
        AtomMorphism d = x.diff(n);
        if (d.is_zero()) continue;
        r.set_diff(n - s, flip ? -d : d);
    }
    for (const GluingMark& m : x.marks()) {
        GluingMark moved = m;
        moved.degree = m.degree - s;
        r.add_mark(moved);
    }
    r.verify();
    return r;
}

ChainMap shift(const ChainMap& phi, int s) {
    ChainMap r(shift(phi.source, s), shift(phi.target, s));
    for (const auto& [n, c] : phi.components) r.components.emplace(n - s, c);
    return r;
}

// --- symbolic cohomology ----------------------------------------------------

namespace {

struct MonomialEntry {
    size_t row = 0, col = 0;
    Scalar coeff;
    int exp = 0;
    MonomialEntry(size_t r, size_t c, Scalar co, int e) : row(r), col(c), coeff(std::move(co)), exp(e) {}
};

// Checks a differential is a partial permutation with monomial entries
// and lists the nonzero entries.
std::vector<MonomialEntry> monomial_entries(const AtomMorphism& d) {
    std::vector<MonomialEntry> out;
    std::vector<int> row_used(d.target().size(), 0), col_used(d.source().size(), 0);
    for (size_t i = 0; i < d.target().size(); ++i)
        for (size_t j = 0; j < d.source().size(); ++j) {
            const RatFunc& e = d.entry(i, j);
            if (e.is_zero()) continue;
            auto mono = e.as_monomial();
            if (!mono)
                throw CalculusError("cohomology not in calculus: non-monomial differential entry " + e.to_string());
            if (++row_used[i] > 1 || ++col_used[j] > 1)
                throw CalculusError("cohomology not in calculus: differential is not a partial permutation");
            out.emplace_back(i, j, mono->first, mono->second);
        }
    return out;
}

} // namespace

std::map<int, AdmissibleModule> cohomology(const Complex& x, const CohomologyContext& ctx) {
    std::map<int, AdmissibleModule> out;
    if (x.is_zero()) return out;
    x.verify();
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
        const AdmissibleModule tm = x.term(n);
        const AdmissibleModule prev = x.term(n - 1);
        auto outgoing = monomial_entries(x.diff(n));
        auto incoming = monomial_entries(x.diff(n - 1));

        std::vector<int> consumed(tm.size(), 0); // 1 = has outgoing, 2 = hit by incoming
        std::vector<Atom> survivors;
        std::vector<std::optional<size_t>> survivor_of(tm.size());

        auto emit = [&](const Atom& a, size_t idx) {
            survivor_of[idx] = survivors.size();
            survivors.push_back(a);
        };

        for (const auto& e : outgoing) consumed[e.col] = 1;
        for (const auto& e : incoming) {
            if (consumed[e.row] == 1)
                throw CalculusError("cohomology not in calculus: summand both hit and mapping at degree " +
                                    std::to_string(n));
            consumed[e.row] = 2;
        }

        // kernels of outgoing monomials
        for (const auto& e : outgoing) {
            const Atom& src = tm.at(e.col);
            switch (src.kind) {
                case AtomKind::Free:
                case AtomKind::Laurent:
                case AtomKind::PowerSeries:
                case AtomKind::LaurentSeries:
                    break; // monomial multiplication is injective on torsion-free atoms
                default:
                    throw CalculusError("cohomology not in calculus: kernel of monomial out of " + src.to_string());
            }
        }

        // cokernels of incoming monomials
        for (const auto& e : incoming) {
            const Atom& src = prev.at(e.col);
            const Atom& tgt = tm.at(e.row);
            if (src.kind == AtomKind::Free && tgt.kind == AtomKind::Free) {
                if (e.exp < 0)
                    throw CalculusError("cohomology not in calculus: negative monomial into a free atom");
                if (e.exp > 0) emit(Atom::torsion(e.exp, tgt.shift), e.row);
                continue; // exp 0: unit entry, acyclic pair
            }
            if ((src.kind == AtomKind::Laurent && tgt.kind == AtomKind::Laurent) ||
                (src.kind == AtomKind::LaurentSeries && tgt.kind == AtomKind::LaurentSeries))
                continue; // monomials act invertibly
            throw CalculusError("cohomology not in calculus: unidentified subquotient " + tgt.to_string() + "/" +
                                src.to_string());
        }

        // untouched summands survive, possibly fused by a mark
        for (size_t j = 0; j < tm.size(); ++j)
            if (consumed[j] == 0) emit(tm.at(j), j);

        // canonical-cone identifications
        std::vector<bool> fused(survivors.size(), false);
        std::vector<Atom> result;
        for (const GluingMark& m : x.marks()) {
            if (m.degree != n) continue;
            if (consumed[m.tail_index] != 0 || consumed[m.laurent_index] != 0)
                throw CalculusError("cohomology not in calculus: marked summand consumed by the differential");
            if (m.coeff.is_zero()) continue; // zero class splits
            if (!ctx.extension_certified)
                throw CalculusError("cohomology gated on the extension nontriviality certificate; run the "
                                    "extension witness first");
            size_t ti = *survivor_of[m.tail_index];
            size_t li = *survivor_of[m.laurent_index];
            if (fused[ti] || fused[li])
                throw CalculusError("cohomology not in calculus: summand fused twice");
            fused[ti] = fused[li] = true;
            result.push_back(Atom::laurent_series(survivors[ti].shift));
        }
        for (size_t i = 0; i < survivors.size(); ++i)
            if (!fused[i]) result.push_back(survivors[i]);
        out[n] = AdmissibleModule(std::move(result));
    }
    return out;
}

// --- realization ------------------------------------------------------------

const Realization& RealizedComplex::term(int n) const {
    auto it = terms.find(n);
    if (it == terms.end()) throw StructuralError("RealizedComplex: no term at degree " + std::to_string(n));
    return it->second;
}

GradedMap RealizedComplex::diff(int n) const {
    auto it = diffs.find(n);
    if (it != diffs.end()) return it->second;
    auto src = terms.find(n);
    auto tgt = terms.find(n + 1);
    GradedSpace s = src == terms.end() ? GradedSpace(window) : src->second.space;
    GradedSpace t = tgt == terms.end() ? GradedSpace(window) : tgt->second.space;
    return GradedMap(field, s, t, 0);
}

int RealizedComplex::min_degree() const { return terms.empty() ? 0 : terms.begin()->first; }
int RealizedComplex::max_degree() const { return terms.empty() ? 0 : terms.rbegin()->first; }

RealizedComplex realize(const Complex& x, const DegreeWindow& w) {
    RealizedComplex r{w, x.field(), {}, {}};
    if (x.is_zero()) return r;
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) r.terms.emplace(n, realize_module(x.term(n), w, x.field()));
    for (int n = x.min_degree(); n < x.max_degree(); ++n) {
        AtomMorphism d = x.diff(n);
        if (d.is_zero()) continue;
        r.diffs.emplace(n, realize_morphism_flat(d, w));
    }
    return r;
}

std::map<int, GradedSpace> shadow_cohomology(const RealizedComplex& x) {
    std::map<int, GradedSpace> out;
    if (x.terms.empty()) return out;
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
        GradedMap din = x.diff(n - 1);
        GradedMap dout = x.diff(n);
        out.emplace(n, homology_at(din, dout).dims);
    }
    return out;
}

GradedMap RealizedChainMap::component(int n) const {
    auto it = components.find(n);
    if (it != components.end()) return it->second;
    auto s = source.terms.find(n);
    auto t = target.terms.find(n);
    GradedSpace ss = s == source.terms.end() ? GradedSpace(source.window) : s->second.space;
    GradedSpace ts = t == target.terms.end() ? GradedSpace(target.window) : t->second.space;
    return GradedMap(source.field, ss, ts, 0);
}

void RealizedChainMap::verify() const {
    if (source.window != target.window) throw StructuralError("RealizedChainMap: window mismatch");
    int lo = std::min(source.min_degree(), target.min_degree());
    int hi = std::max(source.max_degree(), target.max_degree());
    for (int n = lo; n < hi; ++n) {
        GradedMap lhs = puncture::compose(target.diff(n), component(n));
        GradedMap rhs = puncture::compose(component(n + 1), source.diff(n));
        if (!(lhs == rhs))
            throw StructuralError("RealizedChainMap: square at degree " + std::to_string(n) + " does not commute");
    }
}

// --- null homotopy ----------------------------------------------------------

HomotopyResult null_homotopy_obstruction(const RealizedChainMap& phi, const DegreeWindow& w, int margin) {
    phi.verify();
    const Field& f = phi.source.field;
    if (phi.source.window != w) throw StructuralError("null_homotopy_obstruction: window mismatch");
    DegreeWindow interior = w.interior(margin); // throws when too small

    const RealizedComplex& X = phi.source;
    const RealizedComplex& Y = phi.target;
    int lo = std::min(X.min_degree(), Y.min_degree());
    int hi = std::max(X.max_degree(), Y.max_degree());

    auto xspace = [&](int n) { return X.terms.count(n) ? X.term(n).space : GradedSpace(w); };
    auto yspace = [&](int n) { return Y.terms.count(n) ? Y.term(n).space : GradedSpace(w); };
    auto xt = [&](int n) { return X.terms.count(n) ? X.term(n).t_action : GradedMap(f, GradedSpace(w), GradedSpace(w), 1); };
    auto yt = [&](int n) { return Y.terms.count(n) ? Y.term(n).t_action : GradedMap(f, GradedSpace(w), GradedSpace(w), 1); };

    // variable layout: unknown blocks h^n(d) : X^n(d) -> Y^{n-1}(d)
    struct VarBlock {
        int n, d, rows, cols, offset;
    };
    std::vector<VarBlock> blocks;
    std::map<std::pair<int, int>, int> block_of; // (n, d) -> index into blocks
    int nvars = 0;
    for (int n = lo; n <= hi + 1; ++n) {
        GradedSpace xs = xspace(n), ys = yspace(n - 1);
        for (int d = w.lo; d <= w.hi; ++d) {
            int r = ys.dim(d), c = xs.dim(d);
            if (r == 0 || c == 0) continue;
            block_of[{n, d}] = static_cast<int>(blocks.size());
            blocks.push_back({n, d, r, c, nvars});
            nvars += r * c;
        }
    }

    auto var_index = [&](int n, int d, int r, int c) -> int {
        auto it = block_of.find({n, d});
        if (it == block_of.end()) return -1;
        const VarBlock& b = blocks[static_cast<size_t>(it->second)];
        return b.offset + r * b.cols + c;
    };

    std::vector<std::vector<std::pair<int, Scalar>>> rows; // sparse rows
    std::vector<Scalar> rhs;

    auto add_equation = [&](std::vector<std::pair<int, Scalar>> row, Scalar b) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    };

    // homotopy equations on the interior:
    //   d_Y^{n-1} h^n + h^{n+1} d_X^n = phi^n
    for (int n = lo; n <= hi; ++n) {
        GradedSpace xs = xspace(n), ysn = yspace(n);
        GradedMap dy = Y.diff(n - 1);
        GradedMap dx = X.diff(n);
        GradedMap ph = phi.component(n);
        for (int d = interior.lo; d <= interior.hi; ++d) {
            int ncols = xs.dim(d), nrows = ysn.dim(d);
            if (ncols == 0 || nrows == 0) {
                continue;
            }
            Matrix dyb = dy.block(d);  // Y^{n-1}(d) -> Y^n(d)
            Matrix dxb = dx.block(d);  // X^n(d) -> X^{n+1}(d)
            Matrix phb = ph.block(d);
            for (int r = 0; r < nrows; ++r)
                for (int c = 0; c < ncols; ++c) {
                    std::vector<std::pair<int, Scalar>> row;
                    for (int k = 0; k < dyb.cols(); ++k) {
                        if (dyb.at(r, k).is_zero()) continue;
                        int v = var_index(n, d, k, c);
                        if (v >= 0) row.emplace_back(v, dyb.at(r, k));
                    }
                    for (int k = 0; k < dxb.rows(); ++k) {
                        if (dxb.at(k, c).is_zero()) continue;
                        int v = var_index(n + 1, d, r, k);
                        if (v >= 0) row.emplace_back(v, dxb.at(k, c));
                    }
                    add_equation(std::move(row), phb.at(r, c));
                }
        }
    }

    // t-equivariance across the whole window:
    //   h^n(d+1) tX(d) = tY(d) h^n(d)
    for (int n = lo; n <= hi + 1; ++n) {
        GradedSpace xs = xspace(n), ys = yspace(n - 1);
        GradedMap tX = xt(n), tY = yt(n - 1);
        for (int d = w.lo; d < w.hi; ++d) {
            int nrows = ys.dim(d + 1), ncols = xs.dim(d);
            if (nrows == 0 || ncols == 0) continue;
            Matrix tXb = tX.block(d); // X(d) -> X(d+1)
            Matrix tYb = tY.block(d); // Y(d) -> Y(d+1)
            for (int r = 0; r < nrows; ++r)
                for (int c = 0; c < ncols; ++c) {
                    std::vector<std::pair<int, Scalar>> row;
                    for (int k = 0; k < tXb.rows(); ++k) {
                        if (tXb.at(k, c).is_zero()) continue;
                        int v = var_index(n, d + 1, r, k);
                        if (v >= 0) row.emplace_back(v, tXb.at(k, c));
                    }
                    for (int k = 0; k < tYb.cols(); ++k) {
                        if (tYb.at(r, k).is_zero()) continue;
                        int v = var_index(n, d, k, c);
                        if (v >= 0) row.emplace_back(v, -tYb.at(r, k));
                    }
                    add_equation(std::move(row), Scalar::zero(f));
                }
        }
    }

    Matrix a(f, static_cast<int>(rows.size()), nvars);
    Matrix b(f, static_cast<int>(rows.size()), 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [v, coeff] : rows[i])
            a.at(static_cast<int>(i), v) = a.at(static_cast<int>(i), v) + coeff;
        b.at(static_cast<int>(i), 0) = rhs[i];
    }
    auto sol = solve_linear(a, b);
    HomotopyResult out;
    if (!sol) {
        out.obstructed = true;
        out.note = "homotopy system inconsistent on interior [" + std::to_string(interior.lo) + "," +
                   std::to_string(interior.hi) + "]";
        return out;
    }
    for (int n = lo; n <= hi + 1; ++n) {
        GradedSpace xs = xspace(n), ys = yspace(n - 1);
        GradedMap h(f, xs, ys, 0);
        bool any = false;
        for (int d = w.lo; d <= w.hi; ++d) {
            int r = ys.dim(d), c = xs.dim(d);
            if (r == 0 || c == 0) continue;
            Matrix blockm(f, r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    int v = var_index(n, d, i, j);
                    if (v >= 0) blockm.at(i, j) = sol->at(v, 0);
                }
            if (!blockm.is_zero()) {
                h.set_block(d, std::move(blockm));
                any = true;
            }
        }
        if (any) out.witness.emplace(n, std::move(h));
    }
    out.note = "homotopy witness found";
    return out;
}

} // namespace puncture
