#include "puncture/oracle.hpp"

namespace puncture {

namespace {

void check_brute_source(const AdmissibleModule& m) {
    for (const Atom& a : m.summands())
        switch (a.kind) {
            case AtomKind::Free:
            case AtomKind::Torsion:
            case AtomKind::Laurent:
                break;
            default:
                throw StructuralError("brute_hom: source atom " + a.to_string() +
                                      " does not have a degreewise-finite Hom shadow");
        }
}

} // namespace

BruteHom brute_hom(const AdmissibleModule& m, const AdmissibleModule& n, const DegreeWindow& w, const Field& f,
                   int pad) {
    check_brute_source(m);
    const DegreeWindow wg = w.grown(pad);
    Realization rm = realize_module(m, wg, f);
    Realization rn = realize_module(n, wg, f);

    BruteHom out{GradedSpace(w), {}};
    for (int shift = w.lo; shift <= w.hi; ++shift) {
        // unknown blocks B_e : M_e -> N_{e+shift}
        struct Block {
            int e, rows, cols, offset;
        };
        std::vector<Block> vars;
        std::map<int, int> block_at;
        int nvars = 0;
        for (int e = wg.lo; e <= wg.hi; ++e) {
            if (!wg.contains(e + shift)) continue;
            int r = rn.space.dim(e + shift), c = rm.space.dim(e);
            if (r == 0 || c == 0) continue;
            block_at[e] = static_cast<int>(vars.size());
            vars.push_back({e, r, c, nvars});
            nvars += r * c;
        }
        auto var = [&](int e, int i, int j) -> int {
            auto it = block_at.find(e);
            if (it == block_at.end()) return -1;
            const Block& b = vars[static_cast<size_t>(it->second)];
            return b.offset + i * b.cols + j;
        };

        // t-equivariance: B_{e+1} tM(e) = tN(e+shift) B_e wherever all
        // four degrees are inside the working window
        std::vector<std::vector<std::pair<int, Scalar>>> rows;
        for (int e = wg.lo; e + 1 <= wg.hi; ++e) {
            if (!wg.contains(e + shift) || !wg.contains(e + shift + 1)) continue;
            Matrix tm = rm.t_action.block(e);
            Matrix tn = rn.t_action.block(e + shift);
            int nrows = rn.space.dim(e + shift + 1), ncols = rm.space.dim(e);
            if (nrows == 0 || ncols == 0) continue;
            for (int r = 0; r < nrows; ++r)
                for (int c = 0; c < ncols; ++c) {
                    std::vector<std::pair<int, Scalar>> row;
                    for (int k = 0; k < tm.rows(); ++k) {
                        if (tm.at(k, c).is_zero()) continue;
                        int v = var(e + 1, r, k);
                        if (v >= 0) row.emplace_back(v, tm.at(k, c));
                    }
                    for (int k = 0; k < tn.cols(); ++k) {
                        if (tn.at(r, k).is_zero()) continue;
                        int v = var(e, k, c);
                        if (v >= 0) row.emplace_back(v, -tn.at(r, k));
                    }
                    if (!row.empty()) rows.push_back(std::move(row));
                }
        }

        Matrix a(f, static_cast<int>(rows.size()), nvars);
        for (size_t i = 0; i < rows.size(); ++i)
            for (const auto& [v, coeff] : rows[i])
                a.at(static_cast<int>(i), v) = a.at(static_cast<int>(i), v) + coeff;
        Matrix kb = kernel_basis(a);
        out.dims.set_dim(shift, kb.cols());

        std::vector<GradedMap> witnesses;
        for (int col = 0; col < kb.cols(); ++col) {
            GradedMap wmap(f, rm.space, rn.space, shift);
            for (const Block& bl : vars) {
                Matrix blockm(f, bl.rows, bl.cols);
                bool nz = false;
                for (int i = 0; i < bl.rows; ++i)
                    for (int j = 0; j < bl.cols; ++j) {
                        Scalar v = kb.at(bl.offset + i * bl.cols + j, col);
                        if (!v.is_zero()) nz = true;
                        blockm.at(i, j) = v;
                    }
                if (nz) wmap.set_block(bl.e, std::move(blockm));
            }
            witnesses.push_back(std::move(wmap));
        }
        out.basis.emplace(shift, std::move(witnesses));
    }
    return out;
}

BruteExt brute_ext_torsion(int m, int k, const AdmissibleModule& b, const DegreeWindow& w, const Field& f) {
    if (m < 1) throw StructuralError("brute_ext_torsion: torsion length must be >= 1");
    const int pad = 4;
    const DegreeWindow wg = w.grown(pad);
    AdmissibleModule f0 = AdmissibleModule::of(Atom::free(k));
    AdmissibleModule f1 = AdmissibleModule::of(Atom::free(k + m));
    BruteHom hom0 = brute_hom(f0, b, w, f, pad);
    BruteHom hom1 = brute_hom(f1, b, w, f, pad);

    // the resolution differential F(k+m) -> F(k) with entry t^m
    AtomMorphism incl(f, f1, f0);
    incl.set_entry(0, 0, RatFunc::t_power(f, m));
    GradedMap incl_flat = realize_morphism_flat(incl, wg);

    BruteExt out{GradedSpace(w), GradedSpace(w)};
    for (int shift = w.lo; shift <= w.hi; ++shift) {
        const auto& basis0 = hom0.basis.at(shift);
        const auto& basis1 = hom1.basis.at(shift);
        // flatten a map F(k+m) -> B into coordinates over the unknown slots
        auto flatten = [&](const GradedMap& g) {
            std::vector<Scalar> v;
            for (int e = wg.lo; e <= wg.hi; ++e) {
                if (!wg.contains(e + shift)) continue;
                Matrix blk = g.block(e);
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j) v.push_back(blk.at(i, j));
            }
            return v;
        };
        // matrix of the precomposition in the witness bases
        std::vector<std::vector<Scalar>> cols;
        for (const GradedMap& psi : basis0) cols.push_back(flatten(compose(psi, incl_flat)));
        size_t flat_len = basis1.empty() ? (cols.empty() ? 0 : cols.front().size()) : flatten(basis1.front()).size();
        Matrix basis_mat(f, static_cast<int>(flat_len), static_cast<int>(basis1.size()));
        for (size_t bcol = 0; bcol < basis1.size(); ++bcol) {
            auto fv = flatten(basis1[bcol]);
            for (size_t i = 0; i < fv.size(); ++i) basis_mat.at(static_cast<int>(i), static_cast<int>(bcol)) = fv[i];
        }
        Matrix induced(f, static_cast<int>(basis1.size()), static_cast<int>(basis0.size()));
        for (size_t c = 0; c < cols.size(); ++c) {
            Matrix rhsm(f, static_cast<int>(flat_len), 1);
            for (size_t i = 0; i < cols[c].size(); ++i) rhsm.at(static_cast<int>(i), 0) = cols[c][i];
            auto coords = solve_linear(basis_mat, rhsm);
            if (!coords)
                throw StructuralError("brute_ext_torsion: precomposed map not in the target Hom space");
            for (size_t i = 0; i < basis1.size(); ++i)
                induced.at(static_cast<int>(i), static_cast<int>(c)) = coords->at(static_cast<int>(i), 0);
        }
        int rk = (induced.rows() == 0 || induced.cols() == 0) ? 0 : rank(induced);
        out.h0.set_dim(shift, static_cast<int>(basis0.size()) - rk);
        out.h1.set_dim(shift, static_cast<int>(basis1.size()) - rk);
    }
    return out;
}

Report stabilization_check(const std::string& name,
                           const std::function<std::map<int, int>(const DegreeWindow&)>& dims_at,
                           const DegreeWindow& w, int growth, int margin) {
    Report rep;
    rep.name = "stabilization: " + name;
    DegreeWindow interior = w.interior(margin);
    std::map<int, int> base = dims_at(w);
    std::map<int, int> grown = dims_at(w.grown(growth));
    nlohmann::json table = nlohmann::json::array();
    for (int d = interior.lo; d <= interior.hi; ++d) {
        int bd = base.count(d) ? base.at(d) : 0;
        int gd = grown.count(d) ? grown.at(d) : 0;
        table.push_back({{"degree", d}, {"dim", bd}, {"dim_grown", gd}});
        if (bd != gd) {
            rep.fail("unstable at degree " + std::to_string(d) + ": " + std::to_string(bd) + " vs " +
                     std::to_string(gd));
            break;
        }
    }
    rep.detail["per_degree"] = std::move(table);
    rep.detail["window"] = {w.lo, w.hi};
    rep.detail["growth"] = growth;
    rep.detail["margin"] = margin;
    return rep;
}

Report compare(const AdmissibleModule& symbolic, const GradedSpace& brute, const DegreeWindow& w, int margin,
               const Field& f) {
    Report rep;
    rep.name = "compare " + symbolic.to_string();
    Realization rs = realize_module(symbolic, w, f);
    DegreeWindow interior = w.interior(margin);
    bool has_tail = false;
    for (const Atom& a : symbolic.summands())
        if (a.kind == AtomKind::Tail) has_tail = true;
    nlohmann::json table = nlohmann::json::array();
    for (int d = interior.lo; d <= interior.hi; ++d) {
        int sd = rs.space.dim(d), bd = brute.dim(d);
        table.push_back({{"degree", d}, {"symbolic", sd}, {"brute", bd}});
        if (sd != bd) rep.fail("mismatch at degree " + std::to_string(d));
    }
    rep.detail["per_degree"] = std::move(table);
    if (has_tail) rep.detail["note"] = "Tail summands are shadow-invisible, certified symbolically";
    return rep;
}

} // namespace puncture
