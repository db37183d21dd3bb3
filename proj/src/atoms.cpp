#include "puncture/atoms.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace puncture {

Atom Atom::torsion(int m, int k) {
    if (m < 1) throw StructuralError("Atom: torsion length must be >= 1");
    return {AtomKind::Torsion, k, m};
}

Atom Atom::shifted(int by) const {
    Atom a(*this);
    a.shift += by;
    return a;
}

int Atom::dim_at(int degree) const {
    switch (kind) {
        case AtomKind::Free:
        case AtomKind::PowerSeries:
            return degree >= shift ? 1 : 0;
        case AtomKind::Laurent:
        case AtomKind::LaurentSeries:
            return 1;
        case AtomKind::Tail:
            return 0; // degreewise the sum and the product coincide
        case AtomKind::Torsion:
            return (degree >= shift && degree < shift + length) ? 1 : 0;
    }
    return 0;
}

bool Atom::operator<(const Atom& o) const {
    return std::tuple(static_cast<int>(kind), shift, length) <
           std::tuple(static_cast<int>(o.kind), o.shift, o.length);
}

std::string Atom::to_string() const {
    switch (kind) {
        case AtomKind::Free:
            return "F(" + std::to_string(shift) + ")";
        case AtomKind::Laurent:
            return shift == 0 ? "L" : "L(" + std::to_string(shift) + ")";
        case AtomKind::PowerSeries:
            return "PS(" + std::to_string(shift) + ")";
        case AtomKind::LaurentSeries:
            return shift == 0 ? "LS" : "LS(" + std::to_string(shift) + ")";
        case AtomKind::Tail:
            return "Q(" + std::to_string(shift) + ")";
        case AtomKind::Torsion:
            return "T(" + std::to_string(length) + "," + std::to_string(shift) + ")";
    }
    return "?";
}

namespace {

int parse_int(const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw StructuralError("Atom::parse: expected integer in '" + s + "'");
    return std::stoi(s.substr(start, pos - start));
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

} // namespace

Atom Atom::parse(const std::string& raw) {
    std::string s = strip(raw);
    auto args = [&](const std::string& head) -> std::optional<std::vector<int>> {
        if (s.rfind(head, 0) != 0) return std::nullopt;
        std::string rest = s.substr(head.size());
        if (rest.empty()) return std::vector<int>{};
        if (rest.front() != '(' || rest.back() != ')') return std::nullopt;
        std::vector<int> out;
        size_t pos = 1;
        while (pos < rest.size() - 1) {
            out.push_back(parse_int(rest, pos));
            if (pos < rest.size() - 1) {
                if (rest[pos] != ',') throw StructuralError("Atom::parse: expected ',' in '" + raw + "'");
                ++pos;
            }
        }
        return out;
    };
    // longest heads first so "LS" is not read as "L"
    if (auto a = args("LS")) {
        if (a->size() > 1) throw StructuralError("Atom::parse: LS takes at most one shift");
        return laurent_series(a->empty() ? 0 : (*a)[0]);
    }
    if (auto a = args("PS")) {
        if (a->size() != 1) throw StructuralError("Atom::parse: PS(k) needs a shift");
        return power_series((*a)[0]);
    }
    if (auto a = args("F")) {
        if (a->size() != 1) throw StructuralError("Atom::parse: F(k) needs a shift");
        return free((*a)[0]);
    }
    if (auto a = args("L")) {
        if (a->size() > 1) throw StructuralError("Atom::parse: L takes at most one shift");
        return laurent(a->empty() ? 0 : (*a)[0]);
    }
    if (auto a = args("Q")) {
        if (a->size() != 1) throw StructuralError("Atom::parse: Q(k) needs a shift");
        return tail((*a)[0]);
    }
    if (auto a = args("T")) {
        if (a->size() != 2) throw StructuralError("Atom::parse: T(m,k) needs length and shift");
        return torsion((*a)[0], (*a)[1]);
    }
    throw StructuralError("Atom::parse: cannot read atom '" + raw + "'");
}

AdmissibleModule AdmissibleModule::direct_sum(const AdmissibleModule& o) const {
    std::vector<Atom> s = summands_;
    s.insert(s.end(), o.summands_.begin(), o.summands_.end());
    return AdmissibleModule(std::move(s));
}

AdmissibleModule AdmissibleModule::shifted(int k) const {
    std::vector<Atom> s;
    s.reserve(summands_.size());
    for (const Atom& a : summands_) s.push_back(a.shifted(k));
    return AdmissibleModule(std::move(s));
}

bool AdmissibleModule::operator==(const AdmissibleModule& o) const {
    if (summands_.size() != o.summands_.size()) return false;
    std::vector<Atom> a = summands_, b = o.summands_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

std::string AdmissibleModule::to_string() const {
    if (summands_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < summands_.size(); ++i) {
        if (i) os << " + ";
        os << summands_[i].to_string();
    }
    return os.str();
}

AdmissibleModule AdmissibleModule::parse(const std::string& text) {
    std::string s = strip(text);
    if (s.empty() || s == "0") return zero();
    std::vector<Atom> atoms;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        if (i == s.size() || (s[i] == '+' && depth == 0)) {
            atoms.push_back(Atom::parse(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return AdmissibleModule(std::move(atoms));
}

AdmissibleModule shift_atom(const AdmissibleModule& m, int k) { return m.shifted(k); }

Realization realize_module(const AdmissibleModule& m, const DegreeWindow& w, const Field& f) {
    GradedSpace space(w);
    std::map<int, std::vector<int>> owner;
    for (int d = w.lo; d <= w.hi; ++d) {
        std::vector<int> slots;
        for (size_t i = 0; i < m.size(); ++i)
            if (m.at(i).dim_at(d) == 1) slots.push_back(static_cast<int>(i));
        space.set_dim(d, static_cast<int>(slots.size()));
        owner[d] = std::move(slots);
    }
    GradedMap t(f, space, space, 1);
    for (int d = w.lo; d < w.hi; ++d) {
        const auto& src = owner.at(d);
        const auto& tgt = owner.at(d + 1);
        if (src.empty() || tgt.empty()) continue;
        Matrix block(f, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        bool nonzero = false;
        for (size_t sj = 0; sj < src.size(); ++sj) {
            int atom = src[sj];
            if (!m.at(static_cast<size_t>(atom)).t_connects(d)) continue;
            for (size_t ti = 0; ti < tgt.size(); ++ti)
                if (tgt[ti] == atom) {
                    block.at(static_cast<int>(ti), static_cast<int>(sj)) = Scalar::one(f);
                    nonzero = true;
                }
        }
        if (nonzero) t.set_block(d, std::move(block));
    }
    return Realization{std::move(space), std::move(t), std::move(owner)};
}

// --- morphisms --------------------------------------------------------------

namespace {

bool expandable_nonneg(const RatFunc& v) { return v.is_zero() || v.valuation() >= 0; }

// reduce an entry into Torsion(m, k) to its canonical representative:
// the polynomial of degree < m given by the series truncation
RatFunc reduce_mod_tm(const RatFunc& v, int m, const Field& f) {
    if (v.is_zero()) return v;
    auto coeffs = v.series_coeffs(0, m - 1);
    Poly p(f);
    std::vector<Scalar> c;
    for (int e = 0; e < m; ++e) c.push_back(coeffs.at(e));
    return RatFunc::from_poly(Poly(f, std::move(c)));
}

} // namespace

ValidationReport validate_entry(const Atom& src, const Atom& tgt, const RatFunc& v) {
    auto violate = [&](const std::string& rule) {
        return ValidationReport{false, src.to_string() + " -> " + tgt.to_string() + ": " + rule};
    };
    if (v.is_zero()) return {};
    switch (src.kind) {
        case AtomKind::Free:
            switch (tgt.kind) {
                case AtomKind::Free:
                    if (!v.is_polynomial()) return violate("Hom(F, F) admits polynomial entries only");
                    return {};
                case AtomKind::PowerSeries:
                    if (!expandable_nonneg(v)) return violate("Hom(F, PS) needs a power-series entry (valuation >= 0)");
                    return {};
                case AtomKind::Laurent:
                case AtomKind::LaurentSeries:
                    return {}; // any rational scalar
                case AtomKind::Torsion:
                    if (!expandable_nonneg(v)) return violate("Hom(F, T) needs valuation >= 0");
                    return {};
                case AtomKind::Tail:
                    return violate("maps into Q(k) are registered canonically, entry must be 0");
            }
            break;
        case AtomKind::Laurent:
            switch (tgt.kind) {
                case AtomKind::Free:
                    return violate("H0(RHom(L, F)) = 0");
                case AtomKind::PowerSeries:
                    return violate("H0(RHom(L, PS)) = 0");
                case AtomKind::Laurent:
                    if (!v.is_laurent_polynomial()) return violate("Hom(L, L) admits Laurent polynomial entries only");
                    return {};
                case AtomKind::LaurentSeries:
                    return {};
                case AtomKind::Torsion:
                    return violate("Hom(L, T) = 0 (t acts invertibly on the source, nilpotently on the target)");
                case AtomKind::Tail:
                    return violate("maps into Q(k) are registered canonically, entry must be 0");
            }
            break;
        case AtomKind::PowerSeries:
            switch (tgt.kind) {
                case AtomKind::PowerSeries:
                    if (!expandable_nonneg(v)) return violate("Hom(PS, PS) needs valuation >= 0");
                    return {};
                case AtomKind::LaurentSeries:
                    return {};
                case AtomKind::Torsion:
                    if (!expandable_nonneg(v)) return violate("Hom(PS, T) needs valuation >= 0");
                    return {};
                default:
                    return violate("Hom(PS, -) supports PS, LS, T targets only");
            }
            break;
        case AtomKind::LaurentSeries:
            if (tgt.kind == AtomKind::LaurentSeries) return {};
            return violate("Hom(LS, -) is zero except into LS");
        case AtomKind::Tail:
            if (tgt.kind == AtomKind::Tail) {
                // t acts invertibly on K[[t]]/K[t]
                if (!v.is_laurent_polynomial()) return violate("Hom(Q, Q) admits Laurent polynomial entries only");
                return {};
            }
            return violate("Hom(Q, -) admits only 0 or registered canonical maps");
        case AtomKind::Torsion: {
            if (tgt.kind != AtomKind::Torsion)
                return violate("Hom(T, -) is zero except into torsion");
            int need = std::max(0, tgt.length - src.length);
            if (v.valuation() < need)
                return violate("Hom(T(" + std::to_string(src.length) + "), T(" + std::to_string(tgt.length) +
                               ")) needs valuation >= " + std::to_string(need));
            return {};
        }
    }
    return violate("unsupported pair");
}

AtomMorphism::AtomMorphism(const Field& f, AdmissibleModule source, AdmissibleModule target)
    : field_(f), source_(std::move(source)), target_(std::move(target)) {
    entries_.assign(target_.size(), std::vector<RatFunc>(source_.size(), RatFunc::zero(f)));
}

AtomMorphism::AtomMorphism(const Field& f, AdmissibleModule source, AdmissibleModule target,
                           std::vector<std::vector<RatFunc>> entries)
    : field_(f), source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
    if (entries_.size() != target_.size())
        throw StructuralError("AtomMorphism: row count != target summands");
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].size() != source_.size())
            throw StructuralError("AtomMorphism: column count != source summands in row " + std::to_string(i));
        for (size_t j = 0; j < entries_[i].size(); ++j) {
            const Atom& tgt = target_.at(i);
            if (tgt.kind == AtomKind::Torsion && !entries_[i][j].is_zero() &&
                entries_[i][j].valuation() >= 0)
                entries_[i][j] = reduce_mod_tm(entries_[i][j], tgt.length, field_);
            ValidationReport r = validate_entry(source_.at(j), tgt, entries_[i][j]);
            if (!r.ok)
                throw StructuralError("AtomMorphism: entry (" + std::to_string(i) + "," + std::to_string(j) + ") " +
                                      r.message);
        }
    }
}

AtomMorphism AtomMorphism::identity(const Field& f, const AdmissibleModule& m) {
    AtomMorphism id(f, m, m);
    for (size_t i = 0; i < m.size(); ++i) id.entries_[i][i] = RatFunc::one(f);
    return id;
}

void AtomMorphism::set_entry(size_t i, size_t j, RatFunc v) {
    const Atom& tgt = target_.at(i);
    if (tgt.kind == AtomKind::Torsion && !v.is_zero() && v.valuation() >= 0)
        v = reduce_mod_tm(v, tgt.length, field_);
    ValidationReport r = validate_entry(source_.at(j), tgt, v);
    if (!r.ok)
        throw StructuralError("AtomMorphism: entry (" + std::to_string(i) + "," + std::to_string(j) + ") " + r.message);
    entries_.at(i).at(j) = std::move(v);
}

bool AtomMorphism::is_zero() const {
    for (const auto& row : entries_)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

AtomMorphism AtomMorphism::operator+(const AtomMorphism& o) const {
    if (source_ != o.source_ || target_ != o.target_)
        throw StructuralError("AtomMorphism: sum of maps with different endpoints");
    AtomMorphism r(*this);
    for (size_t i = 0; i < entries_.size(); ++i)
        for (size_t j = 0; j < entries_[i].size(); ++j) r.set_entry(i, j, entries_[i][j] + o.entries_[i][j]);
    return r;
}

AtomMorphism AtomMorphism::operator-() const { return scaled(RatFunc::constant(Scalar(field_, -1))); }

AtomMorphism AtomMorphism::scaled(const RatFunc& c) const {
    AtomMorphism r(*this);
    for (size_t i = 0; i < entries_.size(); ++i)
        for (size_t j = 0; j < entries_[i].size(); ++j) r.set_entry(i, j, entries_[i][j] * c);
    return r;
}

bool AtomMorphism::operator==(const AtomMorphism& o) const {
    if (!(source_ == o.source_) || !(target_ == o.target_)) return false;
    return entries_ == o.entries_;
}

std::string AtomMorphism::to_string() const {
    std::ostringstream os;
    os << source_.to_string() << " -> " << target_.to_string() << " [";
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << "; ";
        for (size_t j = 0; j < entries_[i].size(); ++j) {
            if (j) os << ", ";
            os << entries_[i][j].to_string();
        }
    }
    os << "]";
    return os.str();
}

AtomMorphism compose(const AtomMorphism& g, const AtomMorphism& f) {
    if (!(f.target() == g.source()))
        throw StructuralError("compose: target of first map (" + f.target().to_string() +
                              ") != source of second (" + g.source().to_string() + ")");
    const Field& k = f.field();
    std::vector<std::vector<RatFunc>> entries(g.target().size(), std::vector<RatFunc>(f.source().size(), RatFunc::zero(k)));
    for (size_t i = 0; i < g.target().size(); ++i)
        for (size_t j = 0; j < f.source().size(); ++j) {
            RatFunc acc = RatFunc::zero(k);
            for (size_t m = 0; m < f.target().size(); ++m) acc = acc + g.entry(i, m) * f.entry(m, j);
            entries[i][j] = std::move(acc);
        }
    return AtomMorphism(k, f.source(), g.target(), std::move(entries));
}

ValidationReport validate_morphism(const AtomMorphism& f) {
    for (size_t i = 0; i < f.target().size(); ++i)
        for (size_t j = 0; j < f.source().size(); ++j) {
            ValidationReport r = validate_entry(f.source().at(j), f.target().at(i), f.entry(i, j));
            if (!r.ok) {
                r.message = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") " + r.message;
                return r;
            }
        }
    return {};
}

std::map<int, GradedMap> realize_morphism(const AtomMorphism& f, const DegreeWindow& w) {
    const Field& k = f.field();
    Realization src = realize_module(f.source(), w, k);
    Realization tgt = realize_module(f.target(), w, k);
    int span = w.hi - w.lo;

    std::map<int, GradedMap> out;
    for (size_t i = 0; i < f.target().size(); ++i) {
        const Atom& ta = f.target().at(i);
        if (ta.kind == AtomKind::Tail) continue; // shadow-invisible
        for (size_t j = 0; j < f.source().size(); ++j) {
            const Atom& sa = f.source().at(j);
            if (sa.kind == AtomKind::Tail) continue;
            const RatFunc& e = f.entry(i, j);
            if (e.is_zero()) continue;
            // multiplication element: gen_src = t^{k_src} maps to entry * t^{k_tgt}
            RatFunc mult = e * RatFunc::t_power(k, ta.shift) / RatFunc::t_power(k, sa.shift);
            auto coeffs = mult.series_coeffs(-span, span);
            for (const auto& [s, c] : coeffs) {
                if (c.is_zero()) continue;
                auto it = out.find(s);
                if (it == out.end())
                    it = out.emplace(s, GradedMap(k, src.space, tgt.space, s)).first;
                GradedMap& comp = it->second;
                for (int d = w.lo; d <= w.hi; ++d) {
                    if (!w.contains(d + s)) continue;
                    // locate slots of source atom j at degree d and target atom i at d+s
                    const auto& sslots = src.slot_owner.at(d);
                    const auto& tslots = tgt.slot_owner.at(d + s);
                    int sj = -1, ti = -1;
                    for (size_t p = 0; p < sslots.size(); ++p)
                        if (sslots[p] == static_cast<int>(j)) sj = static_cast<int>(p);
                    for (size_t p = 0; p < tslots.size(); ++p)
                        if (tslots[p] == static_cast<int>(i)) ti = static_cast<int>(p);
                    if (sj < 0 || ti < 0) continue;
                    Matrix block = comp.block(d);
                    block.at(ti, sj) = block.at(ti, sj) + c;
                    comp.set_block(d, std::move(block));
                }
            }
        }
    }
    // drop components that realized to nothing
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

GradedMap realize_morphism_flat(const AtomMorphism& f, const DegreeWindow& w) {
    std::map<int, GradedMap> comps = realize_morphism(f, w);
    const Field& k = f.field();
    Realization src = realize_module(f.source(), w, k);
    Realization tgt = realize_module(f.target(), w, k);
    if (comps.empty()) return GradedMap(k, src.space, tgt.space, 0);
    if (comps.size() > 1 || comps.begin()->first != 0)
        throw StructuralError("realize_morphism_flat: morphism is not homogeneous of internal degree 0");
    return comps.begin()->second;
}

} // namespace puncture
