#include <doctest.h>

#include "puncture/rab.hpp"

using namespace puncture;

namespace {

RabClass monomial_class(const Field& f, int g_exp, std::optional<int> f_exp) {
    AdmissibleModule c = AdmissibleModule::parse("F(0)");
    AdmissibleModule lc = localize(c);
    AtomMorphism g(f, lc, lc);
    g.set_entry(0, 0, RatFunc::t_power(f, g_exp));
    std::vector<std::vector<TailClass>> fm(1, std::vector<TailClass>(1, TailClass(f)));
    if (f_exp)
        fm[0][0] = TailClass::from(RatFunc::t_power(f, *f_exp) / (RatFunc::one(f) - RatFunc::t_power(f, 1)));
    return RabClass(c, c, std::move(fm), std::move(g));
}

// test-only oracle: an eventually-constant diagonal cochain on the
// infinite resolution, r_n |-> c t^j for n <= -1-cut, with its class
// read off through Sigma
struct DiagonalFamily {
    Scalar c;
    int j;
    int cut;

    TailClass tail_class(const Field& f) const {
        RatFunc geo = RatFunc::t_power(f, j + cut) / (RatFunc::one(f) - RatFunc::t_power(f, 1));
        return TailClass::from(RatFunc::constant(c) * geo);
    }
    DiagonalFamily act_left(int a) const { return {c, j + a, cut}; }
    DiagonalFamily compose_right(int b) const { return {c, j, std::max(0, cut + b)}; }
};

} // namespace

TEST_CASE("TailClass canonical forms") {
    Field q = Field::rationals();

    SUBCASE("polynomial and Laurent-polynomial classes vanish") {
        CHECK(TailClass::from(RatFunc::parse(q, "t^5")).is_zero());
        CHECK(TailClass::from(RatFunc::parse(q, "1 + t^2")).is_zero());
        CHECK(TailClass::from(RatFunc::parse(q, "t^-3 + 1")).is_zero());
    }
    SUBCASE("genuine series classes survive and normalize") {
        TailClass g = TailClass::from(RatFunc::parse(q, "1/(1-t)"));
        CHECK(!g.is_zero());
        CHECK(TailClass::from(RatFunc::parse(q, "t^4/(1-t)")) == g); // differ by a polynomial
        CHECK(TailClass::from(RatFunc::parse(q, "1/(t^2*(1-t))")) == g); // pole resolved by t-inverse
    }
    SUBCASE("the geometric class is a t-eigenvector") {
        TailClass g = TailClass::from(RatFunc::parse(q, "1/(1-t)"));
        CHECK(g.acted_by(RatFunc::parse(q, "t")) == g);
        CHECK(g.acted_by(RatFunc::parse(q, "t^-1")) == g);
        TailClass even = TailClass::from(RatFunc::parse(q, "1/(1-t^2)"));
        CHECK(even.acted_by(RatFunc::parse(q, "t")) != even);
        CHECK(even.acted_by(RatFunc::parse(q, "t")).acted_by(RatFunc::parse(q, "t^-1")) == even);
    }
    SUBCASE("series-coefficient oracle for the action") {
        // the class action agrees with the raw Laurent product beyond
        // the polynomial part it drops
        for (const char* tau_s : {"1/(1-t)", "t/(1-t^2)", "(1+t)/(1 - t - t^2)"}) {
            for (const char* gamma_s : {"t^2", "t^-2", "3*t^-1 + t^3", "1 - t"}) {
                RatFunc tau = RatFunc::parse(q, tau_s);
                RatFunc gamma = RatFunc::parse(q, gamma_s);
                TailClass acted = TailClass::from(tau).acted_by(gamma);
                RatFunc raw = gamma * tau;
                for (int e = 12; e <= 20; ++e) CHECK(acted.series_coeff(e) == raw.series_coeff(e));
            }
        }
    }
}

TEST_CASE("extension witness: obstruction holds, zero control splits") {
    for (const Field& f : {Field::rationals(), Field::prime(10007)}) {
        SUBCASE("smallest configured case N=3, W=[0,4], margin 1") {
            Report rep = extension_witness(f, 3, DegreeWindow(0, 4), 1);
            CHECK(rep.pass);
            CHECK(rep.detail["delta_obstructed"] == true);
            CHECK(rep.detail["zero_control_splits"] == true);
        }
        SUBCASE("configured case N=6, W=[0,8], margin 2") {
            Report rep = extension_witness(f, 6, DegreeWindow(0, 8), 2);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("rab_complex: the example of the example") {
    Field q = Field::rationals();
    AdmissibleModule f0 = AdmissibleModule::parse("F(0)");
    RabComplex rc = rab_complex(f0, f0, q);

    // cone term: Tail glued to Laurent
    CHECK(rc.complex.term(0) == AdmissibleModule::parse("Q(0)+L"));
    REQUIRE(rc.complex.marks().size() == 1);

    // certified identification
    REQUIRE(rc.cohomology.count(0));
    CHECK(rc.cohomology.at(0) == AdmissibleModule::parse("LS"));

    // shadow dims identically 1 on the interior
    auto coh = shadow_cohomology(realize(rc.complex, DegreeWindow(-8, 8)));
    for (int d = -6; d <= 6; ++d) CHECK(coh.at(0).dim(d) == 1);
}

TEST_CASE("rab_complex degenerates on torsion and shifts with the atoms") {
    Field q = Field::rationals();
    SUBCASE("torsion kills the cone") {
        RabComplex rc = rab_complex(AdmissibleModule::parse("T(2,0)"), AdmissibleModule::parse("F(0)"), q);
        CHECK(rc.complex.is_zero());
        for (const auto& [n, m] : rc.cohomology) CHECK(m.is_zero());
        RabComplex rc2 = rab_complex(AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("T(2,0)"), q);
        CHECK(rc2.complex.is_zero());
    }
    SUBCASE("(F(a), F(b)) identifies LS(b-a)") {
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                RabComplex rc = rab_complex(AdmissibleModule::of(Atom::free(a)), AdmissibleModule::of(Atom::free(b)), q);
                CHECK(rc.cohomology.at(0) == AdmissibleModule::of(Atom::laurent_series(b - a)));
            }
    }
    SUBCASE("sums produce one class per Free pair") {
        RabComplex rc = rab_complex(AdmissibleModule::parse("F(0)+F(1)"), AdmissibleModule::parse("F(0)+T(2,0)"), q);
        CHECK(rc.complex.marks().size() == 2);
        CHECK(rc.cohomology.at(0) == AdmissibleModule::parse("LS+LS(-1)"));
    }
    SUBCASE("non-perfect arguments are rejected") {
        CHECK_THROWS_AS(rab_complex(AdmissibleModule::parse("L"), AdmissibleModule::parse("F(0)"), q),
                        StructuralError);
    }
}

TEST_CASE("remark form agrees with the theorem form") {
    Field q = Field::rationals();
    DegreeWindow w(-8, 8);
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            AdmissibleModule ca = AdmissibleModule::of(Atom::free(a));
            AdmissibleModule db = AdmissibleModule::of(Atom::free(b));
            RabComplex rc = rab_complex(ca, db, q);
            Complex rem = remark_form(ca, db, q);
            auto ch_rab = shadow_cohomology(realize(rc.complex, w));
            auto ch_rem = shadow_cohomology(realize(rem, w));
            for (int d = -6; d <= 6; ++d) {
                int lhs = ch_rab.count(0) ? ch_rab.at(0).dim(d) : 0;
                int rhs = ch_rem.count(0) ? ch_rem.at(0).dim(d) : 0;
                CHECK(lhs == rhs);
            }
            auto sym = cohomology(rem, CohomologyContext{extension_certified(q)});
            CHECK(sym.at(0) == rc.cohomology.at(0));
        }
    SUBCASE("torsion cases vanish on both sides") {
        CHECK(remark_form(AdmissibleModule::parse("T(2,0)"), AdmissibleModule::parse("F(0)"), q).is_zero());
        CHECK(remark_form(AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("T(2,0)"), q).is_zero());
    }
}

TEST_CASE("class composition laws") {
    Field q = Field::rationals();

    SUBCASE("the monomial case t^3 o t^2 = t^5") {
        RabClass x0 = monomial_class(q, 2, std::nullopt);
        RabClass x1 = monomial_class(q, 3, std::nullopt);
        CHECK(compose_classes(x1, x0) == monomial_class(q, 5, std::nullopt));
    }
    SUBCASE("units act as identities") {
        RabClass unit = unit_class(AdmissibleModule::parse("F(0)"), q);
        for (int a = -2; a <= 2; ++a) {
            RabClass x = monomial_class(q, a, a >= 0 ? std::optional<int>(a) : std::nullopt);
            CHECK(compose_classes(unit, x) == x);
            CHECK(compose_classes(x, unit) == x);
        }
        CHECK(compose_classes(unit, unit) == unit);
        CHECK(unit_class(AdmissibleModule::parse("T(3,0)"), q).is_zero());
    }
    SUBCASE("associativity on a small monomial grid") {
        std::vector<RabClass> grid;
        for (int a = -2; a <= 2; ++a) {
            grid.push_back(monomial_class(q, a, std::nullopt));
            grid.push_back(monomial_class(q, a, 1));
        }
        for (const RabClass& x2 : grid)
            for (const RabClass& x1 : grid)
                for (const RabClass& x0 : grid)
                    CHECK(compose_classes(compose_classes(x2, x1), x0) ==
                          compose_classes(x2, compose_classes(x1, x0)));
    }
    SUBCASE("matrix-shaped objects compose blockwise") {
        AdmissibleModule c = AdmissibleModule::parse("F(0)+F(1)");
        AdmissibleModule lc = localize(c);
        AtomMorphism g(q, lc, lc);
        g.set_entry(0, 0, RatFunc::parse(q, "t"));
        g.set_entry(0, 1, RatFunc::parse(q, "1"));
        g.set_entry(1, 1, RatFunc::parse(q, "t^-1"));
        std::vector<std::vector<TailClass>> fm(2, std::vector<TailClass>(2, TailClass(q)));
        fm[0][1] = TailClass::from(RatFunc::parse(q, "1/(1-t)"));
        RabClass x(c, c, fm, g);
        RabClass unit = unit_class(c, q);
        CHECK(compose_classes(unit, x) == x);
        CHECK(compose_classes(x, unit) == x);
        RabClass sq = compose_classes(x, x);
        CHECK(sq.g.entry(0, 0) == RatFunc::parse(q, "t^2"));
        CHECK(sq.g.entry(0, 1) == RatFunc::parse(q, "t + t^-1"));
    }
    SUBCASE("endpoint mismatches are rejected") {
        RabClass a = unit_class(AdmissibleModule::parse("F(0)"), q);
        RabClass b = unit_class(AdmissibleModule::parse("F(1)"), q);
        CHECK_THROWS_AS(compose_classes(a, b), StructuralError);
    }
}

TEST_CASE("class composition matches the diagonal-family oracle") {
    Field q = Field::rationals();
    // (0, t^a) acting on a family class from the left multiplies the
    // entries; composing with (0, t^b) on the right reindexes with a cut
    for (int j = 0; j <= 2; ++j)
        for (int a = 0; a <= 3; ++a)
            for (int b = -2; b <= 2; ++b) {
                DiagonalFamily fam{Scalar(q, 1), j, 0};
                TailClass via_family_left = fam.act_left(a).tail_class(q);
                TailClass via_class_left = fam.tail_class(q).acted_by(RatFunc::t_power(q, a));
                CHECK(via_family_left == via_class_left);
                TailClass via_family_right = fam.compose_right(b).tail_class(q);
                TailClass via_class_right = fam.tail_class(q).acted_by(RatFunc::t_power(q, b));
                CHECK(via_family_right == via_class_right);
            }
}

TEST_CASE("bilinearity of composition") {
    Field q = Field::rationals();
    RabClass x = monomial_class(q, 1, 2);
    RabClass y = monomial_class(q, -1, 0);
    RabClass z = monomial_class(q, 2, 1);
    Scalar two(q, 2), three(q, 3);
    RabClass lin = add_classes(scale_class(x, two), scale_class(y, three));
    CHECK(compose_classes(lin, z) ==
          add_classes(scale_class(compose_classes(x, z), two), scale_class(compose_classes(y, z), three)));
    CHECK(compose_classes(z, lin) ==
          add_classes(scale_class(compose_classes(z, x), two), scale_class(compose_classes(z, y), three)));
}
