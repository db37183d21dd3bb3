#include <doctest.h>

#include "puncture/functors.hpp"

using namespace puncture;

TEST_CASE("localize follows the atom rules and is idempotent") {
    CHECK(localize(AdmissibleModule::parse("F(0)")) == AdmissibleModule::parse("L"));
    CHECK(localize(AdmissibleModule::parse("T(3,1)")).is_zero());
    CHECK(localize(AdmissibleModule::parse("F(0)+T(2,0)")) == AdmissibleModule::parse("L"));
    CHECK(localize(AdmissibleModule::parse("PS(2)")) == AdmissibleModule::parse("LS(2)"));
    CHECK(localize(AdmissibleModule::parse("Q(1)")) == AdmissibleModule::parse("Q(1)"));

    for (const char* m : {"F(0)", "F(-3)+L(2)", "T(2,0)+LS", "PS(1)+F(4)+T(1,-1)", "Q(0)+F(2)"}) {
        AdmissibleModule mod = AdmissibleModule::parse(m);
        CHECK(localize(localize(mod)) == localize(mod));
    }
}

TEST_CASE("right_adj returns the two-term tower complex") {
    Field q = Field::rationals();
    SUBCASE("Free(0) gives Tail(0)[-1]") {
        Complex c = right_adj(AdmissibleModule::parse("F(0)"), q);
        CHECK(c.term(0).is_zero());
        CHECK(c.term(1) == AdmissibleModule::parse("Q(0)"));
    }
    SUBCASE("Laurent is its own right adjoint image") {
        Complex c = right_adj(AdmissibleModule::parse("L"), q);
        CHECK(c.term(0) == AdmissibleModule::parse("L"));
        CHECK(c.term(1).is_zero());
    }
    SUBCASE("torsion dies") { CHECK(right_adj(AdmissibleModule::parse("T(2,0)"), q).is_zero()); }
    SUBCASE("unsupported targets propagate") {
        CHECK_THROWS_AS(right_adj(AdmissibleModule::parse("PS(0)"), q), CalculusError);
    }
}

TEST_CASE("unit maps and their naturality") {
    Field q = Field::rationals();
    SUBCASE("Free(0) -> Laurent(0) with entry 1") {
        AtomMorphism u = unit_map(AdmissibleModule::parse("F(0)"), q);
        CHECK(u.target() == AdmissibleModule::parse("L"));
        CHECK(u.entry(0, 0).is_polynomial());
        CHECK(u.entry(0, 0) == RatFunc::one(q));
    }
    SUBCASE("torsion maps to nothing") {
        AtomMorphism u = unit_map(AdmissibleModule::parse("T(2,0)"), q);
        CHECK(u.target().is_zero());
        CHECK(u.is_zero());
    }
    SUBCASE("naturality u o f = localize(f) o u, exactly") {
        // f = t^2 : F(2) -> F(0)
        AdmissibleModule src = AdmissibleModule::parse("F(2)"), tgt = AdmissibleModule::parse("F(0)");
        AtomMorphism f(q, src, tgt);
        f.set_entry(0, 0, RatFunc::parse(q, "t^2"));
        AtomMorphism loc_f(q, localize(src), localize(tgt));
        loc_f.set_entry(0, 0, RatFunc::parse(q, "t^2"));
        AtomMorphism lhs = compose(unit_map(tgt, q), f);
        AtomMorphism rhs = compose(loc_f, unit_map(src, q));
        CHECK(lhs == rhs);

        // and for a mixed module with a torsion summand
        AdmissibleModule msrc = AdmissibleModule::parse("F(1)+T(2,0)");
        AtomMorphism g(q, msrc, tgt);
        g.set_entry(0, 0, RatFunc::parse(q, "t"));
        AtomMorphism loc_g(q, localize(msrc), localize(tgt));
        loc_g.set_entry(0, 0, RatFunc::parse(q, "t"));
        CHECK(compose(unit_map(tgt, q), g) == compose(loc_g, unit_map(msrc, q)));
    }
}

TEST_CASE("torsion_part computes the fiber of the unit") {
    Field q = Field::rationals();
    DegreeWindow w(-6, 6);

    SUBCASE("torsion is its own torsion part") {
        Complex c = torsion_part(AdmissibleModule::parse("T(3,-1)"), q);
        auto coh = cohomology(c);
        CHECK(coh.at(0) == AdmissibleModule::parse("T(3,-1)"));
    }
    SUBCASE("Free(0): shadow dims 1 in negative degrees, one step up") {
        Complex c = torsion_part(AdmissibleModule::parse("F(0)"), q);
        auto coh = shadow_cohomology(realize(c, w));
        for (int d = -4; d <= 4; ++d) {
            CHECK(coh.at(0).dim(d) == 0);
            CHECK(coh.at(1).dim(d) == (d < 0 ? 1 : 0));
        }
    }
    SUBCASE("Laurent gives an acyclic complex") {
        Complex c = torsion_part(AdmissibleModule::parse("L"), q);
        auto coh = cohomology(c);
        for (const auto& [n, m] : coh) CHECK(m.is_zero());
    }
}

TEST_CASE("triangle Euler characteristics add up") {
    Field q = Field::rationals();
    DegreeWindow w(-7, 7);
    for (const char* s : {"F(0)", "F(-2)", "T(3,0)", "L(1)", "LS", "PS(0)", "Q(2)", "F(1)+T(2,-1)"}) {
        AdmissibleModule m = AdmissibleModule::parse(s);
        Complex tp = torsion_part(m, q);
        auto coh = shadow_cohomology(realize(tp, w));
        Realization rm = realize_module(m, w, q);
        Realization rl = realize_module(localize(m), w, q);
        for (int d = -5; d <= 5; ++d) {
            int chi = 0;
            for (const auto& [n, space] : coh) chi += (n % 2 == 0 ? 1 : -1) * space.dim(d);
            CHECK(chi + rl.space.dim(d) == rm.space.dim(d));
        }
    }
}

TEST_CASE("verify_adjunction on the documented pairs") {
    for (const Field& f : {Field::rationals(), Field::prime(65537)}) {
        DegreeWindow w(-8, 8);
        CHECK(verify_adjunction(AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("L"), w, 2, f).pass);
        CHECK(verify_adjunction(AdmissibleModule::parse("T(2,0)"), AdmissibleModule::parse("L"), w, 2, f).pass);
        CHECK(verify_adjunction(AdmissibleModule::parse("F(3)"), AdmissibleModule::parse("LS"), w, 2, f).pass);
        CHECK_THROWS_AS(verify_adjunction(AdmissibleModule::parse("L"), AdmissibleModule::parse("L"), w, 2, f),
                        StructuralError);
    }
}
