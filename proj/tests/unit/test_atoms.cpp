#include <doctest.h>

#include "puncture/atoms.hpp"

using namespace puncture;

TEST_CASE("atom rendering and parsing round-trip") {
    for (const char* s : {"F(2)", "F(-3)", "L", "L(1)", "PS(0)", "LS", "LS(-2)", "Q(0)", "T(3,-1)"}) {
        Atom a = Atom::parse(s);
        CHECK(a.to_string() == s);
    }
    CHECK(Atom::parse("L(0)").to_string() == "L");
    CHECK(AdmissibleModule::parse("F(0)+T(2,0)").to_string() == "F(0) + T(2,0)");
    CHECK(AdmissibleModule::parse("0").is_zero());
    CHECK_THROWS_AS(Atom::parse("T(0,1)"), StructuralError);
    CHECK_THROWS_AS(Atom::parse("X(1)"), StructuralError);
    CHECK_THROWS_AS(Atom::parse("F"), StructuralError);
}

TEST_CASE("module equality is order-independent") {
    AdmissibleModule a = AdmissibleModule::parse("F(0)+T(2,0)");
    AdmissibleModule b = AdmissibleModule::parse("T(2,0)+F(0)");
    CHECK(a == b);
    CHECK(a != AdmissibleModule::parse("F(1)+T(2,0)"));
}

TEST_CASE("realize_module produces the documented shadows") {
    Field q = Field::rationals();

    SUBCASE("Free(0) on [-3,3]") {
        Realization r = realize_module(AdmissibleModule::parse("F(0)"), DegreeWindow(-3, 3), q);
        for (int d = -3; d <= 3; ++d) CHECK(r.space.dim(d) == (d >= 0 ? 1 : 0));
    }
    SUBCASE("Laurent sees every degree") {
        Realization r = realize_module(AdmissibleModule::parse("L"), DegreeWindow(-2, 2), q);
        for (int d = -2; d <= 2; ++d) CHECK(r.space.dim(d) == 1);
    }
    SUBCASE("Tail is shadow-invisible") {
        Realization r = realize_module(AdmissibleModule::parse("Q(0)"), DegreeWindow(-5, 5), q);
        for (int d = -5; d <= 5; ++d) CHECK(r.space.dim(d) == 0);
    }
    SUBCASE("torsion occupies k..k+m-1 and the t-action truncates at the top") {
        Realization r = realize_module(AdmissibleModule::parse("T(3,-1)"), DegreeWindow(-4, 4), q);
        for (int d = -4; d <= 4; ++d) CHECK(r.space.dim(d) == ((d >= -1 && d <= 1) ? 1 : 0));
        CHECK(r.t_action.block(-1).at(0, 0).is_one());
        CHECK(r.t_action.block(0).at(0, 0).is_one());
        CHECK(r.t_action.block(1).rows() == 0); // t kills the top
    }
    SUBCASE("dims add over direct sums") {
        DegreeWindow w(-4, 4);
        AdmissibleModule sum = AdmissibleModule::parse("F(1)+L+T(2,-2)+PS(0)");
        Realization rs = realize_module(sum, w, q);
        int expect[9];
        for (int d = -4; d <= 4; ++d) {
            expect[d + 4] = 0;
            for (const Atom& a : sum.summands()) expect[d + 4] += a.dim_at(d);
            CHECK(rs.space.dim(d) == expect[d + 4]);
        }
    }
}

TEST_CASE("shift bookkeeping") {
    Field q = Field::rationals();
    CHECK(shift_atom(AdmissibleModule::parse("F(2)"), 3) == AdmissibleModule::parse("F(5)"));
    CHECK(shift_atom(AdmissibleModule::zero(), 7).is_zero());

    // realize(shift(M,k), W) equals realize(M, W-k) shifted
    AdmissibleModule m = AdmissibleModule::parse("F(0)");
    DegreeWindow w(-4, 4);
    Realization shifted = realize_module(shift_atom(m, 2), w, q);
    Realization base = realize_module(m, DegreeWindow(-6, 2), q);
    for (int d = -4; d <= 4; ++d) CHECK(shifted.space.dim(d) == base.space.dim(d - 2));
}

TEST_CASE("morphism validation follows the Hom table") {
    Field q = Field::rationals();
    auto entry_ok = [&](const char* src, const char* tgt, const char* e) {
        return validate_entry(Atom::parse(src), Atom::parse(tgt), RatFunc::parse(q, e)).ok;
    };
    CHECK(entry_ok("F(0)", "F(0)", "t^3"));
    CHECK(!entry_ok("F(0)", "F(0)", "t^-1"));
    CHECK(entry_ok("F(0)", "LS", "1/(1-t)"));
    CHECK(entry_ok("F(0)", "L", "1/(1-t)")); // any rational scalar per the table
    CHECK(entry_ok("L", "L", "t^-4 + t"));
    CHECK(!entry_ok("L", "L", "1/(1-t)"));
    CHECK(!entry_ok("L", "T(2,0)", "1"));
    CHECK(!entry_ok("T(2,0)", "F(0)", "1"));
    CHECK(entry_ok("T(2,0)", "T(3,0)", "t"));
    CHECK(!entry_ok("T(2,0)", "T(3,0)", "1")); // needs valuation >= 1
    CHECK(entry_ok("Q(0)", "Q(0)", "t^-1"));
    CHECK(!entry_ok("Q(0)", "L", "1"));

    ValidationReport viol = validate_entry(Atom::parse("L"), Atom::parse("F(0)"), RatFunc::one(q));
    CHECK(!viol.ok);
    CHECK(viol.message.find("H0(RHom(L, F)) = 0") != std::string::npos);

    // violations name the entry
    CHECK_THROWS_WITH_AS(AtomMorphism(q, AdmissibleModule::parse("L"), AdmissibleModule::parse("F(0)"),
                                      {{RatFunc::one(q)}}),
                         doctest::Contains("entry (0,0)"), StructuralError);
}

TEST_CASE("entries into torsion reduce mod t^m") {
    Field q = Field::rationals();
    AtomMorphism f(q, AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("T(2,0)"));
    f.set_entry(0, 0, RatFunc::parse(q, "1 + t + t^2 + t^3"));
    CHECK(f.entry(0, 0) == RatFunc::parse(q, "1 + t"));
    f.set_entry(0, 0, RatFunc::parse(q, "t^5"));
    CHECK(f.entry(0, 0).is_zero());
    // series entries reduce to their truncation
    f.set_entry(0, 0, RatFunc::parse(q, "1/(1-t)"));
    CHECK(f.entry(0, 0) == RatFunc::parse(q, "1 + t"));
}

TEST_CASE("valid morphisms compose to valid morphisms") {
    Field q = Field::rationals();
    AtomMorphism a(q, AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("F(1)"));
    a.set_entry(0, 0, RatFunc::parse(q, "t^2"));
    AtomMorphism b(q, AdmissibleModule::parse("F(1)"), AdmissibleModule::parse("L"));
    b.set_entry(0, 0, RatFunc::parse(q, "t^-3"));
    AtomMorphism c = compose(b, a);
    CHECK(validate_morphism(c).ok);
    CHECK(c.entry(0, 0) == RatFunc::parse(q, "t^-1"));

    AtomMorphism d(q, AdmissibleModule::parse("L"), AdmissibleModule::parse("LS"));
    d.set_entry(0, 0, RatFunc::parse(q, "1/(1-t)"));
    CHECK(validate_morphism(compose(d, c)).ok);
}

TEST_CASE("realize_morphism expands entries as Laurent series") {
    Field q = Field::rationals();

    SUBCASE("t * id on Free(0) is the shift map with identity blocks") {
        AtomMorphism f(q, AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("F(0)"));
        f.set_entry(0, 0, RatFunc::parse(q, "t"));
        auto comps = realize_morphism(f, DegreeWindow(0, 4));
        REQUIRE(comps.size() == 1);
        REQUIRE(comps.count(1) == 1);
        for (int d = 0; d <= 3; ++d) CHECK(comps.at(1).block(d).at(0, 0).is_one());
    }

    SUBCASE("geometric series coefficient vector") {
        AtomMorphism f(q, AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("LS"));
        f.set_entry(0, 0, RatFunc::parse(q, "1/(1-t)"));
        auto comps = realize_morphism(f, DegreeWindow(0, 3));
        // the generator in degree 0 maps to (1,1,1,1) across degrees 0..3
        for (int s = 0; s <= 3; ++s) {
            REQUIRE(comps.count(s) == 1);
            CHECK(comps.at(s).block(0).at(0, 0).is_one());
        }
    }

    SUBCASE("zero maps realize to no blocks") {
        AtomMorphism f(q, AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("F(0)"));
        CHECK(realize_morphism(f, DegreeWindow(-3, 3)).empty());
    }

    SUBCASE("homogeneous degree-0 realization commutes with t on the margin-1 interior") {
        AtomMorphism f(q, AdmissibleModule::parse("F(1)"), AdmissibleModule::parse("F(0)"));
        f.set_entry(0, 0, RatFunc::parse(q, "t"));
        DegreeWindow w(-4, 4);
        GradedMap flat = realize_morphism_flat(f, w);
        Realization rs = realize_module(AdmissibleModule::parse("F(1)"), w, q);
        Realization rt = realize_module(AdmissibleModule::parse("F(0)"), w, q);
        GradedMap lhs = compose(rt.t_action, flat);
        GradedMap rhs = compose(flat, rs.t_action);
        for (int d = -3; d <= 2; ++d) CHECK(lhs.block(d) == rhs.block(d));
    }

    SUBCASE("mixed-degree morphisms refuse the flat realization") {
        AtomMorphism f(q, AdmissibleModule::parse("F(0)"), AdmissibleModule::parse("F(0)"));
        f.set_entry(0, 0, RatFunc::parse(q, "1 + t"));
        CHECK_THROWS_AS(realize_morphism_flat(f, DegreeWindow(0, 3)), StructuralError);
    }
}

TEST_CASE("shadow exactness for registered short exact sequences") {
    // dim(middle) = dim(sub) + dim(quotient) degreewise, Tail excluded
    Field q = Field::rationals();
    DegreeWindow w(-6, 6);
    struct Seq {
        const char *sub, *middle, *quot;
    };
    for (const Seq& s : {Seq{"F(2)", "F(0)", "T(2,0)"}, Seq{"F(3)", "F(1)", "T(2,1)"},
                         Seq{"F(0)", "F(0)+T(3,-1)", "T(3,-1)"}, Seq{"T(1,0)", "T(2,0)", "T(1,1)"}}) {
        Realization sub = realize_module(AdmissibleModule::parse(s.sub), w, q);
        Realization mid = realize_module(AdmissibleModule::parse(s.middle), w, q);
        Realization quo = realize_module(AdmissibleModule::parse(s.quot), w, q);
        for (int d = -5; d <= 5; ++d) CHECK(mid.space.dim(d) == sub.space.dim(d) + quo.space.dim(d));
    }
}
