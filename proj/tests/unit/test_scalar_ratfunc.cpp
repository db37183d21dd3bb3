#include <doctest.h>

#include "puncture/ratfunc.hpp"

using namespace puncture;

TEST_CASE("field parsing and scalar arithmetic") {
    Field q = Field::rationals();
    Field f5 = Field::prime(5);
    CHECK(Field::parse("q") == q);
    CHECK(Field::parse("fp:10007") == Field::prime(10007));
    CHECK_THROWS_AS(Field::parse("fp:10"), StructuralError);

    Scalar a(q, 2), b(q, 3);
    CHECK((a / b).to_string() == "2/3");
    CHECK((a / b + b / a) == Scalar::from_mpq(q, mpq_class(13, 6)));
    CHECK((-a).to_string() == "-2");
    CHECK_THROWS_AS(a / Scalar::zero(q), StructuralError);
    CHECK_THROWS_AS((void)(a + Scalar(f5, 1)), StructuralError);

    Scalar x(f5, 7);
    CHECK(x.residue() == 2);
    CHECK((x.inverse() * x).is_one());
    CHECK(Scalar(f5, -1).residue() == 4);
}

TEST_CASE("polynomial arithmetic and gcd") {
    Field q = Field::rationals();
    Poly t = Poly::t_power(q, 1);
    Poly one = Poly::constant(Scalar::one(q));
    Poly p = (t + one) * (t + one);     // 1 + 2t + t^2
    CHECK(p.coeff(1) == Scalar(q, 2));
    CHECK(p.degree() == 2);
    auto [quot, rem] = Poly::divmod(p, t + one);
    CHECK(quot == t + one);
    CHECK(rem.is_zero());
    CHECK(Poly::gcd(p, (t + one) * t) == t + one);
    CHECK(Poly::gcd(t * t, (t + one)).degree() == 0); // coprime: unit gcd
    CHECK(p.valuation() == 0);
    CHECK((p * Poly::zero(q)).is_zero());
}

TEST_CASE("rational functions normalize and expand") {
    Field q = Field::rationals();
    RatFunc t = RatFunc::t_power(q, 1);
    RatFunc one = RatFunc::one(q);

    RatFunc r = (t * t + t) / (t + one); // reduces to t
    CHECK(r == t);
    CHECK(r.is_polynomial());

    RatFunc geo = one / (one - t);
    // geometric series oracle: coefficients are identically 1
    for (int e = 0; e <= 6; ++e) CHECK(geo.series_coeff(e).is_one());
    CHECK(geo.series_coeff(-1).is_zero());

    RatFunc lp = t.inverse() * (one + t); // t^-1 + 1, a Laurent polynomial
    CHECK(lp.is_laurent_polynomial());
    CHECK(!lp.is_polynomial());
    CHECK(lp.valuation() == -1);
    CHECK(lp.series_coeff(-1).is_one());
    CHECK(lp.series_coeff(0).is_one());
    CHECK(lp.series_coeff(1).is_zero());

    auto mono = (RatFunc::constant(Scalar(q, 3)) * RatFunc::t_power(q, -2)).as_monomial();
    REQUIRE(mono);
    CHECK(mono->first == Scalar(q, 3));
    CHECK(mono->second == -2);
    CHECK(!geo.as_monomial());

    // polynomial/proper split
    RatFunc mixed = (t * t * t) / (one - t); // t^3/(1-t)
    RatFunc poly_part = mixed.polynomial_part();
    RatFunc proper = mixed.proper_part();
    CHECK(poly_part + proper == mixed);
    CHECK(proper.num().degree() < proper.den().degree());
    CHECK_THROWS_AS(one / RatFunc::zero(q), StructuralError);
}

TEST_CASE("rational function parser") {
    Field q = Field::rationals();
    RatFunc t = RatFunc::t_power(q, 1);
    RatFunc one = RatFunc::one(q);
    CHECK(RatFunc::parse(q, "t^2") == t * t);
    CHECK(RatFunc::parse(q, "1/(1-t)") == one / (one - t));
    CHECK(RatFunc::parse(q, "3/2*t + t^-1") ==
          RatFunc::constant(Scalar::from_mpq(q, mpq_class(3, 2))) * t + t.inverse());
    CHECK(RatFunc::parse(q, "-t^2/(1+t)") == -(t * t) / (one + t));
    CHECK(RatFunc::parse(q, "0").is_zero());
    CHECK(RatFunc::parse(q, "2t") == t + t);
    CHECK_THROWS_AS(RatFunc::parse(q, "t^"), StructuralError);
    CHECK_THROWS_AS(RatFunc::parse(q, "(1+t"), StructuralError);

    // round trip through to_string
    for (const char* s : {"t^2", "1/(1-t)", "(1 + t)/(t^2)", "3/2", "t^-3"}) {
        RatFunc r = RatFunc::parse(q, s);
        CHECK(RatFunc::parse(q, r.to_string()) == r);
    }

    Field f5 = Field::prime(5);
    CHECK(RatFunc::parse(f5, "7*t").as_monomial()->first.residue() == 2);
}

TEST_CASE("series expansion over prime fields matches the rationals") {
    Field q = Field::rationals();
    Field fp = Field::prime(10007);
    RatFunc rq = RatFunc::parse(q, "(1+t)/(1 - t - t^2)");
    RatFunc rp = RatFunc::parse(fp, "(1+t)/(1 - t - t^2)");
    for (int e = 0; e <= 12; ++e) {
        mpq_class c = rq.series_coeff(e).rational();
        CHECK(c.get_den() == 1);
        mpz_class lifted = c.get_num() % 10007;
        if (lifted < 0) lifted += 10007;
        CHECK(rp.series_coeff(e).residue() == lifted.get_ui());
    }
}
