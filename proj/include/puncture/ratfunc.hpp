#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puncture/scalar.hpp"

namespace puncture {

/// Dense polynomial in t over the configured field, coefficients in
/// ascending degree, trailing zeros trimmed (zero polynomial = empty).
class Poly {
  public:
    explicit Poly(const Field& f) : field_(f) {}
    Poly(const Field& f, std::vector<Scalar> coeffs);

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly constant(const Scalar& c);
    /// c * t^e, e >= 0
    static Poly monomial(const Scalar& c, int e);
    static Poly t_power(const Field& f, int e) { return monomial(Scalar::one(f), e); }

    const Field& field() const { return field_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    /// Lowest nonzero exponent; -1 for the zero polynomial.
    int valuation() const;
    Scalar coeff(int e) const;
    Scalar leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return coeffs_size_eq(o); }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Quotient and remainder with deg(r) < deg(d).
    static std::pair<Poly, Poly> divmod(const Poly& n, const Poly& d);
    /// Monic gcd.
    static Poly gcd(Poly a, Poly b);

    Poly scaled(const Scalar& c) const;
    Poly shifted(int e) const; // multiply by t^e, e >= 0
    Poly monic() const;

    std::string to_string() const;

  private:
    bool coeffs_size_eq(const Poly& o) const;
    void trim();
    Field field_;
    std::vector<Scalar> coeffs_;
};

/// A rational function in t: num/den with den != 0, gcd(num, den) = 1
/// and den monic.  Every nonzero denominator factors as t^a * u with
/// u(0) != 0, so every RatFunc has a Laurent expansion at t = 0.
class RatFunc {
  public:
    explicit RatFunc(const Field& f)
        : num_(Poly::zero(f)), den_(Poly::constant(Scalar::one(f))) {}
    RatFunc(Poly num, Poly den);

    static RatFunc zero(const Field& f) { return RatFunc(f); }
    static RatFunc one(const Field& f) { return RatFunc(Poly::constant(Scalar::one(f)), Poly::constant(Scalar::one(f))); }
    static RatFunc from_poly(Poly p);
    static RatFunc constant(const Scalar& c) { return from_poly(Poly::constant(c)); }
    /// c * t^e with e of either sign.
    static RatFunc monomial(const Scalar& c, int e);
    static RatFunc t_power(const Field& f, int e) { return monomial(Scalar::one(f), e); }

    const Field& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    /// num / t^a form, i.e. an element of K[t, 1/t].
    bool is_laurent_polynomial() const;
    /// (coefficient, exponent) when num and den are both monomials.
    std::optional<std::pair<Scalar, int>> as_monomial() const;

    /// Order of vanishing at t = 0 (negative for poles); INT_MIN for 0.
    int valuation() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inverse() const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Laurent coefficients of the expansion at t = 0 for exponents in
    /// [lo, hi].
    std::map<int, Scalar> series_coeffs(int lo, int hi) const;
    Scalar series_coeff(int e) const;

    /// Euclidean split num/den = q + r/den with deg r < deg den.
    /// `polynomial_part` is q; `proper_part` is r/den.
    RatFunc polynomial_part() const;
    RatFunc proper_part() const;

    std::string to_string() const;

    /// Parse expressions like "t^2", "1/(1-t)", "3/2*t + t^-1".
    static RatFunc parse(const Field& f, const std::string& text);

  private:
    void normalize();
    Poly num_, den_;
};

} // namespace puncture
