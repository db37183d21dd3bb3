#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "puncture/errors.hpp"

namespace puncture {

/// The coefficient field: the rationals (default) or a prime field F_p.
class Field {
  public:
    Field() : p_(0) {}
    static Field rationals() { return Field(); }
    static Field prime(std::uint64_t p);

    bool is_rationals() const { return p_ == 0; }
    std::uint64_t characteristic() const { return p_; }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    std::string to_string() const;

    /// Parse "q" or "fp:<prime>".
    static Field parse(const std::string& spec);

  private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_; // 0 means Q
};

/// An exact field element.  Over Q the value is a canonical reduced
/// fraction with positive denominator (GMP keeps that form); over F_p a
/// residue in [0, p).
class Scalar {
  public:
    Scalar() : field_(), q_(0), r_(0) {}
    Scalar(const Field& f, long value);

    static Scalar from_mpq(const Field& f, const mpq_class& q);
    static Scalar zero(const Field& f) { return Scalar(f, 0); }
    static Scalar one(const Field& f) { return Scalar(f, 1); }

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Exact rendering: integers plain, fractions as "p/q", residues as
    /// their representative.
    std::string to_string() const;

    /// Rational payload (Q only).
    const mpq_class& rational() const;
    /// Residue payload (F_p only).
    std::uint64_t residue() const { return r_; }

  private:
    void check_same_field(const Scalar& o) const;

    Field field_;
    mpq_class q_;     // used when field is Q
    std::uint64_t r_; // used when field is F_p
};

} // namespace puncture
