#include "puncture/scalar.hpp"

#include <sstream>

namespace puncture {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; p prime and a != 0 mod p
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw StructuralError("mod_inverse: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

Field Field::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw StructuralError("Field::prime: " + std::to_string(p) + " is not prime");
    if (p >= (1ull << 31)) throw StructuralError("Field::prime: prime too large");
    return Field(p);
}

std::string Field::to_string() const {
    return is_rationals() ? "q" : "fp:" + std::to_string(p_);
}

Field Field::parse(const std::string& spec) {
    if (spec == "q" || spec == "Q") return rationals();
    if (spec.rfind("fp:", 0) == 0) {
        std::uint64_t p = std::stoull(spec.substr(3));
        return prime(p);
    }
    throw StructuralError("Field::parse: expected 'q' or 'fp:<prime>', got '" + spec + "'");
}

Scalar::Scalar(const Field& f, long value) : field_(f), q_(0), r_(0) {
    if (f.is_rationals()) {
        q_ = value;
    } else {
        std::int64_t p = static_cast<std::int64_t>(f.characteristic());
        std::int64_t v = value % p;
        if (v < 0) v += p;
        r_ = static_cast<std::uint64_t>(v);
    }
}

Scalar Scalar::from_mpq(const Field& f, const mpq_class& q) {
    Scalar s;
    s.field_ = f;
    if (f.is_rationals()) {
        s.q_ = q;
        s.q_.canonicalize();
    } else {
        // reduce numerator and denominator mod p, then divide
        std::uint64_t p = f.characteristic();
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class num = q.get_num() % pz;
        mpz_class den = q.get_den() % pz;
        if (num < 0) num += pz;
        std::uint64_t n = num.get_ui();
        std::uint64_t d = den.get_ui();
        if (d == 0) throw StructuralError("Scalar: denominator vanishes mod p");
        s.r_ = (n * mod_inverse(d, p)) % p;
    }
    return s;
}

bool Scalar::is_zero() const {
    return field_.is_rationals() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rationals() ? q_ == 1 : r_ == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
        throw StructuralError("Scalar: mixed fields " + field_.to_string() + " and " + o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar s(*this);
    if (field_.is_rationals()) {
        s.q_ += o.q_;
    } else {
        s.r_ = (r_ + o.r_) % field_.characteristic();
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    Scalar s(*this);
    if (field_.is_rationals()) {
        s.q_ -= o.q_;
    } else {
        std::uint64_t p = field_.characteristic();
        s.r_ = (r_ + p - o.r_) % p;
    }
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar s(*this);
    if (field_.is_rationals()) {
        s.q_ *= o.q_;
    } else {
        s.r_ = (r_ * o.r_) % field_.characteristic();
    }
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    Scalar s(*this);
    if (field_.is_rationals()) {
        s.q_ = -q_;
    } else if (r_ != 0) {
        s.r_ = field_.characteristic() - r_;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw StructuralError("Scalar: division by zero");
    Scalar s(*this);
    if (field_.is_rationals()) {
        s.q_ = 1 / q_;
    } else {
        s.r_ = mod_inverse(r_, field_.characteristic());
    }
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same_field(o);
    return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
    if (!field_.is_rationals()) return std::to_string(r_);
    std::ostringstream os;
    os << q_;
    return os.str();
}

const mpq_class& Scalar::rational() const {
    if (!field_.is_rationals()) throw StructuralError("Scalar: not a rational");
    return q_;
}

} // namespace puncture
