#include "puncture/ratfunc.hpp"

#include <cctype>
#include <climits>
#include <sstream>

namespace puncture {

Poly::Poly(const Field& f, std::vector<Scalar> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.field() != field_) throw StructuralError("Poly: coefficient field mismatch");
    trim();
}

Poly Poly::constant(const Scalar& c) {
    Poly p(c.field());
    if (!c.is_zero()) p.coeffs_ = {c};
    return p;
}

Poly Poly::monomial(const Scalar& c, int e) {
    if (e < 0) throw StructuralError("Poly::monomial: negative exponent");
    Poly p(c.field());
    if (!c.is_zero()) {
        p.coeffs_.assign(static_cast<size_t>(e) + 1, Scalar::zero(c.field()));
        p.coeffs_.back() = c;
    }
    return p;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int Poly::valuation() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return static_cast<int>(i);
    return -1;
}

Scalar Poly::coeff(int e) const {
    if (e < 0 || e >= static_cast<int>(coeffs_.size())) return Scalar::zero(field_);
    return coeffs_[static_cast<size_t>(e)];
}

Scalar Poly::leading() const {
    if (is_zero()) return Scalar::zero(field_);
    return coeffs_.back();
}

Poly Poly::operator+(const Poly& o) const {
    if (field_ != o.field_) throw StructuralError("Poly: field mismatch");
    Poly r(field_);
    size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    r.coeffs_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.coeffs_.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (field_ != o.field_) throw StructuralError("Poly: field mismatch");
    if (is_zero() || o.is_zero()) return Poly(field_);
    Poly r(field_);
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Scalar::zero(field_));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
    r.trim();
    return r;
}

bool Poly::coeffs_size_eq(const Poly& o) const {
    if (field_ != o.field_ || coeffs_.size() != o.coeffs_.size()) return false;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != o.coeffs_[i]) return false;
    return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw StructuralError("Poly::divmod: division by zero polynomial");
    Poly q(n.field_), r = n;
    Scalar lead_inv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int e = r.degree() - d.degree();
        Scalar c = r.leading() * lead_inv;
        Poly m = Poly::monomial(c, e);
        q = q + m;
        r = r - m * d;
    }
    return {q, r};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = b;
        b = r;
    }
    return a.monic();
}

Poly Poly::scaled(const Scalar& c) const {
    Poly r(*this);
    for (auto& x : r.coeffs_) x = x * c;
    r.trim();
    return r;
}

Poly Poly::shifted(int e) const {
    if (e < 0) throw StructuralError("Poly::shifted: negative shift");
    if (is_zero()) return *this;
    Poly r(field_);
    r.coeffs_.assign(static_cast<size_t>(e), Scalar::zero(field_));
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = 0; e <= degree(); ++e) {
        Scalar c = coeff(e);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << c.to_string();
        } else {
            if (!c.is_one()) os << c.to_string() << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.field() != den_.field()) throw StructuralError("RatFunc: field mismatch");
    if (den_.is_zero()) throw StructuralError("RatFunc: zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(Scalar::one(field()));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = Poly::divmod(num_, g).first;
        den_ = Poly::divmod(den_, g).first;
    }
    Scalar lead = den_.leading();
    if (!lead.is_one()) {
        Scalar inv = lead.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RatFunc RatFunc::from_poly(Poly p) {
    Field f = p.field();
    return RatFunc(std::move(p), Poly::constant(Scalar::one(f)));
}

RatFunc RatFunc::monomial(const Scalar& c, int e) {
    const Field& f = c.field();
    if (e >= 0) return from_poly(Poly::monomial(c, e));
    return RatFunc(Poly::constant(c), Poly::t_power(f, -e));
}

bool RatFunc::is_laurent_polynomial() const {
    return den_.valuation() == den_.degree(); // den is a monomial t^a
}

std::optional<std::pair<Scalar, int>> RatFunc::as_monomial() const {
    if (is_zero()) return std::nullopt;
    if (num_.valuation() != num_.degree() || den_.valuation() != den_.degree()) return std::nullopt;
    Scalar c = num_.leading() / den_.leading();
    return std::make_pair(c, num_.degree() - den_.degree());
}

int RatFunc::valuation() const {
    if (is_zero()) return INT_MIN;
    return num_.valuation() - den_.valuation();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    // monomial factors only shift and scale: strip common t-powers
    // directly instead of running the gcd
    auto fast = [](const RatFunc& mono, const RatFunc& gen) -> RatFunc {
        auto m = mono.as_monomial();
        RatFunc r(gen.field());
        if (m->second >= 0) {
            int v = gen.den_.valuation();
            int strip = std::min(m->second, v);
            std::vector<Scalar> den_coeffs;
            for (int e = strip; e <= gen.den_.degree(); ++e) den_coeffs.push_back(gen.den_.coeff(e));
            r.num_ = gen.num_.scaled(m->first).shifted(m->second - strip);
            r.den_ = Poly(gen.field(), std::move(den_coeffs));
        } else {
            int v = gen.num_.valuation();
            int strip = std::min(-m->second, v);
            std::vector<Scalar> num_coeffs;
            for (int e = strip; e <= gen.num_.degree(); ++e) num_coeffs.push_back(gen.num_.coeff(e));
            r.num_ = Poly(gen.field(), std::move(num_coeffs)).scaled(m->first);
            r.den_ = gen.den_.shifted(-m->second - strip);
        }
        return r;
    };
    if (is_zero() || o.is_zero()) return zero(field());
    if (as_monomial()) return fast(*this, o);
    if (o.as_monomial()) return fast(o, *this);
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw StructuralError("RatFunc: division by zero");
    return RatFunc(den_, num_);
}

std::map<int, Scalar> RatFunc::series_coeffs(int lo, int hi) const {
    std::map<int, Scalar> out;
    const Field& f = field();
    if (is_zero()) {
        for (int e = lo; e <= hi; ++e) out[e] = Scalar::zero(f);
        return out;
    }
    int vn = num_.valuation(), vd = den_.valuation();
    int val = vn - vd; // expansion starts at t^val
    // strip t-powers: n0, d0 with d0(0) != 0
    std::vector<Scalar> n0, d0;
    for (int e = vn; e <= num_.degree(); ++e) n0.push_back(num_.coeff(e));
    for (int e = vd; e <= den_.degree(); ++e) d0.push_back(den_.coeff(e));
    // power series division n0/d0 by recurrence
    int terms = hi - val + 1;
    std::vector<Scalar> c;
    if (terms > 0) {
        c.reserve(static_cast<size_t>(terms));
        Scalar d0inv = d0[0].inverse();
        for (int k = 0; k < terms; ++k) {
            Scalar acc = (static_cast<size_t>(k) < n0.size()) ? n0[static_cast<size_t>(k)] : Scalar::zero(f);
            for (int j = 1; j <= k && static_cast<size_t>(j) < d0.size(); ++j)
                acc = acc - d0[static_cast<size_t>(j)] * c[static_cast<size_t>(k - j)];
            c.push_back(acc * d0inv);
        }
    }
    for (int e = lo; e <= hi; ++e) {
        int k = e - val;
        out[e] = (k >= 0 && k < terms) ? c[static_cast<size_t>(k)] : Scalar::zero(f);
    }
    return out;
}

Scalar RatFunc::series_coeff(int e) const {
    return series_coeffs(e, e).at(e);
}

RatFunc RatFunc::polynomial_part() const {
    return from_poly(Poly::divmod(num_, den_).first);
}

RatFunc RatFunc::proper_part() const {
    return RatFunc(Poly::divmod(num_, den_).second, den_);
}

std::string RatFunc::to_string() const {
    if (is_zero()) return "0";
    if (is_polynomial()) return num_.to_string();
    std::string n = num_.to_string();
    std::string d = den_.to_string();
    std::string nn = (num_.degree() > num_.valuation()) ? "(" + n + ")" : n;
    std::string dd = (den_.degree() > den_.valuation()) ? "(" + d + ")" : d;
    return nn + "/" + dd;
}

// --- parser ---------------------------------------------------------------

namespace {

struct RatParser {
    const Field& f;
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw StructuralError("RatFunc::parse: " + what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) fail("expected integer");
        return std::stol(s.substr(start, pos - start));
    }

    RatFunc primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RatFunc e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == 't') {
            ++pos;
            return RatFunc::t_power(f, 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc::constant(Scalar(f, integer()));
        fail("expected number, 't' or '('");
    }

    RatFunc factor() {
        skip_ws();
        if (pos < s.size() && s[pos] == '-') {
            ++pos;
            return -factor();
        }
        RatFunc base = primary();
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            long e = integer();
            RatFunc r = RatFunc::one(f);
            RatFunc b = (e < 0) ? base.inverse() : base;
            for (long i = 0; i < (e < 0 ? -e : e); ++i) r = r * b;
            return r;
        }
        return base;
    }

    RatFunc term() {
        RatFunc r = factor();
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                r = r * factor();
            } else if (pos < s.size() && s[pos] == '/') {
                ++pos;
                r = r / factor();
            } else if (pos < s.size() && (s[pos] == 't' || s[pos] == '(')) {
                r = r * factor(); // implicit product like "2t" or "3(1-t)"
            } else {
                break;
            }
        }
        return r;
    }

    RatFunc expr() {
        RatFunc r = term();
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '+') {
                ++pos;
                r = r + term();
            } else if (pos < s.size() && s[pos] == '-') {
                ++pos;
                r = r - term();
            } else {
                break;
            }
        }
        return r;
    }
};

} // namespace

RatFunc RatFunc::parse(const Field& f, const std::string& text) {
    RatParser p{f, text};
    RatFunc r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

} // namespace puncture
