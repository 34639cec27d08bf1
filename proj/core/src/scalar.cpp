#include "dgcat/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace dgcat {

namespace {
FieldSpec g_field;  // process-wide; set before any computation (CLI/tests)

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}
}  // namespace

std::string FieldSpec::to_string() const {
    return kind == Kind::rationals ? "q" : "fp:" + std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "q" || s == "Q") return FieldSpec{};
    if (s.rfind("fp:", 0) == 0) {
        FieldSpec f;
        f.kind = Kind::prime;
        try {
            f.p = std::stoul(s.substr(3));
        } catch (const std::exception&) {
            throw std::invalid_argument("field: bad modulus in '" + s + "'");
        }
        if (!is_prime(f.p)) throw std::invalid_argument("field: " + std::to_string(f.p) + " is not prime");
        return f;
    }
    throw std::invalid_argument("field: expected 'q' or 'fp:P', got '" + s + "'");
}

void set_field(const FieldSpec& f) {
    if (f.kind == FieldSpec::Kind::prime && !is_prime(f.p))
        throw std::invalid_argument("field: modulus must be prime");
    g_field = f;
}

FieldSpec current_field() { return g_field; }

void Scalar::canon() {
    v_.canonicalize();
    if (g_field.kind == FieldSpec::Kind::prime) {
        mpz_class p(static_cast<unsigned long>(g_field.p));
        mpz_class num = v_.get_num(), den = v_.get_den();
        mpz_class r;
        mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        if (den != 1) {
            mpz_class dinv;
            mpz_class dm;
            mpz_mod(dm.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
            if (mpz_invert(dinv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t()) == 0)
                throw std::domain_error("scalar: denominator not invertible mod " + std::to_string(g_field.p));
            r = (r * dinv) % p;
        }
        v_ = mpq_class(r);
    }
}

Scalar::Scalar(long n) : v_(n) { canon(); }

Scalar::Scalar(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("scalar: zero denominator");
    canon();
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.v_ = -v_;
    r.canon();
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r;
    r.v_ = v_ + o.v_;
    r.canon();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r;
    r.v_ = v_ - o.v_;
    r.canon();
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    r.v_ = v_ * o.v_;
    r.canon();
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("scalar: inverse of zero");
    Scalar r;
    if (g_field.kind == FieldSpec::Kind::prime) {
        mpz_class p(static_cast<unsigned long>(g_field.p));
        mpz_class num = v_.get_num();  // canonical residue, den == 1
        mpz_class ninv;
        if (mpz_invert(ninv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::domain_error("scalar: residue not invertible");
        r.v_ = mpq_class(ninv);
    } else {
        r.v_ = 1 / v_;
    }
    r.canon();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

std::string Scalar::str() const { return v_.get_str(); }

Scalar Scalar::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("scalar: empty literal");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw std::invalid_argument("scalar: bad literal '" + s + "'");
    Scalar r;
    try {
        r.v_ = mpq_class(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("scalar: bad literal '" + s + "'");
    }
    if (r.v_.get_den() == 0) throw std::invalid_argument("scalar: zero denominator in '" + s + "'");
    r.canon();
    return r;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace dgcat
