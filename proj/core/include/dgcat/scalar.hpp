#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace dgcat {

/* Exact coefficient field: arbitrary-precision rationals by default, or F_p for a
 * prime p chosen once per process (CLI --field). All arithmetic is exact; there are
 * no tolerances anywhere in the library. */
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    unsigned long p = 0;  // modulus when kind == prime

    bool operator==(const FieldSpec&) const = default;
    std::string to_string() const;             // "q" or "fp:P"
    static FieldSpec parse(const std::string&);  // throws std::invalid_argument
};

void set_field(const FieldSpec& f);  // throws if p is not prime
FieldSpec current_field();

/* RAII helper so tests can switch fields without leaking state. */
struct FieldGuard {
    explicit FieldGuard(const FieldSpec& f) : saved(current_field()) { set_field(f); }
    ~FieldGuard() { set_field(saved); }
    FieldSpec saved;
};

class Scalar {
public:
    Scalar() : v_(0) {}
    explicit Scalar(long n);
    Scalar(long num, long den);  // reduced; in F_p den is inverted

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    /* 1 for even e, -1 for odd e: the Koszul sign (-1)^e. */
    static Scalar sign(long e) { return (e % 2 == 0) ? one() : Scalar(-1); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator-() const;
    Scalar operator+(const Scalar&) const;
    Scalar operator-(const Scalar&) const;
    Scalar operator*(const Scalar&) const;
    Scalar operator/(const Scalar&) const;  // throws std::domain_error on 0
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inv() const;

    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /* Canonical text form: lowest-terms "n" or "n/d" over Q, residue over F_p. */
    std::string str() const;
    static Scalar parse(const std::string&);  // throws std::invalid_argument

private:
    mpq_class v_;
    void canon();  // reduce mod p in prime mode
};

std::ostream& operator<<(std::ostream&, const Scalar&);

}  // namespace dgcat
