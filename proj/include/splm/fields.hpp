// Exact coefficient fields: Q, the ramified quadratic extension Q(pi) with
// pi^2 = p, and the prime field F_p (p an odd prime, pi |-> 0).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace splm {

inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline void require_odd_prime(long p) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

/// Field of rational numbers with arbitrary-precision reduced fractions.
class RationalField {
  public:
    using Elt = mpq_class;
    static constexpr const char* kind = "Q";

    std::string name() const { return "Q"; }
    bool has_pi() const { return false; }

    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    Elt from_int(long v) const { return Elt(v); }
    Elt pi() const { throw std::domain_error("pi is not representable in Q"); }

    Elt add(const Elt& x, const Elt& y) const { return x + y; }
    Elt sub(const Elt& x, const Elt& y) const { return x - y; }
    Elt mul(const Elt& x, const Elt& y) const { return x * y; }
    Elt neg(const Elt& x) const { return -x; }
    Elt inv(const Elt& x) const {
        if (x == 0) throw std::domain_error("division by zero");
        return 1 / x;
    }
    Elt div(const Elt& x, const Elt& y) const { return mul(x, inv(y)); }

    bool is_zero(const Elt& x) const { return x == 0; }
    bool eq(const Elt& x, const Elt& y) const { return x == y; }
    bool same(const RationalField&) const { return true; }

    std::string str(const Elt& x) const { return x.get_str(); }
};

/// Q(pi) with pi^2 = p; elements a + b*pi with a, b rational. A field since an
/// odd prime is never a rational square.
class RamifiedQuadraticField {
  public:
    struct Elt {
        mpq_class a, b;  // a + b*pi
        bool operator==(const Elt& o) const { return a == o.a && b == o.b; }
    };
    static constexpr const char* kind = "Qpi";

    RamifiedQuadraticField() : RamifiedQuadraticField(3) {}
    explicit RamifiedQuadraticField(long p) : p_(p) { require_odd_prime(p); }

    long p() const { return p_; }
    std::string name() const { return "Qpi" + std::to_string(p_); }
    bool has_pi() const { return true; }

    Elt zero() const { return {0, 0}; }
    Elt one() const { return {1, 0}; }
    Elt from_int(long v) const { return {mpq_class(v), 0}; }
    Elt pi() const { return {0, 1}; }

    Elt add(const Elt& x, const Elt& y) const { return {x.a + y.a, x.b + y.b}; }
    Elt sub(const Elt& x, const Elt& y) const { return {x.a - y.a, x.b - y.b}; }
    Elt mul(const Elt& x, const Elt& y) const {
        return {x.a * y.a + p_ * (x.b * y.b), x.a * y.b + x.b * y.a};
    }
    Elt neg(const Elt& x) const { return {-x.a, -x.b}; }
    Elt inv(const Elt& x) const {
        mpq_class nrm = x.a * x.a - p_ * (x.b * x.b);
        if (nrm == 0) throw std::domain_error("division by zero");
        return {x.a / nrm, -x.b / nrm};
    }
    Elt div(const Elt& x, const Elt& y) const { return mul(x, inv(y)); }

    bool is_zero(const Elt& x) const { return x.a == 0 && x.b == 0; }
    bool eq(const Elt& x, const Elt& y) const { return x == y; }
    bool same(const RamifiedQuadraticField& o) const { return p_ == o.p_; }

    std::string str(const Elt& x) const {
        if (x.b == 0) return x.a.get_str();
        std::string pi_part = (x.b == 1) ? "pi" : (x.b == -1) ? "-pi" : x.b.get_str() + "*pi";
        if (x.a == 0) return pi_part;
        if (x.b > 0) return x.a.get_str() + "+" + (x.b == 1 ? "pi" : x.b.get_str() + "*pi");
        mpq_class nb = -x.b;
        return x.a.get_str() + "-" + (nb == 1 ? "pi" : nb.get_str() + "*pi");
    }

  private:
    long p_;
};

/// F_p as least nonnegative residues; pi maps to 0.
class PrimeField {
  public:
    using Elt = long;
    static constexpr const char* kind = "F";

    PrimeField() : PrimeField(3) {}
    explicit PrimeField(long p) : p_(p) { require_odd_prime(p); }

    long p() const { return p_; }
    std::string name() const { return "F" + std::to_string(p_); }
    bool has_pi() const { return true; }  // pi is representable, as 0

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt from_int(long v) const {
        long r = v % p_;
        return r < 0 ? r + p_ : r;
    }
    Elt pi() const { return 0; }

    Elt add(Elt x, Elt y) const { return (x + y) % p_; }
    Elt sub(Elt x, Elt y) const { return ((x - y) % p_ + p_) % p_; }
    Elt mul(Elt x, Elt y) const { return (x * y) % p_; }
    Elt neg(Elt x) const { return x == 0 ? 0 : p_ - x; }
    Elt inv(Elt x) const {
        if (x == 0) throw std::domain_error("division by zero");
        // extended Euclid
        long a = x, m = p_, u = 1, v = 0;
        while (a != 0) {
            long q = m / a;
            m -= q * a; std::swap(a, m);
            v -= q * u; std::swap(u, v);
        }
        return from_int(v);
    }
    Elt div(Elt x, Elt y) const { return mul(x, inv(y)); }

    bool is_zero(Elt x) const { return x == 0; }
    bool eq(Elt x, Elt y) const { return x == y; }
    bool same(const PrimeField& o) const { return p_ == o.p_; }

    std::string str(Elt x) const { return std::to_string(x); }

  private:
    long p_;
};

}  // namespace splm
