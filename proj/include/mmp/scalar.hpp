#pragma once
// Exact scalars for coordinatizations: the 16-dimensional Q-algebra with
// basis {r2^a * r3^b * r5^c * i^d | a,b,c,d in {0,1}} where r2=sqrt(2),
// r3=sqrt(3), r5=sqrt(5). Covers rationals, Gaussian values, and the cube
// root of unity w = -1/2 + (r3/2)*i. All arithmetic is exact.

#include <array>
#include <cstdint>
#include <string>

#include "mmp/hypergraph.hpp"  // MmpError

namespace mmp {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n) {}
    Rational(long long n, long long d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return {-num, den}; }
    bool operator==(const Rational& o) const = default;
    bool is_zero() const { return num == 0; }
    std::string str() const;
};

class Scalar {
  public:
    // Basis index bit layout: bit0 = r2, bit1 = r3, bit2 = r5, bit3 = i.
    std::array<Rational, 16> c{};

    Scalar() = default;
    explicit Scalar(const Rational& r) { c[0] = r; }
    static Scalar rational(long long n, long long d = 1) {
        return Scalar(Rational(n, d));
    }
    static Scalar atom_i();
    static Scalar atom_r(int k);  // k in {2,3,5}
    static Scalar omega();        // -1/2 + (r3/2)*i

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    bool operator==(const Scalar& o) const = default;

    Scalar conj() const;      // complex conjugate: negate the i components
    Scalar inverse() const;   // throws MmpError on zero
    bool is_zero() const;

    // Expression in the .vec mini-grammar; parse_scalar round-trips it.
    std::string str() const;
};

// Parses the component grammar: sums of terms, each a '*'-product of a
// rational and atoms i, w, r2, r3, r5 with optional '^' integer powers.
Scalar parse_scalar(std::string_view text);

}  // namespace mmp
