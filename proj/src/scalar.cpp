#include "mmp/scalar.hpp"

#include <cctype>
#include <numeric>

namespace mmp {

namespace {

long long checked(__int128 x) {
    if (x > INT64_MAX || x < INT64_MIN)
        throw MmpError("rational overflow in exact arithmetic");
    return static_cast<long long>(x);
}

__int128 gcd128(__int128 a, __int128 b) {
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(__int128 n, __int128 d) {
    if (d == 0) throw MmpError("division by zero");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num = checked(n);
    r.den = checked(d);
    return r;
}

}  // namespace

Rational::Rational(long long n, long long d) { *this = make(n, d); }

Rational Rational::operator+(const Rational& o) const {
    return make(static_cast<__int128>(num) * o.den +
                static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
}
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const {
    return make(static_cast<__int128>(num) * o.num,
                static_cast<__int128>(den) * o.den);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw MmpError("division by zero");
    return make(static_cast<__int128>(num) * o.den,
                static_cast<__int128>(den) * o.num);
}

std::string Rational::str() const {
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
}

Scalar Scalar::atom_i() {
    Scalar s;
    s.c[8] = 1;
    return s;
}

Scalar Scalar::atom_r(int k) {
    Scalar s;
    s.c[k == 2 ? 1 : k == 3 ? 2 : 4] = 1;
    return s;
}

Scalar Scalar::omega() {
    Scalar s;
    s.c[0] = Rational(-1, 2);
    s.c[2 | 8] = Rational(1, 2);  // (r3/2)*i
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r;
    for (int k = 0; k < 16; ++k) r.c[k] = c[k] + o.c[k];
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r;
    for (int k = 0; k < 16; ++k) r.c[k] = c[k] - o.c[k];
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (int k = 0; k < 16; ++k) r.c[k] = -c[k];
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    static constexpr int kSquare[4] = {2, 3, 5, -1};  // r2^2, r3^2, r5^2, i^2
    Scalar r;
    for (int x = 0; x < 16; ++x) {
        if (c[x].is_zero()) continue;
        for (int y = 0; y < 16; ++y) {
            if (o.c[y].is_zero()) continue;
            long long mult = 1;
            for (int bit = 0; bit < 4; ++bit)
                if ((x & y) & (1 << bit)) mult *= kSquare[bit];
            r.c[x ^ y] = r.c[x ^ y] + c[x] * o.c[y] * Rational(mult);
        }
    }
    return r;
}

Scalar Scalar::conj() const {
    Scalar r = *this;
    for (int k = 8; k < 16; ++k) r.c[k] = -r.c[k];
    return r;
}

bool Scalar::is_zero() const {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw MmpError("inverse of zero");
    // Solve (this * x) = 1 as a 16x16 rational linear system: column j of M
    // is this * basis_j.
    Rational M[16][17];
    for (int j = 0; j < 16; ++j) {
        Scalar basis;
        basis.c[j] = 1;
        Scalar col = *this * basis;
        for (int i = 0; i < 16; ++i) M[i][j] = col.c[i];
    }
    for (int i = 0; i < 16; ++i) M[i][16] = Rational(i == 0 ? 1 : 0);
    for (int col = 0, row = 0; col < 16 && row < 16; ++col) {
        int p = row;
        while (p < 16 && M[p][col].is_zero()) ++p;
        if (p == 16) continue;
        for (int k = 0; k <= 16; ++k) std::swap(M[row][k], M[p][k]);
        Rational inv = Rational(1) / M[row][col];
        for (int k = col; k <= 16; ++k) M[row][k] = M[row][k] * inv;
        for (int r = 0; r < 16; ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            Rational f = M[r][col];
            for (int k = col; k <= 16; ++k)
                M[r][k] = M[r][k] - f * M[row][k];
        }
        ++row;
    }
    // The algebra is a field, so elimination reduces M to the identity and
    // the solution sits in the augmented column.
    Scalar x;
    for (int j = 0; j < 16; ++j) x.c[j] = M[j][16];
    Scalar check = *this * x;
    Scalar one;
    one.c[0] = 1;
    if (!(check == one)) throw MmpError("element is not invertible");
    return x;
}

std::string Scalar::str() const {
    static const char* kAtoms[4] = {"r2", "r3", "r5", "i"};
    std::string out;
    for (int k = 0; k < 16; ++k) {
        if (c[k].is_zero()) continue;
        Rational r = c[k];
        std::string term;
        bool neg = r.num < 0;
        Rational mag = neg ? -r : r;
        bool has_atoms = k != 0;
        if (!has_atoms || !(mag == Rational(1))) term = mag.str();
        for (int bit = 0; bit < 4; ++bit)
            if (k & (1 << bit)) {
                if (!term.empty()) term += "*";
                term += kAtoms[bit];
            }
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

namespace {

struct ScalarParser {
    std::string_view s;
    std::size_t p = 0;

    void skip_ws() {
        while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
    }

    bool eat(char c) {
        skip_ws();
        if (p < s.size() && s[p] == c) { ++p; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw MmpError("bad scalar '" + std::string(s) + "': " + why);
    }

    long long integer() {
        skip_ws();
        std::size_t start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start) fail("expected a number");
        return std::stoll(std::string(s.substr(start, p - start)));
    }

    Scalar factor() {
        skip_ws();
        if (p >= s.size()) fail("expected a factor");
        Scalar base;
        if (std::isdigit(static_cast<unsigned char>(s[p]))) {
            long long num = integer();
            long long den = 1;
            if (eat('/')) den = integer();
            base = Scalar::rational(num, den);
        } else if (s[p] == 'i') {
            ++p;
            base = Scalar::atom_i();
        } else if (s[p] == 'w') {
            ++p;
            base = Scalar::omega();
        } else if (s[p] == 'r' && p + 1 < s.size() &&
                   (s[p + 1] == '2' || s[p + 1] == '3' || s[p + 1] == '5')) {
            base = Scalar::atom_r(s[p + 1] - '0');
            p += 2;
        } else {
            fail(std::string("unexpected character '") + s[p] + "'");
        }
        if (eat('^')) {
            long long e = integer();
            Scalar r = Scalar::rational(1);
            for (long long k = 0; k < e; ++k) r = r * base;
            base = r;
        }
        return base;
    }

    Scalar term() {
        Scalar r = factor();
        while (eat('*')) r = r * factor();
        return r;
    }

    Scalar expr() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Scalar r = term();
        if (neg) r = -r;
        for (;;) {
            skip_ws();
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else break;
        }
        skip_ws();
        if (p != s.size()) fail("trailing characters");
        return r;
    }
};

}  // namespace

Scalar parse_scalar(std::string_view text) {
    ScalarParser parser{text};
    return parser.expr();
}

}  // namespace mmp
