#pragma once

#include <complex>
#include <gmpxx.h>

namespace temb {

using cd = std::complex<double>;

// Rising factorial (n)_p = n (n+1) ... (n+p-1), with (n)_0 = 1.
mpz_class pochhammer(long n, long p);
mpz_class factorial(long n);

// -prod_{i in [0,A), i != k} (i - z), the quotient (-z)_A / (z - k).
mpz_class neg_poch_quotient(long z, long k, long A);
// prod_{i in [0,p), i != j} (i - j)
mpz_class lagrange_denominator(long j, long p);

struct LogSign {
    double log_abs = 0.0;
    int sign = 1;  // 0 when the value is exactly zero
    double value() const;
};

// Pochhammer symbol in (log|value|, sign) form; the sign is 0 when a factor vanishes.
LogSign pochhammer_log(long n, long p);
LogSign factorial_log(long n);

// Complex number with exact rational real and imaginary parts.
struct QComplex {
    mpq_class re;
    mpq_class im;

    QComplex() : re(0), im(0) {}
    QComplex(const mpq_class& r) : re(r), im(0) {}
    QComplex(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

    static QComplex from(cd z);
    cd to_cd() const;
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    QComplex& operator+=(const QComplex& o);
    QComplex& operator-=(const QComplex& o);
    QComplex& operator*=(const QComplex& o);
    QComplex& operator/=(const QComplex& o);
};

QComplex operator+(QComplex a, const QComplex& b);
QComplex operator-(QComplex a, const QComplex& b);
QComplex operator*(QComplex a, const QComplex& b);
QComplex operator/(QComplex a, const QComplex& b);
QComplex operator-(const QComplex& a);

// Canonical fraction num / den; throws std::domain_error when den is zero.
mpq_class rational(const mpz_class& num, const mpz_class& den);

// Rounds an exact rational to the nearest double.
double to_double(const mpq_class& q);

// Unit phases e^{i k pi / 3}.
cd sixth_root(int k);

}  // namespace temb
