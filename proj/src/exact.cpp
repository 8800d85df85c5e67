#include "temb/exact.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace temb {

mpz_class pochhammer(long n, long p) {
    mpz_class r = 1;
    for (long i = 0; i < p; ++i) r *= n + i;
    return r;
}

mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return r;
}

mpz_class neg_poch_quotient(long z, long k, long A) {
    mpz_class r = -1;
    for (long i = 0; i < A; ++i)
        if (i != k) r *= i - z;
    return r;
}

mpz_class lagrange_denominator(long j, long p) {
    mpz_class r = 1;
    for (long i = 0; i < p; ++i)
        if (i != j) r *= i - j;
    return r;
}

mpq_class rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw std::domain_error("division by zero");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double LogSign::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

LogSign pochhammer_log(long n, long p) {
    LogSign out;
    double sum = 0.0;
    double comp = 0.0;
    for (long i = 0; i < p; ++i) {
        const long f = n + i;
        if (f == 0) return {0.0, 0};
        if (f < 0) out.sign = -out.sign;
        // Neumaier summation of the logarithms
        const double term = std::log(static_cast<double>(f < 0 ? -f : f));
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    out.log_abs = sum + comp;
    return out;
}

LogSign factorial_log(long n) { return pochhammer_log(1, n); }

QComplex QComplex::from(cd z) {
    QComplex q;
    q.re = mpq_class(z.real());
    q.im = mpq_class(z.imag());
    return q;
}

double to_double(const mpq_class& q) {
    // mpq_get_d truncates; one correction step gives round-to-nearest behaviour
    const double d = q.get_d();
    if (d == 0.0 || !std::isfinite(d)) return d;
    const double up = std::nextafter(d, d > 0 ? INFINITY : -INFINITY);
    const mpq_class err_d = q - mpq_class(d);
    const mpq_class err_up = mpq_class(up) - q;
    return abs(err_up) < abs(err_d) ? up : d;
}

cd QComplex::to_cd() const { return {to_double(re), to_double(im)}; }

QComplex& QComplex::operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
    const mpq_class den = o.re * o.re + o.im * o.im;
    mpq_class r = (re * o.re + im * o.im) / den;
    mpq_class i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }

cd sixth_root(int k) {
    const int m = ((k % 6) + 6) % 6;
    const double h = std::numbers::sqrt3 / 2.0;
    switch (m) {
        case 0: return {1.0, 0.0};
        case 1: return {0.5, h};
        case 2: return {-0.5, h};
        case 3: return {-1.0, 0.0};
        case 4: return {-0.5, -h};
        default: return {0.5, -h};
    }
}

}  // namespace temb
