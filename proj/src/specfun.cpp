// Copyright 2026 The QKT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkt/specfun.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qkt/errors.hpp"

namespace qkt::specfun {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kCancellationLimit = 1024.0;
constexpr long kMaxEscalationBits = 8192;

class MpReal {
   public:
    explicit MpReal(long bits) {
        mpfr_init2(value_, bits);
        mpfr_set_zero(value_, 1);
    }
    ~MpReal() {
        mpfr_clear(value_);
    }
    MpReal(const MpReal &) = delete;
    MpReal &operator=(const MpReal &) = delete;

    mpfr_ptr get() {
        return value_;
    }

   private:
    mpfr_t value_;
};

// Number of nonzero terms of the terminating series: the first vanishing
// numerator Pochhammer ends it.
int series_length(int a, int b) {
    int terms = -a;
    if (b <= 0) {
        terms = std::min(terms, -b);
    }
    return terms;
}

void check_series(int a, int b, int c) {
    if (a > 0) {
        throw DomainError("hyp2f1_terminating: a = " + std::to_string(a) + " does not terminate the series");
    }
    const int terms = series_length(a, b);
    for (int k = 0; k < terms; ++k) {
        if (c + k == 0) {
            throw DomainError("hyp2f1_terminating: (c)_k vanishes at k = " + std::to_string(k + 1) +
                              " for c = " + std::to_string(c));
        }
    }
}

}  // namespace

LogScaledReal LogScaledReal::from_double(double x) {
    if (x == 0.0) {
        return {};
    }
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

LogScaledReal LogScaledReal::pow(int k) const {
    if (sign == 0) {
        if (k <= 0) {
            throw DomainError("LogScaledReal::pow: zero to a non-positive power");
        }
        return {};
    }
    const int s = (sign < 0 && (k % 2 != 0)) ? -1 : 1;
    return {s, log_magnitude * k};
}

LogScaledReal LogScaledReal::sqrt() const {
    if (sign < 0) {
        throw DomainError("LogScaledReal::sqrt: negative value");
    }
    if (sign == 0) {
        return {};
    }
    return {1, 0.5 * log_magnitude};
}

LogScaledReal operator*(LogScaledReal a, LogScaledReal b) {
    if (a.sign == 0 || b.sign == 0) {
        return {};
    }
    return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

LogScaledReal operator/(LogScaledReal a, LogScaledReal b) {
    if (b.sign == 0) {
        throw DomainError("LogScaledReal: division by zero");
    }
    if (a.sign == 0) {
        return {};
    }
    return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
}

LogScaledReal operator-(LogScaledReal a) {
    a.sign = -a.sign;
    return a;
}

double log_factorial(int n) {
    if (n < 0) {
        throw DomainError("log_factorial: negative argument");
    }
    return static_cast<double>(std::lgamma(static_cast<long double>(n) + 1.0L));
}

LogScaledReal log_binomial(int n, int k) {
    if (n < 0) {
        throw DomainError("log_binomial: negative n");
    }
    if (k < 0 || k > n) {
        return LogScaledReal::zero();
    }
    // long double lgamma keeps ~1e-19 relative error on ln(n!), so the
    // difference stays accurate well past the range where C(n,k) overflows.
    const long double v = std::lgamma(static_cast<long double>(n) + 1.0L) -
                          std::lgamma(static_cast<long double>(k) + 1.0L) -
                          std::lgamma(static_cast<long double>(n - k) + 1.0L);
    return {1, static_cast<double>(v)};
}

LogScaledReal pochhammer_ratio(int a, int b, int k) {
    if (k < 0) {
        throw DomainError("pochhammer_ratio: negative k");
    }
    int sign = 1;
    long double log_mag = 0.0L;
    bool numerator_zero = false;
    for (int i = 0; i < k; ++i) {
        const long long num = static_cast<long long>(a) + i;
        const long long den = static_cast<long long>(b) + i;
        if (den == 0) {
            throw DomainError("pochhammer_ratio: (b)_k vanishes for b = " + std::to_string(b) +
                              ", k = " + std::to_string(k));
        }
        if (num == 0) {
            numerator_zero = true;
            continue;
        }
        if ((num < 0) != (den < 0)) {
            sign = -sign;
        }
        log_mag += std::log(static_cast<long double>(std::llabs(num))) -
                   std::log(static_cast<long double>(std::llabs(den)));
    }
    if (numerator_zero) {
        return LogScaledReal::zero();
    }
    return {sign, static_cast<double>(log_mag)};
}

double hyp2f1_terminating(int a, int b, int c, double z) {
    check_series(a, b, c);
    const int terms = series_length(a, b);
    double sum = 1.0;
    double comp = 0.0;
    double term = 1.0;
    double magnitude = 1.0;
    for (int k = 1; k <= terms; ++k) {
        term *= static_cast<double>(a + k - 1) * static_cast<double>(b + k - 1) /
                (static_cast<double>(c + k - 1) * static_cast<double>(k)) * z;
        magnitude += std::abs(term);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if (!(magnitude > kCancellationLimit * std::abs(sum)) || !std::isfinite(magnitude)) {
        return sum;
    }
    // Ill-conditioned: the compensated sum has lost more than ~10 bits. Redo
    // the series in MPFR until the result carries full double precision.
    for (long bits = 128; bits <= kMaxEscalationBits; bits *= 2) {
        const LogScaledReal v = hyp2f1_terminating_mp(a, b, c, {z, 1.0}, bits);
        const double slack = (bits - 60) * kLn2;
        if (!v.is_zero() && v.log_magnitude - std::log(magnitude) > -slack) {
            return v.to_double();
        }
    }
    return 0.0;
}

double hyp2f1_log_max_term(int a, int b, int c, double z) {
    check_series(a, b, c);
    const int terms = series_length(a, b);
    double log_term = 0.0;
    double best = 0.0;
    if (z == 0.0) {
        return best;
    }
    const double log_z = std::log(std::abs(z));
    for (int k = 1; k <= terms; ++k) {
        log_term += std::log(std::abs(static_cast<double>(a + k - 1))) +
                    std::log(std::abs(static_cast<double>(b + k - 1))) -
                    std::log(std::abs(static_cast<double>(c + k - 1))) - std::log(static_cast<double>(k)) +
                    log_z;
        best = std::max(best, log_term);
    }
    return best;
}

LogScaledReal hyp2f1_terminating_mp(int a, int b, int c, Quotient z, long precision_bits) {
    check_series(a, b, c);
    if (z.denominator == 0.0) {
        throw DomainError("hyp2f1_terminating_mp: zero denominator in z");
    }
    const long bits = std::max<long>(precision_bits, MPFR_PREC_MIN);
    const int terms = series_length(a, b);

    MpReal zz(bits);
    MpReal term(bits);
    MpReal sum(bits);
    mpfr_set_d(zz.get(), z.numerator, MPFR_RNDN);
    mpfr_div_d(zz.get(), zz.get(), z.denominator, MPFR_RNDN);
    mpfr_set_ui(term.get(), 1, MPFR_RNDN);
    mpfr_set_ui(sum.get(), 1, MPFR_RNDN);
    for (int k = 1; k <= terms; ++k) {
        mpfr_mul_si(term.get(), term.get(), a + k - 1, MPFR_RNDN);
        mpfr_mul_si(term.get(), term.get(), b + k - 1, MPFR_RNDN);
        mpfr_div_si(term.get(), term.get(), c + k - 1, MPFR_RNDN);
        mpfr_div_si(term.get(), term.get(), k, MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), zz.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }

    const int sign = mpfr_sgn(sum.get());
    if (sign == 0) {
        return LogScaledReal::zero();
    }
    mpfr_abs(sum.get(), sum.get(), MPFR_RNDN);
    mpfr_log(sum.get(), sum.get(), MPFR_RNDN);
    return {sign > 0 ? 1 : -1, mpfr_get_d(sum.get(), MPFR_RNDN)};
}

LogScaledReal scaled_hyp2f1_terminating(int a, int b, int c, Quotient z, LogScaledReal scale, int target_bits) {
    if (scale.is_zero()) {
        check_series(a, b, c);
        return LogScaledReal::zero();
    }
    const double approx_z = z.numerator / z.denominator;
    const double log_peak = scale.log_magnitude + hyp2f1_log_max_term(a, b, c, approx_z);
    const int terms = series_length(a, b);
    const double cancel_bits = std::max(0.0, log_peak / kLn2) + std::log2(terms + 1.0);
    const long bits = static_cast<long>(std::ceil(target_bits + cancel_bits)) + 16;
    return scale * hyp2f1_terminating_mp(a, b, c, z, std::max(bits, 64L));
}

}  // namespace qkt::specfun
