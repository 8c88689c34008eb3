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

#ifndef QKT_SPECFUN_HPP
#define QKT_SPECFUN_HPP

#include <cmath>
#include <limits>

namespace qkt::specfun {

/// A real number stored as sign and natural log of its magnitude.
///
/// Binomial and power prefactors of the beam-splitter amplitudes overflow a
/// double near S ~ 60, so they are multiplied in this form and exponentiated
/// once. Zero is encoded as sign 0 with log_magnitude = -inf.
struct LogScaledReal {
    int sign = 0;
    double log_magnitude = -std::numeric_limits<double>::infinity();

    static LogScaledReal zero() {
        return {};
    }
    static LogScaledReal one() {
        return {1, 0.0};
    }
    static LogScaledReal from_log(int sign, double log_magnitude) {
        if (sign == 0) {
            return {};
        }
        return {sign > 0 ? 1 : -1, log_magnitude};
    }
    static LogScaledReal from_double(double x);

    bool is_zero() const {
        return sign == 0;
    }
    double to_double() const {
        return sign == 0 ? 0.0 : sign * std::exp(log_magnitude);
    }

    /// this^k for integer k (k may be negative; zero^k with k <= 0 is a DomainError).
    LogScaledReal pow(int k) const;
    LogScaledReal sqrt() const;
};

LogScaledReal operator*(LogScaledReal a, LogScaledReal b);
LogScaledReal operator/(LogScaledReal a, LogScaledReal b);
LogScaledReal operator-(LogScaledReal a);

/// ln(n!) for n >= 0.
double log_factorial(int n);

/// C(n, k) in sign-log form. Zero for k < 0 or k > n (empty binomials vanish).
LogScaledReal log_binomial(int n, int k);

/// (a)_k / (b)_k. DomainError when (b)_k == 0.
LogScaledReal pochhammer_ratio(int a, int b, int k);

/// Terminating Gauss series
///     sum_{k=0}^{-a} C(-a,k) (-1)^k (b)_k/(c)_k z^k
/// with a <= 0, summed in increasing k with Kahan compensation. When the
/// terms cancel by more than a factor 1024 the sum is redone in MPFR, so the
/// result keeps double relative accuracy near zeros of the series.
/// DomainError on a > 0 or a vanishing (c)_k inside the summation range.
double hyp2f1_terminating(int a, int b, int c, double z);

/// Natural log of the largest |term| of the series above (-inf when every
/// term vanishes). Measures the cancellation the double sum is exposed to.
double hyp2f1_log_max_term(int a, int b, int c, double z);

/// Argument z = numerator / denominator, divided in extended precision.
///
/// Passing z = 1/r as a rounded double perturbs a cancelling series by as
/// much as the rounding of the sum itself, so the high-precision routines
/// take the quotient apart.
struct Quotient {
    double numerator = 0.0;
    double denominator = 1.0;
};

/// Same series evaluated in MPFR at `precision_bits` bits and returned in
/// sign-log form.
LogScaledReal hyp2f1_terminating_mp(int a, int b, int c, Quotient z, long precision_bits);

/// scale * 2F1(a,b;c;z) with absolute error near 2^-target_bits, provided the
/// scaled result is O(1). The working precision is raised by the number of
/// bits the series cancels (from |scale| * max|term|), so the result does not
/// degrade with S the way the plain double sum does.
LogScaledReal scaled_hyp2f1_terminating(int a, int b, int c, Quotient z, LogScaledReal scale,
                                        int target_bits = 64);

}  // namespace qkt::specfun

#endif  // QKT_SPECFUN_HPP
