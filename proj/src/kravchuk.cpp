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


#include "qkt/kravchuk.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qkt/errors.hpp"
#include "qkt/specfun.hpp"

namespace qkt::kravchuk {

namespace {

using specfun::LogScaledReal;

void check_p(double p, const char *where) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(std::string(where) + ": p must lie in (0,1), got " + std::to_string(p));
    }
}

void check_index(int i, int N, const char *name, const char *where) {
    if (i < 0 || i > N) {
        throw DomainError(std::string(where) + ": " + name + " = " + std::to_string(i) + " outside [0, " +
                          std::to_string(N) + "]");
    }
}

std::int64_t exact_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Largest term of 2F1(-n,-x;-N;1/p) in log form, to size the working precision.
long series_bits(int n, int x, int N, double p, int target_bits) {
    const double log_peak = specfun::hyp2f1_log_max_term(-n, -x, -N, 1.0 / p);
    return static_cast<long>(target_bits + std::max(0.0, log_peak / std::log(2.0)) + std::log2(n + 2.0)) + 32;
}

}  // namespace

KravchukMatrix kravchuk_matrix(int N) {
    if (N < 0) {
        throw DomainError("kravchuk_matrix: negative order");
    }
    if (N > kMaxExactOrder) {
        throw RangeError("kravchuk_matrix: order " + std::to_string(N) + " exceeds the exact limit " +
                         std::to_string(kMaxExactOrder));
    }
    KravchukMatrix m{N, IntMatrix::Zero(N + 1, N + 1)};
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k <= i; ++k) {
                const std::int64_t t = exact_binomial(j, k) * exact_binomial(N - j, i - k);
                s += (k % 2 == 0) ? t : -t;
            }
            m.entries(i, j) = s;
        }
    }
    return m;
}

double kravchuk_polynomial(int n, int x, int N, double p) {
    if (N < 0) {
        throw DomainError("kravchuk_polynomial: negative N");
    }
    check_p(p, "kravchuk_polynomial");
    check_index(n, N, "n", "kravchuk_polynomial");
    check_index(x, N, "x", "kravchuk_polynomial");
    const LogScaledReal f =
        specfun::hyp2f1_terminating_mp(-n, -x, -N, {1.0, p}, series_bits(n, x, N, p, 96));
    const LogScaledReal prefactor = LogScaledReal::from_log(n % 2 == 0 ? 1 : -1, 0.0) *
                                    specfun::log_binomial(N, n) * LogScaledReal::from_double(p).pow(n);
    return (prefactor * f).to_double();
}

double kravchuk_function(int n, int x, int N, double p) {
    if (N < 0) {
        throw DomainError("kravchuk_function: negative N");
    }
    check_p(p, "kravchuk_function");
    check_index(n, N, "n", "kravchuk_function");
    check_index(x, N, "x", "kravchuk_function");
    // phi = (-1)^n sqrt(C(N,x) C(N,n) p^(x+n) (1-p)^(N-x-n)) 2F1(-n,-x;-N;1/p)
    const LogScaledReal weight =
        (specfun::log_binomial(N, x) * specfun::log_binomial(N, n) * LogScaledReal::from_double(p).pow(x + n) *
         LogScaledReal::from_double(1.0 - p).pow(N - x - n))
            .sqrt();
    const LogScaledReal scale = n % 2 == 0 ? weight : -weight;
    return specfun::scaled_hyp2f1_terminating(-n, -x, -N, {1.0, p}, scale, 64).to_double();
}

std::vector<double> kravchuk_function_row(int N, double p, int n) {
    if (N < 0) {
        throw DomainError("kravchuk_function_row: negative N");
    }
    check_p(p, "kravchuk_function_row");
    check_index(n, N, "n", "kravchuk_function_row");
    std::vector<double> row(N + 1, 0.0);
    if (N == 0) {
        row[0] = 1.0;
        return row;
    }

    // The normalized function f(x) = (-1)^n phi_n(x - Np) satisfies, at fixed n,
    //   a_x f(x+1) = (b_x - n) f(x) - a_{x-1} f(x-1)
    // with a_x = sqrt(p q (x+1)(N-x)) and b_x = p (N-x) + q x.
    const double q = 1.0 - p;
    auto a = [&](int x) {
        if (x < 0 || x >= N) {
            return 0.0;
        }
        return std::sqrt(p * q * (x + 1.0) * (N - x));
    };
    auto b = [&](int x) { return p * (N - x) + q * x; };

    // Join point: where the recurrence is most oscillatory, so neither
    // direction has to cross a turning point into a decaying region.
    int join = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int x = 0; x <= N; ++x) {
        const double d = b(x) - n;
        const double s = a(x) + a(x - 1);
        const double v = d * d - s * s;
        if (v < best) {
            best = v;
            join = x;
        }
    }

    // Values are kept as mantissa * exp(offset) so edge values far below the
    // double range do not flush to zero before the recurrence lifts them.
    std::vector<double> mant(N + 1, 0.0);
    std::vector<double> off(N + 1, 0.0);
    constexpr double kRescale = 1e200;

    const double log_f0 =
        0.5 * (specfun::log_binomial(N, n).log_magnitude + n * std::log(p) + (N - n) * std::log(q));
    {
        double prev = 0.0;
        double cur = 1.0;
        double shift = log_f0;
        mant[0] = cur;
        off[0] = shift;
        for (int x = 0; x < join; ++x) {
            double next = ((b(x) - n) * cur - a(x - 1) * prev) / a(x);
            prev = cur;
            cur = next;
            if (std::abs(cur) > kRescale) {
                prev /= kRescale;
                cur /= kRescale;
                shift += std::log(kRescale);
            }
            mant[x + 1] = cur;
            off[x + 1] = shift;
        }
    }
    if (join < N) {
        const double log_fN =
            0.5 * (specfun::log_binomial(N, n).log_magnitude + (N - n) * std::log(p) + n * std::log(q));
        double prev = 0.0;
        double cur = (n % 2 == 0) ? 1.0 : -1.0;
        double shift = log_fN;
        mant[N] = cur;
        off[N] = shift;
        for (int x = N; x > join + 1; --x) {
            double next = ((b(x) - n) * cur - a(x) * prev) / a(x - 1);
            prev = cur;
            cur = next;
            if (std::abs(cur) > kRescale) {
                prev /= kRescale;
                cur /= kRescale;
                shift += std::log(kRescale);
            }
            mant[x - 1] = cur;
            off[x - 1] = shift;
        }
    }

    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    for (int x = 0; x <= N; ++x) {
        row[x] = mant[x] == 0.0 ? 0.0 : sign * mant[x] * std::exp(off[x]);
    }
    return row;
}

KravchukFunctionTable::KravchukFunctionTable(int N, double p) : N_(N), p_(p), values_(N + 1, N + 1) {
    for (int n = 0; n <= N; ++n) {
        const std::vector<double> row = kravchuk_function_row(N, p, n);
        for (int l = 0; l <= N; ++l) {
            values_(n, l) = row[l];
        }
    }
}

KravchukFunctionTable kravchuk_function_table(int N, double p) {
    check_p(p, "kravchuk_function_table");
    if (N < 0 || N > kMaxTableOrder) {
        throw DomainError("kravchuk_function_table: N = " + std::to_string(N) + " outside [0, " +
                          std::to_string(kMaxTableOrder) + "]");
    }
    return KravchukFunctionTable(N, p);
}

}  // namespace qkt::kravchuk
