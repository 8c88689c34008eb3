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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qkt/errors.hpp"

using qkt::specfun::hyp2f1_terminating;
using qkt::specfun::hyp2f1_terminating_mp;
using qkt::specfun::log_binomial;
using qkt::specfun::LogScaledReal;
using qkt::specfun::pochhammer_ratio;

TEST(LogScaledReal, ZeroEncoding) {
    const LogScaledReal z = LogScaledReal::zero();
    EXPECT_EQ(z.sign, 0);
    EXPECT_TRUE(std::isinf(z.log_magnitude));
    EXPECT_LT(z.log_magnitude, 0.0);
    EXPECT_EQ(z.to_double(), 0.0);
    EXPECT_TRUE(LogScaledReal::from_double(0.0).is_zero());
}

TEST(LogScaledReal, MultiplyDivideComposeSignsAndLogs) {
    const LogScaledReal a = LogScaledReal::from_double(-3.0);
    const LogScaledReal b = LogScaledReal::from_double(0.5);
    EXPECT_NEAR((a * b).to_double(), -1.5, 1e-15);
    EXPECT_NEAR((a / b).to_double(), -6.0, 1e-14);
    EXPECT_NEAR((a * b).log_magnitude, a.log_magnitude + b.log_magnitude, 1e-15);
    EXPECT_EQ((a * LogScaledReal::zero()).sign, 0);
    EXPECT_THROW(a / LogScaledReal::zero(), qkt::DomainError);
    EXPECT_NEAR(a.pow(3).to_double(), -27.0, 1e-12);
    EXPECT_NEAR(a.pow(2).to_double(), 9.0, 1e-13);
    EXPECT_NEAR(b.pow(-2).to_double(), 4.0, 1e-14);
    EXPECT_NEAR(LogScaledReal::from_double(9.0).sqrt().to_double(), 3.0, 1e-14);
    EXPECT_THROW(a.sqrt(), qkt::DomainError);
}

TEST(LogBinomial, Examples) {
    EXPECT_NEAR(log_binomial(3, 1).log_magnitude, std::log(3.0), 1e-15);
    EXPECT_EQ(log_binomial(3, 1).sign, 1);
    EXPECT_TRUE(log_binomial(5, 6).is_zero());
    EXPECT_TRUE(log_binomial(5, -1).is_zero());
    EXPECT_THROW(log_binomial(-1, 0), qkt::DomainError);
}

TEST(LogBinomial, CentralBinomial64AgainstExactInteger) {
    const double exact = oracle::binomial(64, 32);
    const double got = log_binomial(64, 32).to_double();
    EXPECT_LT(std::abs(got - exact) / exact, 1e-13);
}

TEST(LogBinomial, RoundTripAgainstExactIntegersUpTo64) {
    double worst = 0.0;
    for (int n = 0; n <= 64; ++n) {
        for (int k = 0; k <= n; ++k) {
            const double exact = oracle::binomial(n, k);
            worst = std::max(worst, std::abs(log_binomial(n, k).to_double() - exact) / exact);
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(PochhammerRatio, Examples) {
    EXPECT_NEAR(pochhammer_ratio(-1, -3, 1).to_double(), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(pochhammer_ratio(7, -3, 0).to_double(), 1.0);
    EXPECT_NEAR(pochhammer_ratio(-2, -5, 2).to_double(), 0.1, 1e-15);
    EXPECT_TRUE(pochhammer_ratio(-2, -5, 3).is_zero());
}

TEST(PochhammerRatio, MatchesDirectProduct) {
    std::mt19937 gen(11);
    std::uniform_int_distribution<int> par(-25, 25);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int a = par(gen);
        const int b = par(gen);
        const int k = std::uniform_int_distribution<int>(0, 20)(gen);
        bool zero_den = false;
        for (int i = 0; i < k; ++i) {
            zero_den |= (b + i == 0);
        }
        if (zero_den) {
            EXPECT_THROW(pochhammer_ratio(a, b, k), qkt::DomainError);
            continue;
        }
        const long double ref = oracle::pochhammer_ratio(a, b, k);
        const double got = pochhammer_ratio(a, b, k).to_double();
        if (ref == 0.0L) {
            EXPECT_EQ(got, 0.0);
        } else {
            EXPECT_LT(std::abs((got - static_cast<double>(ref)) / static_cast<double>(ref)), 1e-13);
        }
        ++checked;
    }
    EXPECT_GT(checked, 1000);
}

TEST(PochhammerRatio, VanishingDenominatorIsDomainError) {
    EXPECT_THROW(pochhammer_ratio(1, -2, 3), qkt::DomainError);
    EXPECT_NO_THROW(pochhammer_ratio(1, -2, 2));
}

TEST(Hyp2F1, EmptySeriesIsOne) {
    EXPECT_EQ(hyp2f1_terminating(0, 5, -3, 0.7), 1.0);
    EXPECT_EQ(hyp2f1_terminating(0, -2, 4, -12.0), 1.0);
}

TEST(Hyp2F1, ZeroArgumentIsExactlyOne) {
    EXPECT_EQ(hyp2f1_terminating(-7, -3, -9, 0.0), 1.0);
}

TEST(Hyp2F1, TwoTermSeries) {
    for (int N = 1; N <= 12; ++N) {
        for (double z : {0.1, 0.5, 2.0, 17.0}) {
            EXPECT_NEAR(hyp2f1_terminating(-1, -1, -N, z), 1.0 - z / N, 1e-15 * (1 + z));
        }
    }
}

TEST(Hyp2F1, PfaffTransformCrossCheck) {
    // 2F1(a,b;c;z) = (1-z)^(-b) 2F1(c-a,b;c;z/(z-1)); the right side terminates through b.
    const double lhs = hyp2f1_terminating(-2, -2, -4, 2.0);
    const double rhs = std::pow(1.0 - 2.0, 2.0) * hyp2f1_terminating(-2, -4 + 2, -4, 2.0 / (2.0 - 1.0));
    EXPECT_NEAR(lhs, rhs, 1e-13);
    EXPECT_NEAR(lhs, 1.0 - 2.0 + 1.0 / 6.0 * 4.0, 1e-13);

    std::mt19937 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = std::uniform_int_distribution<int>(0, 10)(gen);
        const int b = -std::uniform_int_distribution<int>(0, 10)(gen);
        const int c = -std::uniform_int_distribution<int>(std::max(m, -b), 14)(gen);
        const double z = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
        const double l = hyp2f1_terminating(-m, b, c, z);
        const double r = std::pow(1.0 - z, -b) * hyp2f1_terminating(b, c + m, c, z / (z - 1.0));
        EXPECT_NEAR(l, r, 1e-12 * std::max(1.0, std::abs(l))) << "m=" << m << " b=" << b << " c=" << c;
    }
}

TEST(Hyp2F1, MatchesLongDoubleOracle) {
    std::mt19937 gen(9);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = std::uniform_int_distribution<int>(0, 12)(gen);
        const int b = std::uniform_int_distribution<int>(-15, 15)(gen);
        const int c = -std::uniform_int_distribution<int>(m, 20)(gen);
        const double z = std::uniform_real_distribution<double>(-2.0, 2.0)(gen);
        const long double ref = oracle::hyp2f1(-m, b, c, z);
        EXPECT_NEAR(hyp2f1_terminating(-m, b, c, z), static_cast<double>(ref),
                    1e-12 * std::max(1.0L, std::abs(ref)));
    }
}

TEST(Hyp2F1, DomainErrors) {
    EXPECT_THROW(hyp2f1_terminating(1, -2, -3, 0.5), qkt::DomainError);
    EXPECT_THROW(hyp2f1_terminating(-3, -5, -1, 0.5), qkt::DomainError);
    // The series stops at k = 1 through b, before (c)_k reaches zero.
    EXPECT_NO_THROW(hyp2f1_terminating(-5, -1, -2, 0.5));
}

TEST(Hyp2F1, ArgumentSymmetry) {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 500; ++trial) {
        const int a = -std::uniform_int_distribution<int>(0, 20)(gen);
        const int b = -std::uniform_int_distribution<int>(0, 20)(gen);
        const int c = -std::uniform_int_distribution<int>(std::max(-a, -b), 40)(gen);
        const double z = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
        const double ab = hyp2f1_terminating(a, b, c, z);
        const double ba = hyp2f1_terminating(b, a, c, z);
        EXPECT_LE(std::abs(ab - ba), 1e-12 * std::abs(ab)) << a << " " << b << " " << c << " " << z;
    }
}

TEST(Hyp2F1, DlmfLinearTransformation) {
    // 2F1(-m,b;c;z) = (c-b)_m/(c)_m 2F1(-m,b;b-c-m+1;1-z) for b >= 0 or b < -m.
    std::mt19937 gen(21);
    int checked = 0;
    while (checked < 500) {
        const int m = std::uniform_int_distribution<int>(0, 15)(gen);
        const bool positive_b = std::uniform_int_distribution<int>(0, 1)(gen) == 1;
        const int b = positive_b ? std::uniform_int_distribution<int>(0, 20)(gen)
                                 : -std::uniform_int_distribution<int>(m + 1, m + 20)(gen);
        const int c = std::uniform_int_distribution<int>(-40, 40)(gen);
        const int c2 = b - c - m + 1;
        bool admissible = true;
        for (int k = 0; k < m; ++k) {
            admissible &= (c + k != 0) && (c2 + k != 0);
        }
        if (!admissible) {
            continue;
        }
        const double z = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
        const double lhs = hyp2f1_terminating(-m, b, c, z);
        const double rhs = pochhammer_ratio(c - b, c, m).to_double() * hyp2f1_terminating(-m, b, c2, 1.0 - z);
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(lhs))
            << "m=" << m << " b=" << b << " c=" << c << " z=" << z;
        ++checked;
    }
}

TEST(Hyp2F1, MultiprecisionAgreesAndSurvivesCancellation) {
    // 2F1(-n,-x;-N;1/p) at N = 60, p = 0.5 cancels by ~2^60; the value times
    // its Kravchuk prefactor is O(1).
    const qkt::specfun::LogScaledReal v = hyp2f1_terminating_mp(-3, -2, -5, {1.0, 4.0}, 200);
    EXPECT_NEAR(v.to_double(), static_cast<double>(oracle::hyp2f1(-3, -2, -5, 0.25L)), 1e-15);

    const qkt::specfun::LogScaledReal lo = hyp2f1_terminating_mp(-30, -30, -60, {1.0, 0.5}, 128);
    const qkt::specfun::LogScaledReal hi = hyp2f1_terminating_mp(-30, -30, -60, {1.0, 0.5}, 512);
    EXPECT_EQ(lo.sign, hi.sign);
    EXPECT_NEAR(lo.log_magnitude, hi.log_magnitude, 1e-12);
}

TEST(Hyp2F1, ScaledSeriesPicksEnoughPrecision) {
    // phi_30(30 - 60 p) at p = 1/2 via the scaled series against a 1024-bit run.
    const LogScaledReal scale =
        (log_binomial(60, 30) * log_binomial(60, 30) * LogScaledReal::from_double(0.5).pow(60)).sqrt();
    const double adaptive = qkt::specfun::scaled_hyp2f1_terminating(-30, -30, -60, {1.0, 0.5}, scale).to_double();
    const double reference = (scale * hyp2f1_terminating_mp(-30, -30, -60, {1.0, 0.5}, 1024)).to_double();
    EXPECT_NEAR(adaptive, reference, 1e-15);
}
