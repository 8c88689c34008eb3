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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qkt/errors.hpp"

using namespace qkt::kravchuk;

namespace {

// Coefficients of (1+x)^(N-j) (1-x)^j by repeated polynomial multiplication.
std::vector<std::int64_t> generating_column(int N, int j) {
    std::vector<std::int64_t> p{1};
    auto times = [&](int sign) {
        std::vector<std::int64_t> q(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i];
            q[i + 1] += sign * p[i];
        }
        p = q;
    };
    for (int i = 0; i < N - j; ++i) {
        times(+1);
    }
    for (int i = 0; i < j; ++i) {
        times(-1);
    }
    return p;
}

double scaled_sup_error(int N, int n) {
    const std::vector<double> row = kravchuk_function_row(N, 0.5, n);
    const double scale = std::sqrt(N / 2.0);
    double worst = 0.0;
    for (int l = 0; l <= N; ++l) {
        const double x = (l - N / 2.0) / scale;
        if (std::abs(x) > 3.0) {
            continue;
        }
        worst = std::max(worst, std::abs(std::pow(N / 2.0, 0.25) * row[l] - oracle::hermite_function(n, x)));
    }
    return worst;
}

}  // namespace

TEST(KravchukMatrix, OrderThreeMatchesPrintedMatrix) {
    IntMatrix expected(4, 4);
    expected << 1, 1, 1, 1, 3, 1, -1, -3, 3, -1, -1, 3, 1, -1, 1, -1;
    EXPECT_EQ(kravchuk_matrix(3).entries, expected);
}

TEST(KravchukMatrix, OrderOne) {
    IntMatrix expected(2, 2);
    expected << 1, 1, 1, -1;
    EXPECT_EQ(kravchuk_matrix(1).entries, expected);
    EXPECT_EQ(kravchuk_matrix(0).entries, IntMatrix::Ones(1, 1));
}

TEST(KravchukMatrix, SquareIsPowerOfTwoIdentity) {
    for (int N = 0; N <= kMaxExactOrder; ++N) {
        const IntMatrix k = kravchuk_matrix(N).entries;
        const IntMatrix sq = k * k;
        EXPECT_EQ(sq, IntMatrix::Identity(N + 1, N + 1) * (std::int64_t{1} << N)) << "N=" << N;
    }
}

TEST(KravchukMatrix, EdgeRowsColumnsAndFourFoldSymmetry) {
    for (int N : {1, 2, 5, 12, 30}) {
        const IntMatrix k = kravchuk_matrix(N).entries;
        for (int j = 0; j <= N; ++j) {
            EXPECT_EQ(k(0, j), 1);
            EXPECT_EQ(k(N, j), j % 2 == 0 ? 1 : -1);
            EXPECT_EQ(k(j, 0), static_cast<std::int64_t>(oracle::binomial_exact(N, j)));
        }
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                const std::int64_t a = std::abs(k(i, j));
                EXPECT_EQ(a, std::abs(k(N - i, j)));
                EXPECT_EQ(a, std::abs(k(i, N - j)));
                EXPECT_EQ(a, std::abs(k(N - i, N - j)));
            }
        }
    }
}

TEST(KravchukMatrix, ColumnsAreGeneratingPolynomialCoefficients) {
    for (int N : {4, 9, 17, 30}) {
        const IntMatrix k = kravchuk_matrix(N).entries;
        for (int j = 0; j <= N; ++j) {
            const std::vector<std::int64_t> col = generating_column(N, j);
            for (int i = 0; i <= N; ++i) {
                EXPECT_EQ(k(i, j), col[i]);
            }
        }
    }
}

TEST(KravchukMatrix, LimitsAreEnforced) {
    EXPECT_THROW(kravchuk_matrix(31), qkt::RangeError);
    EXPECT_THROW(kravchuk_matrix(-1), qkt::DomainError);
}

TEST(KravchukPolynomial, DegreeZeroIsOne) {
    for (int N : {1, 7, 40}) {
        for (int x = 0; x <= N; ++x) {
            for (double p : {0.1, 0.5, 0.9}) {
                EXPECT_NEAR(kravchuk_polynomial(0, x, N, p), 1.0, 1e-15);
            }
        }
    }
}

TEST(KravchukPolynomial, SymmetricCaseIsScaledKravchukMatrix) {
    // With the hypergeometric normalisation, K_ij = (-2)^i k_i^(1/2)(j, N).
    for (int N = 1; N <= 12; ++N) {
        const IntMatrix k = kravchuk_matrix(N).entries;
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                const double v = std::pow(-2.0, i) * kravchuk_polynomial(i, j, N, 0.5);
                EXPECT_NEAR(v, static_cast<double>(k(i, j)), 1e-12 * std::max<double>(1.0, std::abs(k(i, j))));
            }
        }
    }
}

TEST(KravchukPolynomial, IndexExchange) {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 400; ++trial) {
        const int N = std::uniform_int_distribution<int>(1, 20)(gen);
        const int n = std::uniform_int_distribution<int>(0, N)(gen);
        const int x = std::uniform_int_distribution<int>(0, N)(gen);
        const double p = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
        const double lhs = std::pow(-1.0, x) * oracle::binomial(N, x) * std::pow(p, x) * kravchuk_polynomial(n, x, N, p);
        const double rhs = std::pow(-1.0, n) * oracle::binomial(N, n) * std::pow(p, n) * kravchuk_polynomial(x, n, N, p);
        EXPECT_LE(std::abs(lhs - rhs), 1e-11 * std::max(std::abs(lhs), 1e-300)) << N << " " << n << " " << x << " " << p;
    }
}

TEST(KravchukPolynomial, SymmetricOrthogonality) {
    // 2^-N sum_j C(N,j) k_n k_m = 2^(-2n) C(N,n) delta_nm at p = 1/2.
    for (int N : {1, 5, 16, 40}) {
        std::vector<std::vector<double>> k(N + 1, std::vector<double>(N + 1));
        for (int n = 0; n <= N; ++n) {
            for (int j = 0; j <= N; ++j) {
                k[n][j] = kravchuk_polynomial(n, j, N, 0.5);
            }
        }
        for (int n = 0; n <= N; ++n) {
            for (int m = 0; m <= N; ++m) {
                double s = 0.0;
                for (int j = 0; j <= N; ++j) {
                    s += oracle::binomial(N, j) * k[n][j] * k[m][j];
                }
                s /= std::pow(2.0, N);
                const double dn = std::pow(2.0, -2 * n) * oracle::binomial(N, n);
                const double dm = std::pow(2.0, -2 * m) * oracle::binomial(N, m);
                EXPECT_NEAR(s, n == m ? dn : 0.0, 1e-10 * std::sqrt(dn * dm));
            }
        }
    }
}

TEST(KravchukPolynomial, BinomialWeightOrthogonality) {
    // sum_x C(N,x) p^x (1-p)^(N-x) k_n k_m = C(N,n) p^n (1-p)^n delta_nm.
    for (double p : {0.3, 0.5, 0.7}) {
        for (int N : {3, 12, 25, 40}) {
            std::vector<std::vector<double>> k(N + 1, std::vector<double>(N + 1));
            for (int n = 0; n <= N; ++n) {
                for (int x = 0; x <= N; ++x) {
                    k[n][x] = kravchuk_polynomial(n, x, N, p);
                }
            }
            for (int n = 0; n <= N; ++n) {
                for (int m = 0; m <= N; ++m) {
                    double s = 0.0;
                    for (int x = 0; x <= N; ++x) {
                        s += oracle::binomial(N, x) * std::pow(p, x) * std::pow(1 - p, N - x) * k[n][x] * k[m][x];
                    }
                    const double dn = oracle::binomial(N, n) * std::pow(p * (1 - p), n);
                    const double dm = oracle::binomial(N, m) * std::pow(p * (1 - p), m);
                    EXPECT_NEAR(s, n == m ? dn : 0.0, 1e-10 * std::sqrt(dn * dm)) << p << " " << N << " " << n << " " << m;
                }
            }
        }
    }
}

TEST(KravchukPolynomial, DomainErrors) {
    EXPECT_THROW(kravchuk_polynomial(1, 1, 3, 0.0), qkt::DomainError);
    EXPECT_THROW(kravchuk_polynomial(1, 1, 3, 1.0), qkt::DomainError);
    EXPECT_THROW(kravchuk_polynomial(4, 1, 3, 0.5), qkt::DomainError);
    EXPECT_THROW(kravchuk_polynomial(1, -1, 3, 0.5), qkt::DomainError);
}

TEST(KravchukFunctions, SmallTableOrthonormalAndSignedSymmetric) {
    const KravchukFunctionTable t = kravchuk_function_table(5, 0.5);
    const Eigen::MatrixXd gram = t.values() * t.values().transpose();
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
    for (int n = 0; n <= 5; ++n) {
        for (int l = 0; l <= 5; ++l) {
            EXPECT_NEAR(t(n, l), ((n + l) % 2 == 0 ? 1.0 : -1.0) * t(l, n), 1e-14);
        }
    }
}

TEST(KravchukFunctions, SignedIndexExchangeForGeneralP) {
    for (double p : {0.2, 0.5, 0.85}) {
        const KravchukFunctionTable t = kravchuk_function_table(30, p);
        for (int n = 0; n <= 30; ++n) {
            for (int l = 0; l <= 30; ++l) {
                EXPECT_NEAR(t(n, l), ((n + l) % 2 == 0 ? 1.0 : -1.0) * t(l, n), 1e-13);
            }
        }
    }
}

TEST(KravchukFunctions, RecurrenceMatchesClosedForm) {
    for (int N : {1, 6, 40, 90}) {
        for (double p : {0.05, 0.3, 0.5, 0.95}) {
            for (int n = 0; n <= N; n += (N > 40 ? 7 : 1)) {
                const std::vector<double> row = kravchuk_function_row(N, p, n);
                for (int l = 0; l <= N; ++l) {
                    EXPECT_NEAR(row[l], kravchuk_function(n, l, N, p), 1e-13) << N << " " << p << " " << n << " " << l;
                }
            }
        }
    }
}

TEST(KravchukFunctions, ClosedFormMatchesPolynomialDefinition) {
    const int N = 9;
    for (double p : {0.25, 0.6}) {
        for (int n = 0; n <= N; ++n) {
            for (int x = 0; x <= N; ++x) {
                const double def = std::sqrt(std::tgamma(n + 1.0) * std::tgamma(N - n + 1.0) /
                                             (std::tgamma(x + 1.0) * std::tgamma(N - x + 1.0))) *
                                   std::sqrt(std::pow(p, x - n) * std::pow(1 - p, N - n - x)) *
                                   kravchuk_polynomial(n, x, N, p);
                EXPECT_NEAR(kravchuk_function(n, x, N, p), def, 1e-13);
            }
        }
    }
}

TEST(KravchukFunctions, RowsHaveUnitNorm) {
    for (double p : {0.01, 0.3, 0.5, 0.7, 0.99}) {
        for (int N : {1, 2, 17, 64, 128}) {
            for (int n = 0; n <= N; ++n) {
                const std::vector<double> row = kravchuk_function_row(N, p, n);
                double s = 0.0;
                for (double v : row) {
                    s += v * v;
                }
                EXPECT_NEAR(s, 1.0, 1e-12) << "p=" << p << " N=" << N << " n=" << n;
            }
        }
    }
}

TEST(KravchukFunctions, LargeTablesStayOrthonormal) {
    for (double p : {0.5, 0.13}) {
        const KravchukFunctionTable t = kravchuk_function_table(kMaxTableOrder, p);
        const Eigen::MatrixXd gram = t.values() * t.values().transpose();
        EXPECT_LT((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(KravchukFunctions, ExtremeWeightsDoNotUnderflowTheRow) {
    const std::vector<double> row = kravchuk_function_row(1000, 1e-6, 500);
    double s = 0.0;
    for (double v : row) {
        s += v * v;
        EXPECT_TRUE(std::isfinite(v));
    }
    EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(KravchukFunctions, HermiteLimit) {
    double previous[5] = {1e9, 1e9, 1e9, 1e9, 1e9};
    for (int N : {64, 256, 1024}) {
        for (int n = 0; n <= 4; ++n) {
            const double e = scaled_sup_error(N, n);
            EXPECT_LT(e, previous[n]) << "N=" << N << " n=" << n;
            previous[n] = e;
            if (N == 1024) {
                EXPECT_LT(e, 1e-2) << "n=" << n;
            }
        }
    }
}

TEST(KravchukFunctions, DomainErrors) {
    EXPECT_THROW(kravchuk_function_table(4, 0.0), qkt::DomainError);
    EXPECT_THROW(kravchuk_function_table(4, 1.0), qkt::DomainError);
    EXPECT_THROW(kravchuk_function_table(kMaxTableOrder + 1, 0.5), qkt::DomainError);
    EXPECT_THROW(kravchuk_function_row(4, 0.5, 5), qkt::DomainError);
    EXPECT_THROW(kravchuk_function(0, 5, 4, 0.5), qkt::DomainError);
}
