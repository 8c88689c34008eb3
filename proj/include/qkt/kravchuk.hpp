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

#ifndef QKT_KRAVCHUK_HPP
#define QKT_KRAVCHUK_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qkt::kravchuk {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest order with exact 64-bit Kravchuk matrices.
constexpr int kMaxExactOrder = 30;

/// Largest order accepted by kravchuk_function_table.
constexpr int kMaxTableOrder = 512;

/// Integer Kravchuk matrix of order N. Column j holds the coefficients of
/// (1+x)^(N-j) (1-x)^j.
struct KravchukMatrix {
    int N = 0;
    IntMatrix entries;
};

/// RangeError for N > kMaxExactOrder.
KravchukMatrix kravchuk_matrix(int N);

/// k_n^(p)(x, N) = (-1)^n C(N,n) p^n 2F1(-n, -x; -N; 1/p).
///
/// The series is summed in multiprecision, so the value is accurate even
/// where the double sum loses every digit.
double kravchuk_polynomial(int n, int x, int N, double p);

/// Single Kravchuk function value phi_n^(p)(x - Np, N) from the closed form.
///
/// Accurate to about 1e-16 absolute. Intended for spot values; whole rows are
/// much cheaper through kravchuk_function_row.
double kravchuk_function(int n, int x, int N, double p);

/// Row n of the Kravchuk function table: phi_n^(p)(l - Np, N) for l = 0..N.
///
/// O(N) per row via a three-term recurrence run inward from both ends.
std::vector<double> kravchuk_function_row(int N, double p, int n);

/// Dense table with entry (n, l) = phi_n^(p)(l - Np, N). Rows are orthonormal.
class KravchukFunctionTable {
   public:
    KravchukFunctionTable(int N, double p);

    int order() const {
        return N_;
    }
    double p() const {
        return p_;
    }
    double operator()(int n, int l) const {
        return values_(n, l);
    }
    const Eigen::MatrixXd &values() const {
        return values_;
    }

   private:
    int N_;
    double p_;
    Eigen::MatrixXd values_;
};

/// DomainError unless 0 < p < 1 and 0 <= N <= kMaxTableOrder.
KravchukFunctionTable kravchuk_function_table(int N, double p);

}  // namespace qkt::kravchuk

#endif  // QKT_KRAVCHUK_HPP
