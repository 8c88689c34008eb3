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


#ifndef QKT_TRANSFORMS_HPP
#define QKT_TRANSFORMS_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace qkt::transforms {

using Complex = std::complex<double>;
using ComplexSequence = Eigen::VectorXcd;
using ComplexGrid = Eigen::MatrixXcd;

enum class KernelKind { KT, DFT, DFRFT };

std::string to_string(KernelKind kind);

/// Dense (S+1)x(S+1) transform matrix; X = matrix * x.
struct TransformKernel {
    KernelKind kind = KernelKind::KT;
    int S = 0;
    double alpha = 0.0;
    Eigen::MatrixXcd matrix;
};

/// Fractional Kravchuk transform of order S.
///
/// For alpha in [0,2] the entry (k,l) is
///     exp(-i pi alpha S/4) i^(l-k) phi_k^(p)(l - Sp, S),  p = sin^2(pi alpha/4).
/// alpha = 2 is the index reversal X_k = x_(S-k). For alpha in (2,4] the
/// kernel is F^(alpha-2) followed by that reversal, which keeps
/// F^a F^b = F^(a+b) across the whole range; alpha = 4 is the identity.
/// When p < 1e-12 the kernel falls back to the identity and a warning is
/// issued. DomainError for alpha outside [0,4].
TransformKernel kt_kernel(int S, double alpha);

/// Unitary DFT, entry (k,l) = exp(-2 pi i k l/(S+1)) / sqrt(S+1).
TransformKernel dft_kernel(int S);

/// Fractional DFT with the chirp form
///     sqrt((sin t - i cos t)/(S+1)) exp(i k^2 cot(t)/2) exp(-2 pi i k l/(S+1)) exp(i l^2 cot(t)/2),
/// t = pi alpha/2. alpha = 1 returns dft_kernel exactly. DomainError for
/// alpha outside (0,1].
TransformKernel dfrft_kernel(int S, double alpha);

/// X = kernel * x. ShapeError on length mismatch.
ComplexSequence apply(const TransformKernel &kernel, const ComplexSequence &x);

/// Separable 2-D Kravchuk transform of an (R+1)x(C+1) grid: every row is
/// transformed with the order-C kernel, then every column with the order-R
/// kernel. ShapeError on an empty grid.
ComplexGrid kt_2d(const ComplexGrid &image, double alpha);

/// Same separable scheme with arbitrary kernels (row kernel of order C,
/// column kernel of order R).
ComplexGrid apply_2d(const TransformKernel &row_kernel, const TransformKernel &column_kernel,
                     const ComplexGrid &image);

}  // namespace qkt::transforms

#endif  // QKT_TRANSFORMS_HPP
