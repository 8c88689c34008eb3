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


#include "qkt/transforms.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qkt/diagnostics.hpp"
#include "qkt/errors.hpp"
#include "qkt/kravchuk.hpp"

namespace qkt::transforms {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinP = 1e-12;

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Complex i_pow(int m) {
    return kIPow[((m % 4) + 4) % 4];
}

void check_order(int S, const char *where) {
    if (S < 0) {
        throw DomainError(std::string(where) + ": negative order S = " + std::to_string(S));
    }
}

// Kernel entries for alpha in (0,2]; p is clamped to the exact reversal limit once
// 1 - p is no longer representable.
Eigen::MatrixXcd kt_matrix_half(int S, double alpha) {
    const int n = S + 1;
    const double s = std::sin(kPi * alpha / 4.0);
    const double p = s * s;
    const Complex global = std::polar(1.0, -kPi * alpha * S / 4.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    if (p < kMinP) {
        warn("kt_kernel: alpha = " + std::to_string(alpha) + " gives p below 1e-12; using the identity");
        return Eigen::MatrixXcd::Identity(n, n);
    }
    if (alpha == 2.0 || 1.0 - p < kMinP) {
        // phi_k^(1)(l - S) = (-1)^k delta_(l, S-k)
        for (int k = 0; k <= S; ++k) {
            const int l = S - k;
            m(k, l) = global * i_pow(l - k) * ((k % 2 == 0) ? 1.0 : -1.0);
        }
        if (alpha == 2.0) {
            // The phases cancel exactly at alpha = 2; keep the entries exact.
            m = m.unaryExpr([](const Complex &z) { return Complex(std::round(z.real()), std::round(z.imag())); });
        }
        return m;
    }
    for (int k = 0; k <= S; ++k) {
        const std::vector<double> row = kravchuk::kravchuk_function_row(S, p, k);
        for (int l = 0; l <= S; ++l) {
            m(k, l) = global * i_pow(l - k) * row[l];
        }
    }
    return m;
}

}  // namespace

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::KT:
            return "KT";
        case KernelKind::DFT:
            return "DFT";
        case KernelKind::DFRFT:
            return "DFRFT";
    }
    return "?";
}

TransformKernel kt_kernel(int S, double alpha) {
    check_order(S, "kt_kernel");
    if (!(alpha >= 0.0 && alpha <= 4.0)) {
        throw DomainError("kt_kernel: alpha = " + std::to_string(alpha) + " outside [0,4]");
    }
    TransformKernel k{KernelKind::KT, S, alpha, {}};
    if (alpha == 0.0 || alpha == 4.0) {
        k.matrix = Eigen::MatrixXcd::Identity(S + 1, S + 1);
    } else if (alpha <= 2.0) {
        k.matrix = kt_matrix_half(S, alpha);
    } else {
        const Eigen::MatrixXcd base = kt_matrix_half(S, alpha - 2.0);
        k.matrix = base.rowwise().reverse();
    }
    return k;
}

TransformKernel dft_kernel(int S) {
    check_order(S, "dft_kernel");
    const int n = S + 1;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    TransformKernel k{KernelKind::DFT, S, 1.0, Eigen::MatrixXcd(n, n)};
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const long long m = (static_cast<long long>(r) * c) % n;
            k.matrix(r, c) = std::polar(norm, -2.0 * kPi * static_cast<double>(m) / n);
        }
    }
    return k;
}

TransformKernel dfrft_kernel(int S, double alpha) {
    check_order(S, "dfrft_kernel");
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("dfrft_kernel: alpha = " + std::to_string(alpha) + " outside (0,1]");
    }
    if (alpha == 1.0) {
        TransformKernel k = dft_kernel(S);
        k.kind = KernelKind::DFRFT;
        return k;
    }
    const int n = S + 1;
    const double t = kPi * alpha / 2.0;
    const double cot = std::cos(t) / std::sin(t);
    const Complex c = std::sqrt(Complex(std::sin(t), -std::cos(t)) / static_cast<double>(n));
    std::vector<Complex> chirp(n);
    for (int j = 0; j < n; ++j) {
        chirp[j] = std::polar(1.0, 0.5 * static_cast<double>(j) * j * cot);
    }
    TransformKernel k{KernelKind::DFRFT, S, alpha, Eigen::MatrixXcd(n, n)};
    for (int r = 0; r < n; ++r) {
        for (int col = 0; col < n; ++col) {
            const long long m = (static_cast<long long>(r) * col) % n;
            k.matrix(r, col) = c * chirp[r] * std::polar(1.0, -2.0 * kPi * static_cast<double>(m) / n) * chirp[col];
        }
    }
    return k;
}

ComplexSequence apply(const TransformKernel &kernel, const ComplexSequence &x) {
    if (x.size() != kernel.matrix.cols()) {
        throw ShapeError("apply: sequence length " + std::to_string(x.size()) + " does not match kernel order S = " +
                         std::to_string(kernel.S) + " (length " + std::to_string(kernel.matrix.cols()) + ")");
    }
    return kernel.matrix * x;
}

ComplexGrid apply_2d(const TransformKernel &row_kernel, const TransformKernel &column_kernel, const ComplexGrid &image) {
    if (image.size() == 0) {
        throw ShapeError("2-D transform: empty grid");
    }
    if (row_kernel.matrix.cols() != image.cols() || column_kernel.matrix.cols() != image.rows()) {
        throw ShapeError("2-D transform: kernel orders do not match the " + std::to_string(image.rows()) + "x" +
                         std::to_string(image.cols()) + " grid");
    }
    const ComplexGrid rows_done = image * row_kernel.matrix.transpose();
    return column_kernel.matrix * rows_done;
}

ComplexGrid kt_2d(const ComplexGrid &image, double alpha) {
    if (image.size() == 0) {
        throw ShapeError("kt_2d: empty grid");
    }
    const TransformKernel row_kernel = kt_kernel(static_cast<int>(image.cols()) - 1, alpha);
    if (image.rows() == image.cols()) {
        return apply_2d(row_kernel, row_kernel, image);
    }
    return apply_2d(row_kernel, kt_kernel(static_cast<int>(image.rows()) - 1, alpha), image);
}

}  // namespace qkt::transforms
