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


#ifndef QKT_IMAGING_HPP
#define QKT_IMAGING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace qkt::imaging {

enum class Method { FFT, KT };
enum class Domain { RealSpace, KSpace };

std::string to_string(Method m);
/// "fft" or "kt", case-insensitive. DomainError otherwise.
Method parse_method(const std::string &name);

/// height x width grid; pixels(row, col).
struct ImageGrid {
    Domain domain = Domain::RealSpace;
    Eigen::MatrixXcd pixels;

    int width() const {
        return static_cast<int>(pixels.cols());
    }
    int height() const {
        return static_cast<int>(pixels.rows());
    }
    static ImageGrid real(const Eigen::MatrixXd &values);
};

/// 2-D unitary DFT (FFT) or 2-D Kravchuk transform of order alpha (KT).
/// ShapeError on an empty image; DomainError for a k-space input.
ImageGrid forward_to_kspace(const ImageGrid &img, Method method, double alpha = 1.0);

/// Adds i.i.d. complex Gaussian noise whose complex RMS is level * RMS(k),
/// i.e. level * RMS(k) / sqrt(2) on each of re and im. Deterministic per seed.
/// DomainError for negative level or a real-space input.
ImageGrid add_kspace_noise(const ImageGrid &k, double level, std::uint64_t seed);

/// Inverse transform back to real space: the adjoint DFT, or the Kravchuk
/// transform of order 4 - alpha. The real part is kept; the RMS of the
/// discarded imaginary part goes to *imag_residual when given. DomainError
/// for a real-space input.
ImageGrid reconstruct(const ImageGrid &k, Method method, double alpha = 1.0, double *imag_residual = nullptr);

/// SSIM settings: uniform window x window blocks at stride 1, stabilizers
/// (K1 L)^2 and (K2 L)^2 with L the dynamic range of the reference.
struct SsimOptions {
    int window = 8;
    double K1 = 0.01;
    double K2 = 0.03;
};

struct QualityReport {
    double mse = 0.0;
    /// +inf when mse = 0.
    double psnr = 0.0;
    double ssim = 1.0;
};

/// Compares real parts. PSNR peak is the reference dynamic range.
/// ShapeError on mismatched shapes or images smaller than the window.
QualityReport quality(const ImageGrid &reference, const ImageGrid &candidate, const SsimOptions &options = {});

/// RMS of |pixel| over the grid.
double rms(const Eigen::MatrixXcd &m);

/// Synthetic test object on [0,255]: concentric ellipses with inserts and
/// a few bright point features.
Eigen::MatrixXd phantom(int size = 128);

}  // namespace qkt::imaging

#endif  // QKT_IMAGING_HPP
