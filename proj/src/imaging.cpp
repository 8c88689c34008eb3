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


#include "qkt/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qkt/errors.hpp"
#include "qkt/transforms.hpp"

namespace qkt::imaging {

namespace {

void check_nonempty(const ImageGrid &g, const char *where) {
    if (g.pixels.size() == 0) {
        throw ShapeError(std::string(where) + ": empty image");
    }
}

transforms::TransformKernel adjoint(transforms::TransformKernel k) {
    k.matrix.adjointInPlace();
    return k;
}

}  // namespace

std::string to_string(Method m) {
    return m == Method::FFT ? "fft" : "kt";
}

Method parse_method(const std::string &name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "fft") {
        return Method::FFT;
    }
    if (s == "kt") {
        return Method::KT;
    }
    throw DomainError("unknown method '" + name + "' (expected fft or kt)");
}

ImageGrid ImageGrid::real(const Eigen::MatrixXd &values) {
    return {Domain::RealSpace, values.cast<std::complex<double>>()};
}

ImageGrid forward_to_kspace(const ImageGrid &img, Method method, double alpha) {
    check_nonempty(img, "forward_to_kspace");
    if (img.domain != Domain::RealSpace) {
        throw DomainError("forward_to_kspace: input is already in k-space");
    }
    ImageGrid out{Domain::KSpace, {}};
    if (method == Method::FFT) {
        out.pixels = transforms::apply_2d(transforms::dft_kernel(img.width() - 1), transforms::dft_kernel(img.height() - 1),
                                          img.pixels);
    } else {
        out.pixels = transforms::kt_2d(img.pixels, alpha);
    }
    return out;
}

double rms(const Eigen::MatrixXcd &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return std::sqrt(m.cwiseAbs2().sum() / static_cast<double>(m.size()));
}

ImageGrid add_kspace_noise(const ImageGrid &k, double level, std::uint64_t seed) {
    if (!(level >= 0.0) || !std::isfinite(level)) {
        throw DomainError("add_kspace_noise: level must be a non-negative number");
    }
    if (k.domain != Domain::KSpace) {
        throw DomainError("add_kspace_noise: input is not a k-space grid");
    }
    ImageGrid out = k;
    if (level == 0.0) {
        return out;
    }
    const double sigma = level * rms(k.pixels) / std::sqrt(2.0);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, sigma);
    for (Eigen::Index c = 0; c < out.pixels.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.pixels.rows(); ++r) {
            const double re = dist(gen);
            const double im = dist(gen);
            out.pixels(r, c) += std::complex<double>(re, im);
        }
    }
    return out;
}

ImageGrid reconstruct(const ImageGrid &k, Method method, double alpha, double *imag_residual) {
    check_nonempty(k, "reconstruct");
    if (k.domain != Domain::KSpace) {
        throw DomainError("reconstruct: input is not a k-space grid");
    }
    Eigen::MatrixXcd back;
    if (method == Method::FFT) {
        back = transforms::apply_2d(adjoint(transforms::dft_kernel(k.width() - 1)),
                                    adjoint(transforms::dft_kernel(k.height() - 1)), k.pixels);
    } else {
        if (!(alpha >= 0.0 && alpha <= 4.0)) {
            throw DomainError("reconstruct: alpha = " + std::to_string(alpha) + " outside [0,4]");
        }
        back = transforms::kt_2d(k.pixels, 4.0 - alpha);
    }
    if (imag_residual != nullptr) {
        *imag_residual = rms(back.imag().cast<std::complex<double>>());
    }
    return ImageGrid::real(back.real());
}

QualityReport quality(const ImageGrid &reference, const ImageGrid &candidate, const SsimOptions &options) {
    if (reference.pixels.rows() != candidate.pixels.rows() || reference.pixels.cols() != candidate.pixels.cols()) {
        throw ShapeError("quality: image shapes differ");
    }
    const int w = options.window;
    if (w < 1 || reference.height() < w || reference.width() < w) {
        throw ShapeError("quality: image smaller than the SSIM window");
    }
    const Eigen::MatrixXd x = reference.pixels.real();
    const Eigen::MatrixXd y = candidate.pixels.real();

    QualityReport q;
    q.mse = (x - y).array().square().mean();
    double range = x.maxCoeff() - x.minCoeff();
    if (range <= 0.0) {
        range = 1.0;
    }
    q.psnr = q.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(range * range / q.mse);

    const double c1 = (options.K1 * range) * (options.K1 * range);
    const double c2 = (options.K2 * range) * (options.K2 * range);
    const double n = static_cast<double>(w) * w;
    double total = 0.0;
    int windows = 0;
    for (int r = 0; r + w <= reference.height(); ++r) {
        for (int c = 0; c + w <= reference.width(); ++c) {
            const auto bx = x.block(r, c, w, w).array();
            const auto by = y.block(r, c, w, w).array();
            const double mx = bx.sum() / n;
            const double my = by.sum() / n;
            const double vx = (bx - mx).square().sum() / n;
            const double vy = (by - my).square().sum() / n;
            const double cxy = ((bx - mx) * (by - my)).sum() / n;
            total += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++windows;
        }
    }
    q.ssim = total / windows;
    return q;
}

Eigen::MatrixXd phantom(int size) {
    if (size < 1) {
        throw ShapeError("phantom: size must be positive");
    }
    struct Ellipse {
        double cx, cy, ax, ay, value;
    };
    // Painted in order; later shapes overwrite earlier ones.
    const Ellipse shapes[] = {
        {0.0, 0.0, 0.92, 0.76, 90.0},   {0.0, 0.0, 0.85, 0.69, 200.0},  {0.0, 0.0, 0.62, 0.50, 140.0},
        {0.0, 0.0, 0.38, 0.30, 170.0},  {-0.36, 0.16, 0.14, 0.22, 60.0}, {0.34, -0.12, 0.18, 0.12, 230.0},
        {0.05, 0.44, 0.10, 0.05, 30.0}, {0.0, 0.0, 0.12, 0.09, 110.0},
    };
    const double points[][2] = {{-0.55, -0.35}, {-0.45, -0.35}, {0.5, 0.35}, {0.15, -0.55}, {-0.1, 0.58}};
    Eigen::MatrixXd img = Eigen::MatrixXd::Zero(size, size);
    for (int r = 0; r < size; ++r) {
        const double y = 2.0 * (r + 0.5) / size - 1.0;
        for (int c = 0; c < size; ++c) {
            const double x = 2.0 * (c + 0.5) / size - 1.0;
            for (const Ellipse &e : shapes) {
                const double u = (x - e.cx) / e.ax;
                const double v = (y - e.cy) / e.ay;
                if (u * u + v * v <= 1.0) {
                    img(r, c) = e.value;
                }
            }
        }
    }
    for (const auto &p : points) {
        const int c = std::clamp(static_cast<int>((p[0] + 1.0) / 2.0 * size), 0, size - 1);
        const int r = std::clamp(static_cast<int>((p[1] + 1.0) / 2.0 * size), 0, size - 1);
        img(r, c) = 255.0;
        if (c + 1 < size) {
            img(r, c + 1) = 255.0;
        }
    }
    return img;
}

}  // namespace qkt::imaging
