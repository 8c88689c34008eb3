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


#ifndef QKT_IMAGE_IO_HPP
#define QKT_IMAGE_IO_HPP

#include <iosfwd>
#include <string>

#include "qkt/imaging.hpp"

namespace qkt::imaging {

struct PgmImage {
    int max_value = 255;
    Eigen::MatrixXd pixels;
};

/// Binary PGM (P5), 8-bit or 16-bit big-endian. FormatError with the byte
/// offset of the first problem.
PgmImage read_pgm(std::istream &in);
PgmImage read_pgm_file(const std::string &path);

/// Values are rounded and clamped to [0, max_value].
void write_pgm(std::ostream &out, const Eigen::MatrixXd &pixels, int max_value = 255);
void write_pgm_file(const std::string &path, const Eigen::MatrixXd &pixels, int max_value = 255);

/// Raw k-space: one JSON header line {"width":W,"height":H,"dtype":"c64le"}
/// then W*H little-endian float32 (re, im) pairs in row-major order.
ImageGrid read_kspace(std::istream &in);
ImageGrid read_kspace_file(const std::string &path);
void write_kspace(std::ostream &out, const ImageGrid &k);
void write_kspace_file(const std::string &path, const ImageGrid &k);

}  // namespace qkt::imaging

#endif  // QKT_IMAGE_IO_HPP
