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


#include "qkt/image_io.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "qkt/errors.hpp"

namespace qkt::imaging {

namespace {

std::vector<unsigned char> slurp(std::istream &in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class HeaderReader {
   public:
    explicit HeaderReader(const std::vector<unsigned char> &bytes) : b_(bytes) {
    }

    void skip_space_and_comments() {
        while (pos_ < b_.size()) {
            if (b_[pos_] == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(b_[pos_])) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    long read_uint(const char *what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
            v = v * 10 + (b_[pos_] - '0');
            if (v > 1L << 30) {
                throw FormatError(start, std::string(what) + " is too large");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw FormatError(start, std::string("expected ") + what);
        }
        return v;
    }

    std::size_t pos_ = 0;

   private:
    const std::vector<unsigned char> &b_;
};

void write_f32le(std::ostream &out, float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    const char bytes[4] = {static_cast<char>(u & 0xff), static_cast<char>((u >> 8) & 0xff),
                           static_cast<char>((u >> 16) & 0xff), static_cast<char>((u >> 24) & 0xff)};
    out.write(bytes, 4);
}

float read_f32le(const unsigned char *p) {
    const std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                            (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    float v;
    std::memcpy(&v, &u, 4);
    return v;
}

}  // namespace

PgmImage read_pgm(std::istream &in) {
    const std::vector<unsigned char> b = slurp(in);
    if (b.size() < 2 || b[0] != 'P' || b[1] != '5') {
        throw FormatError(0, "bad magic bytes (expected P5)");
    }
    HeaderReader h(b);
    h.pos_ = 2;
    if (h.pos_ >= b.size() || !std::isspace(b[h.pos_])) {
        throw FormatError(2, "expected whitespace after magic");
    }
    const long width = h.read_uint("width");
    const long height = h.read_uint("height");
    const std::size_t max_at = (h.skip_space_and_comments(), h.pos_);
    const long max_value = h.read_uint("maxval");
    if (width < 1 || height < 1) {
        throw FormatError(max_at, "image dimensions must be positive");
    }
    if (max_value < 1 || max_value > 65535) {
        throw FormatError(max_at, "maxval must lie in [1, 65535]");
    }
    if (h.pos_ >= b.size() || !std::isspace(b[h.pos_])) {
        throw FormatError(h.pos_, "expected a single whitespace before pixel data");
    }
    ++h.pos_;
    const std::size_t bpp = max_value > 255 ? 2 : 1;
    const std::size_t need = static_cast<std::size_t>(width) * height * bpp;
    if (b.size() - h.pos_ < need) {
        throw FormatError(b.size(), "truncated pixel data: expected " + std::to_string(need) + " bytes, found " +
                                        std::to_string(b.size() - h.pos_));
    }
    PgmImage img{static_cast<int>(max_value), Eigen::MatrixXd(height, width)};
    std::size_t p = h.pos_;
    for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
            unsigned v = b[p];
            if (bpp == 2) {
                v = (v << 8) | b[p + 1];
            }
            if (v > static_cast<unsigned>(max_value)) {
                throw FormatError(p, "pixel value exceeds maxval");
            }
            img.pixels(r, c) = v;
            p += bpp;
        }
    }
    return img;
}

PgmImage read_pgm_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_pgm(in);
}

void write_pgm(std::ostream &out, const Eigen::MatrixXd &pixels, int max_value) {
    if (max_value < 1 || max_value > 65535) {
        throw DomainError("write_pgm: maxval must lie in [1, 65535]");
    }
    if (pixels.size() == 0) {
        throw ShapeError("write_pgm: empty image");
    }
    out << "P5\n" << pixels.cols() << ' ' << pixels.rows() << '\n' << max_value << '\n';
    for (Eigen::Index r = 0; r < pixels.rows(); ++r) {
        for (Eigen::Index c = 0; c < pixels.cols(); ++c) {
            double v = std::round(pixels(r, c));
            if (!(v >= 0.0)) {
                v = 0.0;
            }
            const unsigned u = static_cast<unsigned>(std::min<double>(v, max_value));
            if (max_value > 255) {
                out.put(static_cast<char>(u >> 8));
            }
            out.put(static_cast<char>(u & 0xff));
        }
    }
}

void write_pgm_file(const std::string &path, const Eigen::MatrixXd &pixels, int max_value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_pgm(out, pixels, max_value);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

ImageGrid read_kspace(std::istream &in) {
    const std::vector<unsigned char> b = slurp(in);
    std::size_t nl = 0;
    while (nl < b.size() && b[nl] != '\n') {
        ++nl;
    }
    if (nl == b.size()) {
        throw FormatError(0, "missing JSON header line");
    }
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(nl));
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(e.byte > 0 ? e.byte - 1 : 0, "invalid JSON header");
    }
    if (!h.is_object() || !h.contains("width") || !h.contains("height") || !h.contains("dtype")) {
        throw FormatError(0, "header must contain width, height and dtype");
    }
    if (!h["width"].is_number_unsigned() || !h["height"].is_number_unsigned() || h["width"].get<long>() < 1 ||
        h["height"].get<long>() < 1) {
        throw FormatError(0, "width and height must be positive integers");
    }
    if (!h["dtype"].is_string() || h["dtype"].get<std::string>() != "c64le") {
        throw FormatError(0, "unsupported dtype (expected c64le)");
    }
    const long w = h["width"].get<long>();
    const long ht = h["height"].get<long>();
    const std::size_t start = nl + 1;
    const std::size_t need = static_cast<std::size_t>(w) * ht * 8;
    if (b.size() - start != need) {
        throw FormatError(std::min(b.size(), start + need), "payload holds " + std::to_string(b.size() - start) +
                                                                " bytes, expected " + std::to_string(need));
    }
    ImageGrid g{Domain::KSpace, Eigen::MatrixXcd(ht, w)};
    const unsigned char *p = b.data() + start;
    for (long r = 0; r < ht; ++r) {
        for (long c = 0; c < w; ++c) {
            g.pixels(r, c) = {read_f32le(p), read_f32le(p + 4)};
            p += 8;
        }
    }
    return g;
}

ImageGrid read_kspace_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_kspace(in);
}

void write_kspace(std::ostream &out, const ImageGrid &k) {
    nlohmann::json h{{"width", k.width()}, {"height", k.height()}, {"dtype", "c64le"}};
    out << h.dump() << '\n';
    for (int r = 0; r < k.height(); ++r) {
        for (int c = 0; c < k.width(); ++c) {
            write_f32le(out, static_cast<float>(k.pixels(r, c).real()));
            write_f32le(out, static_cast<float>(k.pixels(r, c).imag()));
        }
    }
}

void write_kspace_file(const std::string &path, const ImageGrid &k) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_kspace(out, k);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

}  // namespace qkt::imaging
