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


#include "qkt/sequence_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qkt/errors.hpp"

namespace qkt::transforms {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_number(const std::string &s, std::size_t line, const char *column) {
    if (s.empty()) {
        throw ParseError(line, std::string("empty ") + column + " field");
    }
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ParseError(line, std::string("invalid ") + column + " value '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ComplexSequence read_sequence_csv(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<Complex> values;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        const std::vector<std::string> f = split(t);
        if (!have_header) {
            if (f.size() != 3 || f[0] != "index" || f[1] != "re" || f[2] != "im") {
                throw ParseError(line_no, "expected header 'index,re,im'");
            }
            have_header = true;
            continue;
        }
        if (f.size() != 3) {
            throw ParseError(line_no, "expected 3 fields, found " + std::to_string(f.size()));
        }
        const double idx = parse_number(f[0], line_no, "index");
        if (idx != static_cast<double>(values.size())) {
            throw ParseError(line_no, "index " + f[0] + " out of sequence (expected " + std::to_string(values.size()) +
                                          ")");
        }
        values.emplace_back(parse_number(f[1], line_no, "re"), parse_number(f[2], line_no, "im"));
    }
    if (!have_header) {
        throw ParseError(line_no + 1, "missing header 'index,re,im'");
    }
    if (values.empty()) {
        throw ParseError(line_no + 1, "sequence has no entries");
    }
    ComplexSequence x(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        x(static_cast<Eigen::Index>(i)) = values[i];
    }
    return x;
}

ComplexSequence read_sequence_csv_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_sequence_csv(in);
}

void write_sequence_csv(std::ostream &out, const ComplexSequence &x) {
    out << "index,re,im\n";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out << i << ',' << format_double(x(i).real()) << ',' << format_double(x(i).imag()) << '\n';
    }
}

}  // namespace qkt::transforms
