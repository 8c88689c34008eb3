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


#ifndef QKT_SEQUENCE_IO_HPP
#define QKT_SEQUENCE_IO_HPP

#include <iosfwd>
#include <string>

#include "qkt/transforms.hpp"

namespace qkt::transforms {

/// Parses CSV with header `index,re,im` and rows indexed 0..S in order.
/// ParseError (with the 1-based line) on any malformed or non-finite row.
ComplexSequence read_sequence_csv(std::istream &in);
ComplexSequence read_sequence_csv_file(const std::string &path);

void write_sequence_csv(std::ostream &out, const ComplexSequence &x);

/// Shortest-exact decimal form used by every CSV writer (17 significant digits).
std::string format_double(double v);

}  // namespace qkt::transforms

#endif  // QKT_SEQUENCE_IO_HPP
