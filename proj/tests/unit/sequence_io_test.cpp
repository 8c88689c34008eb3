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

#include <gtest/gtest.h>

#include <sstream>

#include "qkt/errors.hpp"

using namespace qkt::transforms;

namespace {

std::size_t parse_error_line(const std::string &text) {
    std::istringstream in(text);
    try {
        read_sequence_csv(in);
    } catch (const qkt::ParseError &e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(SequenceCsv, RoundTripIsExact) {
    ComplexSequence x(4);
    x << Complex(0.1, -2.5e-300), Complex(1.0 / 3.0, 7.0), Complex(-0.0, 1e300), Complex(123456789.123456789, 0.5);
    std::stringstream s;
    write_sequence_csv(s, x);
    EXPECT_EQ(read_sequence_csv(s), x);
}

TEST(SequenceCsv, ToleratesCrlfAndBlankLines) {
    std::istringstream in("index,re,im\r\n0,1,0\r\n\n1,0,2\r\n");
    const ComplexSequence x = read_sequence_csv(in);
    ASSERT_EQ(x.size(), 2);
    EXPECT_EQ(x(1), Complex(0, 2));
}

TEST(SequenceCsv, ErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line("idx,re,im\n0,1,0\n"), 1u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,1,0\n1,abc,0\n"), 3u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,1,0\n2,1,0\n"), 3u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,1\n"), 2u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,nan,0\n"), 2u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,1,0,\n"), 2u);
    EXPECT_EQ(parse_error_line("index,re,im\n"), 2u);
    EXPECT_EQ(parse_error_line(""), 1u);
}

TEST(SequenceCsv, MissingFileIsIoError) {
    EXPECT_THROW(read_sequence_csv_file("/nonexistent/seq.csv"), qkt::IoError);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
