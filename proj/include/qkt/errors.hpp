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

#ifndef QKT_ERRORS_HPP
#define QKT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qkt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Size limit exceeded (e.g. exact integer tables).
class RangeError : public Error {
   public:
    using Error::Error;
};

/// Mismatched or empty vector/matrix shapes.
class ShapeError : public Error {
   public:
    using Error::Error;
};

class NormalizationError : public Error {
   public:
    using Error::Error;
};

/// Invalid experiment or CLI configuration.
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// Post-selection left no conforming records.
class EmptySelectionError : public Error {
   public:
    using Error::Error;
};

class DegenerateError : public Error {
   public:
    using Error::Error;
};

class DivisionError : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {
    }
    std::size_t line() const {
        return line_;
    }

   private:
    std::size_t line_;
};

/// Malformed binary input; carries the byte offset of the problem.
class FormatError : public Error {
   public:
    FormatError(std::size_t offset, const std::string &what)
        : Error("byte offset " + std::to_string(offset) + ": " + what), offset_(offset) {
    }
    std::size_t offset() const {
        return offset_;
    }

   private:
    std::size_t offset_;
};

}  // namespace qkt

#endif  // QKT_ERRORS_HPP
