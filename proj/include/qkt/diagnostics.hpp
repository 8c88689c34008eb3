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


#ifndef QKT_DIAGNOSTICS_HPP
#define QKT_DIAGNOSTICS_HPP

#include <functional>
#include <string>

namespace qkt {

using WarningHandler = std::function<void(const std::string &)>;

/// Installs the sink for library warnings and returns the previous one.
/// The default prints "warning: ..." to stderr. Passing nullptr silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string &message);

}  // namespace qkt

#endif  // QKT_DIAGNOSTICS_HPP
