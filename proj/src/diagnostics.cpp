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


#include "qkt/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace qkt {

namespace {

std::mutex &handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler &current_handler() {
    static WarningHandler h = [](const std::string &message) { std::cerr << "warning: " << message << "\n"; };
    return h;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard<std::mutex> lock(handler_mutex());
    return std::exchange(current_handler(), std::move(handler));
}

void warn(const std::string &message) {
    std::lock_guard<std::mutex> lock(handler_mutex());
    if (current_handler()) {
        current_handler()(message);
    }
}

}  // namespace qkt
