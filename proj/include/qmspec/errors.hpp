// Copyright 2026 the qmspec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmspec {

// Error taxonomy used across the library.
//   input     - malformed arguments (sizes, ranges, degenerate specs)
//   domain    - input is well formed but outside the mathematical domain of
//               the operation (not commuting, not a contraction, not PSD, ...)
//   numerical - the computation itself broke down (rank tolerance
//               inconsistency, degenerate pencil, unresolved clustering)
//   parse/io  - serialization-layer failures
enum class ErrorKind { input, domain, numerical, parse, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& m) {
  throw Error(ErrorKind::input, m);
}
[[noreturn]] inline void fail_domain(const std::string& m) {
  throw Error(ErrorKind::domain, m);
}
[[noreturn]] inline void fail_numerical(const std::string& m) {
  throw Error(ErrorKind::numerical, m);
}
[[noreturn]] inline void fail_parse(const std::string& m) {
  throw Error(ErrorKind::parse, m);
}
[[noreturn]] inline void fail_io(const std::string& m) {
  throw Error(ErrorKind::io, m);
}

}  // namespace qmspec
