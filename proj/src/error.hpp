// Copyright 2026 The bellbound Authors
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

#ifndef BELLBOUND_ERROR_HPP
#define BELLBOUND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bellbound {

enum class ErrorKind {
  invalid_input,
  constraint,
  unphysical_state,
  domain,
  internal_consistency,
  construction_failure,
  parse,
};

/// Exception carrying a machine-readable category. The C API maps each kind
/// onto a status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bellbound

#endif  // BELLBOUND_ERROR_HPP
