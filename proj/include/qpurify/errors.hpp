// Copyright 2026 The qpurify Authors
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

#ifndef QPURIFY_ERRORS_HPP
#define QPURIFY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpurify {

enum class ErrorCode {
  invalid_argument,
  not_hermitian,
  trace_not_one,
  not_positive,
  bloch_out_of_ball,
  degenerate_projector,
  maxent_not_positive,
  inconsistent_record,
  config,
  io,
  internal,
};

const char* error_code_name(ErrorCode code);

/// Every failed validation throws this; the message names the violated
/// invariant and the measured residual.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qpurify

#endif
