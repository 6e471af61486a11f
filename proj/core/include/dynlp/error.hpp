// Copyright 2026 The DynLP Authors
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

#ifndef DYNLP_ERROR_HPP_
#define DYNLP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dynlp {

// Malformed input: bad ids, negative weights, inconsistent batches, infeasible
// generator or stream specs.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be opened, read or written, or its contents do not parse.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dense solve was requested on a problem above the configured size cap.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The numerical core hit a state that should be unreachable on valid input,
// e.g. a non positive-definite reduced Laplacian.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dynlp

#endif  // DYNLP_ERROR_HPP_
