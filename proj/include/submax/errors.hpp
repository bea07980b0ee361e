// Copyright 2026 The Authors.
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

#ifndef SUBMAX_ERRORS_HPP_
#define SUBMAX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace submax {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix length or index mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (out of its documented domain).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Instance too large for an exhaustive code path.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested analysis needs data the input does not carry.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace submax

#endif  // SUBMAX_ERRORS_HPP_
