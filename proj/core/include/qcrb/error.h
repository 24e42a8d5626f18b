// Copyright 2026 The qcrb Authors
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

#ifndef QCRB_ERROR_H_
#define QCRB_ERROR_H_

#include <stdexcept>
#include <string>

namespace qcrb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: wrong lengths, invalid family parameters,
/// missing weights. The CLI maps these to exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that is rejected numerically: a matrix that is not PSD,
/// a singular rank-one update, a divergent Fisher information, an
/// unidentifiable parameter. The CLI maps these to exit status 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcrb

#endif  // QCRB_ERROR_H_
