// Copyright 2026 The mssp-interp Authors
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

namespace mssp {

// Failure classes; the CLI maps each to a distinct exit status.
enum class ErrorClass {
  kUsage,
  kValidation,
  kBudget,
  kCalibration,
};

const char* ErrorClassName(ErrorClass c);

class Error : public std::runtime_error {
 public:
  Error(ErrorClass c, const std::string& what)
      : std::runtime_error(what), class_(c) {}

  ErrorClass error_class() const { return class_; }

 private:
  ErrorClass class_;
};

inline Error ValidationError(const std::string& what) {
  return Error(ErrorClass::kValidation, what);
}

}  // namespace mssp
