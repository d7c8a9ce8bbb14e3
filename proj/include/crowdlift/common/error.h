/*
 * Copyright 2026 The Crowdlift Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CROWDLIFT_COMMON_ERROR_H_
#define CROWDLIFT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace crowdlift {

// Base of every error raised by the library. The CLI maps the concrete
// subclass onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data or a request breaks a documented contract (exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A schema violation while reading a record, with the offending field.
class SchemaError : public ValidationError {
 public:
  SchemaError(std::string field, const std::string& message)
      : ValidationError(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The LLM provider could not be reached or kept failing (exit code 3).
class ProviderError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Estimation failures: singular information, separation, rank deficiency.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Process exit code for an error category: 2 for validation, 3 for the
// LLM provider, 1 for everything else.
inline int ExitCodeFor(const std::exception& e);

// Wraps an upstream failure with the pipeline stage it happened in. The exit
// code of the wrapped error is kept.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message, int exit_code = 1)
      : Error(stage + ": " + message), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

inline int ExitCodeFor(const std::exception& e) {
  if (const auto* s = dynamic_cast<const StageError*>(&e)) return s->exit_code();
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  if (dynamic_cast<const ProviderError*>(&e)) return 3;
  return 1;
}

}  // namespace crowdlift

#endif  // CROWDLIFT_COMMON_ERROR_H_
