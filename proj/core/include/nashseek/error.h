// Copyright 2026 The nashseek Authors
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

#ifndef NASHSEEK_ERROR_H_
#define NASHSEEK_ERROR_H_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nashseek {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate a documented precondition
// (dimension mismatch, empty box, stepsize out of range, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A game or experiment specification is malformed (e.g. Q_i not positive
// definite, nonpositive prices).
class SpecError : public Error {
 public:
  using Error::Error;
};

// A graph does not satisfy what the operation requires.
class GraphError : public Error {
 public:
  using Error::Error;
};

// A computed quantity landed outside its mathematically valid range. Seeing
// one of these means the inputs were inconsistent in a way the precondition
// checks did not catch.
class InternalError : public Error {
 public:
  using Error::Error;
};

// A gradient or iterate became NaN or infinite.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An iterative method ran out of budget. Carries the last iterate and the
// residual it stopped at.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, Eigen::VectorXd last_iterate,
                      double residual)
      : Error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const Eigen::VectorXd& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  Eigen::VectorXd last_iterate_;
  double residual_;
};

}  // namespace nashseek

#endif  // NASHSEEK_ERROR_H_
