//  Copyright 2026 The mufix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef MUFIX_ERROR_HPP_
#define MUFIX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mufix {

// Base of every error thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary operation on elements of two different lattices.
class LatticeMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed lattice, function, term or binding construction.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Arity or coordinate-lattice mismatch between a value and its consumer.
class TypingError : public Error {
 public:
  using Error::Error;
};

// Coordinate or carrier index outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A desk-scale size guard refused the request.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Kleene iteration ran out of fuel; the function is not monotone.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// A table that was required to be monotone is not.
class NotMonotone : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Free variable or malformed node met while evaluating a mu-expression.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mufix

#endif  // MUFIX_ERROR_HPP_
