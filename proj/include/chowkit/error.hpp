// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace chowkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inhomogeneous relation, duplicate generator, bad degree.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Ring morphism images fail to annihilate a source relation.
class RelationViolation : public Error {
 public:
  using Error::Error;
};

// A pushforward was applied to a class outside its declared span.
class UndeclaredPushforward : public Error {
 public:
  using Error::Error;
};

// Operands from different rings, wrong degree, unknown generator.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace chowkit
