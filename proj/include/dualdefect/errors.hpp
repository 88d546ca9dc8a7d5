#pragma once

#include <stdexcept>
#include <string>

namespace dualdefect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fibers or points of inconsistent ambient dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A map that was supposed to be injective on a configuration merged points.
class CollapseError : public Error {
 public:
  using Error::Error;
};

// pi(A) is not Z-affinely equivalent to the standard simplex {0, e_1, ..., e_r}.
class NotSimplexImage : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

// Random sampling failed to produce consistent generic answers.
class GenericityFailure : public Error {
 public:
  using Error::Error;
};

// The structure pipeline and its independent checks disagree.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace dualdefect
