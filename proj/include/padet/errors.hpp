#pragma once

#include <stdexcept>
#include <string>

namespace padet {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class MembershipError : public Error {
 public:
  using Error::Error;
};

class BadRadius : public Error {
 public:
  using Error::Error;
};

class PrecisionUnreachable : public Error {
 public:
  using Error::Error;
};

// A directed-rounding comparison could not be decided at working precision.
class IndeterminateBound : public Error {
 public:
  using Error::Error;
};

// Falsification channels: these mean a proven guarantee did not hold, so
// callers treat them as hard failures rather than input problems.
class Falsification : public Error {
 public:
  using Error::Error;
};

class RankFull : public Falsification {
 public:
  using Falsification::Falsification;
};

class OracleMismatch : public Falsification {
 public:
  using Falsification::Falsification;
};

class SeparationViolated : public Falsification {
 public:
  using Falsification::Falsification;
};

class ContainsGraph : public Error {
 public:
  using Error::Error;
};

}  // namespace padet
