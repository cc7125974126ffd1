#pragma once

#include <stdexcept>
#include <string>

namespace pscert {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside an operation's domain (s <= 2, W = 1, empty point set, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// An explicit precision request above the configured hard cap.
class PrecisionCapError : public Error {
public:
  explicit PrecisionCapError(const std::string& what) : Error(what) {}
};

// A query that stayed undecidable at the precision cap. Never silently
// turned into a wrong answer; callers may widen the cap and retry.
class UndecidableError : public Error {
public:
  explicit UndecidableError(const std::string& what) : Error(what) {}
};

// A constructive step failed (no sign change, certification retries
// exhausted, empty level, ...). Carries diagnostics in what().
class ConstructionError : public Error {
public:
  explicit ConstructionError(const std::string& what) : Error(what) {}
};

// Lift multiplier search exhausted its cap without a certified hit.
class NotFoundError : public Error {
public:
  explicit NotFoundError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace pscert
