#pragma once

#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

namespace svccomp {

// A precondition of an engine call was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A registry document failed to parse or validate. Carries one line per issue.
class RegistryError : public std::runtime_error {
 public:
  explicit RegistryError(std::vector<std::string> issues);

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// A query referenced unknown parameters or was otherwise malformed.
class QueryError : public std::runtime_error {
 public:
  QueryError(const std::string& what, std::vector<std::string> unknown = {})
      : std::runtime_error(what), unknown_(std::move(unknown)) {}

  const std::vector<std::string>& unknown() const { return unknown_; }

 private:
  std::vector<std::string> unknown_;
};

}  // namespace svccomp
