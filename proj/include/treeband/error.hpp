#pragma once

#include <stdexcept>
#include <string>

namespace treeband {

enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kInvalidStructure,
  kSizeLimit,
  kBudgetExceeded,
  kPrecondition,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace treeband
