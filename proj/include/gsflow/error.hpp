#pragma once

#include <stdexcept>
#include <string>

namespace gsflow {

enum class ErrorKind { Validation, Structural, NonUnimodular, Range, Io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gsflow
