#pragma once

#include <stdexcept>
#include <string>

namespace cns {

enum class ErrorKind { Config = 2, Compatibility = 3, NoConvergence = 4, Jacobian = 5, Numeric = 1 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace cns
