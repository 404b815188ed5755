#pragma once

#include <stdexcept>
#include <string>

namespace chp {

enum class ErrorKind {
  structural,    // ring/extent mismatch, bad arguments
  non_complex,   // d*d != 0 at some degree
  non_smooth,    // smoothness certificate failed
  unstabilized,  // Cech truncation window did not converge
  parse,         // config or polynomial syntax
  io,            // file system
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace chp
