#pragma once

#include <stdexcept>
#include <string>

namespace qd {

enum class ErrorCode {
  InvalidArgument,  // bad dimension, index, probability, amplitude vector
  Capacity,         // dense dimension d^N exceeds the configured cap
  ProductState,     // no pair with alpha_i * alpha_j != 0
  Unsupported,      // e.g. balanced closed form requested for odd N
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
  throw Error(ErrorCode::InvalidArgument, msg);
}

[[noreturn]] inline void throw_capacity(const std::string& msg) {
  throw Error(ErrorCode::Capacity, msg);
}

[[noreturn]] inline void throw_product_state(const std::string& msg) {
  throw Error(ErrorCode::ProductState, msg);
}

[[noreturn]] inline void throw_unsupported(const std::string& msg) {
  throw Error(ErrorCode::Unsupported, msg);
}

}  // namespace qd
