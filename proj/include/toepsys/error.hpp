#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace toepsys {

using cplx = std::complex<double>;

enum class ErrorKind {
  invalid_argument,
  size_mismatch,
  not_hermitian,
  not_self_adjoint,
  not_positive,
  precondition,
  numerical,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::size_mismatch: return "size_mismatch";
    case ErrorKind::not_hermitian: return "not_hermitian";
    case ErrorKind::not_self_adjoint: return "not_self_adjoint";
    case ErrorKind::not_positive: return "not_positive";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace toepsys
