#pragma once

#include <stdexcept>
#include <string>

namespace zkset {

enum class ErrorKind {
    unsupported_backend,
    parameter,
    decode,          // malformed bytes; distinct from a verification reject
    params_mismatch,
    missing_prover_key,
    missing_setup_secret,
    empty_set,
    duplicate_element,
    element_membership,
    extraction_impossible,
    gcd_failure,
    malformed_proof,
    analysis_incomplete,
    io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace zkset
