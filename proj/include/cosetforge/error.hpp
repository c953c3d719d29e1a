#pragma once

#include <stdexcept>
#include <string>

namespace cosetforge {

/// Error categories, mapped to CLI exit codes (config 2, verification 3, cap 4).
enum class Errc {
    config,          ///< invalid argument / malformed instance
    cap_exceeded,    ///< desk-scale cap (default 2^20) exceeded
    verification,    ///< a checked identity failed
    domain_mismatch, ///< operands belong to different groups
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace cosetforge
