#pragma once

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>

namespace reactfn {

// Bad files, malformed rows, invalid parameters. CLI exit code 2.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Data degeneracies: empty series, zero-width histogram range. CLI exit code 3.
class data_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Diagnostic verbosity is controlled by the REACTFN_LOG environment variable.
inline bool log_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("REACTFN_LOG");
    return v != nullptr && v[0] != '\0' && std::string(v) != "0";
  }();
  return enabled;
}

inline void log_note(const std::string& msg) {
  if (log_enabled()) std::cerr << "reactfn: " << msg << '\n';
}

}  // namespace reactfn
