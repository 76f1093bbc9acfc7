#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace revprime {

// Resource guard for anything that enumerates a whole digit window or the
// primes below g^N.  The default keeps desk runs in the minutes range; it can
// be raised through the REVPRIME_ENUM_CAP environment variable or set_enum_cap.
inline std::int64_t& enum_cap_ref() {
  static std::int64_t cap = [] {
    if (const char* s = std::getenv("REVPRIME_ENUM_CAP")) {
      char* end = nullptr;
      long long v = std::strtoll(s, &end, 10);
      if (end != s && v > 0) return static_cast<std::int64_t>(v);
    }
    return static_cast<std::int64_t>(100'000'000);
  }();
  return cap;
}

inline std::int64_t enum_cap() { return enum_cap_ref(); }

inline void set_enum_cap(std::int64_t v) {
  if (v <= 0) throw std::invalid_argument("enumeration cap must be positive");
  enum_cap_ref() = v;
}

inline void require_within_cap(std::int64_t size, const char* what) {
  if (size <= 0 || size > enum_cap())
    throw std::length_error(std::string(what) + ": enumeration cap exceeded (" +
                            std::to_string(size) + " > " + std::to_string(enum_cap()) + ")");
}

}  // namespace revprime
