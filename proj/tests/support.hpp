#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "qfc/error.hpp"
#include "qfc/quadform.hpp"

namespace support {

// Error code thrown by f, or nullopt if it returned normally.
inline std::optional<qfc::Errc> errc_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const qfc::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline qfc::QuadraticForm form(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e,
                               std::int64_t f) {
  return qfc::QuadraticForm(qfc::big(a), qfc::big(b), qfc::big(c), qfc::big(d), qfc::big(e), qfc::big(f));
}

inline std::int64_t disc(const std::array<std::int64_t, 6>& c) { return c[1] * c[1] - 4 * c[0] * c[2]; }

inline qfc::QuadraticForm form(const std::array<std::int64_t, 6>& c) { return form(c[0], c[1], c[2], c[3], c[4], c[5]); }

}  // namespace support
