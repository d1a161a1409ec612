#pragma once

#include <stdexcept>
#include <string>

namespace eala {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

// Mixing values from Q(e_r) and Q(e_s) without a declared embedding.
struct FieldMismatch : Error {
  explicit FieldMismatch(const std::string& what) : Error(what) {}
};

// A computation needed a weight slice outside the (depth, height) window.
// Surfaced, never silently truncated; callers may downgrade a check to
// "inconclusive" but must not claim a pass.
struct TruncationEscape : Error {
  TruncationEscape(int depth, int height, const std::string& ctx)
      : Error("truncation escape: needed slice at depth " + std::to_string(depth) +
              ", height " + std::to_string(height) + " (" + ctx + ")"),
        depth(depth), height(height) {}
  int depth;
  int height;
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace eala
