#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mol {

/// Half-open byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(const Span &other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool operator==(const Span &) const = default;
};

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(std::string_view text, std::size_t offset);

struct Diagnostic {
  Span span;
  Position pos;
  std::string message;

  std::string str() const;
};

/// Thrown by the front end; carries every diagnostic collected so far.
class CompileError : public std::runtime_error {
public:
  explicit CompileError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic> &diagnostics() const { return diags_; }

private:
  std::vector<Diagnostic> diags_;
};

/// Analysis-level failure (bad criterion, unknown member, bad spec file).
class AnalysisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mol
