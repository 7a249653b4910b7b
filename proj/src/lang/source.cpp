#include "mol/lang/source.hpp"

namespace mol {

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

std::string Diagnostic::str() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
         message;
}

static std::string join_diags(const std::vector<Diagnostic> &diags) {
  std::string out;
  for (const auto &d : diags) {
    if (!out.empty())
      out += "\n";
    out += d.str();
  }
  return out;
}

CompileError::CompileError(std::vector<Diagnostic> diags)
    : std::runtime_error(join_diags(diags)), diags_(std::move(diags)) {}

} // namespace mol
