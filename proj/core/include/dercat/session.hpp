#pragma once

#include <memory>
#include <string>

namespace dercat {

enum class OutputFormat { text, structured };

struct SessionOptions {
  OutputFormat format = OutputFormat::text;
  std::uint64_t seed = 42;   // default seed for verify commands without one
  int bound = 0;             // default bound override (0 = per-operation default)
};

struct SessionResult {
  std::string output;    // rendered in the requested format
  int exit_code = 0;     // 0 ok, 2 computation error, 3 verification failure, 4 condition disagreement
};

/// A parsed session: a ring declaration, named definitions and a command
/// list. Parsing validates resolution, dimensions and d*d = 0; `print()`
/// returns the canonical form (stable under parse/print round trips).
class SessionDocument {
 public:
  static SessionDocument parse(const std::string& text);
  ~SessionDocument();
  SessionDocument(SessionDocument&&) noexcept;
  SessionDocument& operator=(SessionDocument&&) noexcept;

  std::string print() const;
  SessionResult run(const SessionOptions& opts) const;
  int command_count() const;

 private:
  SessionDocument();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dercat
