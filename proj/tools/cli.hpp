#pragma once

#include "hqc/dsl.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hqc::cli {

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kParseError = 2,
  kValidationError = 3,
  kIoError = 4,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Line-oriented interactive session over a fixed symbol table.
class Repl {
 public:
  Repl(TablePtr table, bool oracle, std::ostream& out);

  /// Evaluates one input line. Returns false once the session should end.
  bool handle(const std::string& line);

  /// Reads lines until :quit or end of input.
  int loop(std::istream& in, bool interactive);

 private:
  void eval_line(const std::string& line);
  void command(const std::string& line);
  HybridExpr expr(const std::string& text) const;

  TablePtr table_;
  bool oracle_;
  std::ostream& out_;
  Environment env_;
};

}  // namespace hqc::cli
