#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tdho/config.hpp"

namespace tdho {

/// One row of the validation battery.
struct ValidationCheck {
  std::string name;
  double value = 0.0;      // residual / defect (0 for exact combinatorial checks)
  double tolerance = 0.0;  // pass iff value <= tolerance
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;
  bool all_passed() const;
};

/// Cross-check battery behind the `validate` subcommand ("quick" or "full").
ValidationReport run_validation(const std::string& preset);

/// Entry point of the command-line front end.  Exit codes: 0 success,
/// 2 configuration error, 3 computation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tdho
