#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kirchhoff {

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

// Named pass/fail checks with the measured quantity and its tolerance.
struct ValidationReport {
  std::vector<ValidationCheck> checks;

  // |measured| <= tolerance decides the check.
  void add_measured(const std::string& name, double measured, double tolerance);
  void add_flag(const std::string& name, bool pass);

  bool overall() const;
};

// CSV rows "check,pass,measured,tolerance" plus a trailing overall row.
void write_report_csv(std::ostream& out, const ValidationReport& report);

}  // namespace kirchhoff
