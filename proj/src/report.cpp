#include "kirchhoff/report.hpp"

#include <cmath>
#include <ostream>

#include "kirchhoff/io.hpp"

namespace kirchhoff {

void ValidationReport::add_measured(const std::string& name, double measured, double tolerance) {
  const bool pass = std::isfinite(measured) && std::abs(measured) <= tolerance;
  checks.push_back(ValidationCheck{name, pass, measured, tolerance});
}

void ValidationReport::add_flag(const std::string& name, bool pass) {
  checks.push_back(ValidationCheck{name, pass, pass ? 1.0 : 0.0, 0.0});
}

bool ValidationReport::overall() const {
  for (const ValidationCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

void write_report_csv(std::ostream& out, const ValidationReport& report) {
  out << "check,pass,measured,tolerance\n";
  for (const ValidationCheck& c : report.checks)
    out << c.name << ',' << (c.pass ? "PASS" : "FAIL") << ',' << format_float(c.measured) << ','
        << format_float(c.tolerance) << '\n';
  out << "overall," << (report.overall() ? "PASS" : "FAIL") << ",,\n";
}

}  // namespace kirchhoff
