#include "symsieve/report.hpp"

#include <cstdio>
#include <sstream>

namespace symsieve {

void VerificationReport::observe(double err, const std::string& where) {
  if (err > max_abs_error) {
    max_abs_error = err;
    worst_case = where;
  }
}

void VerificationReport::finalize() { passed = max_abs_error <= tolerance; }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << (passed ? "[ok]   " : "[FAIL] ") << check_name << "  max_err="
     << format_double(max_abs_error) << "  tol=" << format_double(tolerance)
     << "\n       range: " << range_tested;
  if (!worst_case.empty()) os << "\n       worst: " << worst_case;
  for (const auto& n : notes) os << "\n       " << n;
  os << "\n";
  return os.str();
}

std::string VerificationReport::csv_header() {
  return "check_name,passed,max_abs_error,tolerance,worst_case,range_tested";
}

std::string VerificationReport::csv_row() const {
  std::ostringstream os;
  os << csv_escape(check_name) << ',' << (passed ? 1 : 0) << ','
     << format_double(max_abs_error) << ',' << format_double(tolerance) << ','
     << csv_escape(worst_case) << ',' << csv_escape(range_tested);
  return os.str();
}

}  // namespace symsieve
