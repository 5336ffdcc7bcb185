#pragma once

#include <string>
#include <vector>

namespace symsieve {

// Outcome of one verification sweep.  Invariant: passed is true exactly when
// max_abs_error <= tolerance.  Checks with band semantics (diagonal, G_1,
// mean value, mollifier) normalise their residual so the same invariant
// holds; the raw per-point values go into notes.
struct VerificationReport {
  std::string check_name;
  std::string range_tested;
  double max_abs_error = 0.0;
  std::string worst_case;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::string> notes;

  // Records err at the described input if it exceeds the current maximum.
  void observe(double err, const std::string& where);
  // Sets passed from max_abs_error and tolerance; call once after the sweep.
  void finalize();

  // Multi-line human-readable rendering, one header line plus notes.
  std::string to_text() const;
  // Single CSV row: check,passed,max_abs_error,tolerance,worst_case,range.
  std::string csv_row() const;
  static std::string csv_header();
};

// Shortest round-trippable decimal rendering of a double (printf %.17g).
std::string format_double(double x);

// Quotes a string for CSV if it contains a comma, quote or newline.
std::string csv_escape(const std::string& s);

}  // namespace symsieve
