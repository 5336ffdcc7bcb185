#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "symsieve/dirichlet.hpp"
#include "symsieve/satake.hpp"

namespace symsieve {

// External representation of one form: eigenvalues a_p = tau(p) at every
// prime up to the table end, in increasing order with no gaps.
struct FormRecord {
  std::string label;
  double nu_abs = 0.0;
  std::vector<std::pair<uint64_t, double>> ap_values;
  // Half-ulp of the coarsest printed decimal among the a_p (0 = exact).
  double input_precision = 0.0;

  uint64_t p_max() const {
    return ap_values.empty() ? 0 : ap_values.back().first;
  }
};

// Text format, one item per line:
//   label <name>
//   nu <decimal>
//   <p> <a_p>          (increasing p, all primes up to the last line)
// '#' starts a comment.  Throws ParseError (with line number), GapError
// (listing missing primes), or BoundError (eigenvalue cap violation).
FormRecord parse_form_file(const std::filesystem::path& path);

// Inverse of parse_form_file; floats rendered at 17 significant digits so
// the round trip is value-exact.
void write_form_file(const FormRecord& rec, const std::filesystem::path& path);

// Satake parameters from eigenvalues: alpha + 1/alpha = a_p, taking the
// unit-circle root for |a_p| <= 2 and the real root beyond.  |a_p| within
// kApSnapSlack above 2 snaps to the boundary; a snap message is appended
// to warnings when provided.
SatakeData satake_from_ap(const FormRecord& rec,
                          std::vector<std::string>* warnings = nullptr);

enum class SynthProfile { unitary, mixed };

// Deterministic pseudo-form: unitary alphas with Sato-Tate-distributed
// angles; the mixed profile additionally draws a real alpha in the
// permitted window at a small fraction of primes.
SatakeData synthesize_form(uint64_t seed, uint64_t p_max, SynthProfile profile);

// Spectral placeholder attached to synthesized forms.
inline constexpr double kSyntheticNuAbs = 1.0;

struct CacheKey {
  std::string form_label;
  std::string series_label;
  uint64_t n_max = 0;
};

// Binary coefficient cache: fixed header (magic, version, key triple,
// count, checksum) then little-endian 8-byte values.  Round trips are
// bit-exact.  load_series throws KeyMismatchError when the stored key
// differs from the expected one and ChecksumMismatchError on a corrupt
// payload.
void cache_series(const CoeffSeries& series, const CacheKey& key,
                  const std::filesystem::path& path);
CoeffSeries load_series(const std::filesystem::path& path,
                        const CacheKey& expected_key);

}  // namespace symsieve
