#include "symsieve/ingest.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "symsieve/constants.hpp"
#include "symsieve/errors.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/report.hpp"

namespace symsieve {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Number of effective decimal places of a literal: fractional digits minus
// the decimal exponent ("1.5e-3" has 4, "2" has 0).
int decimal_places(const std::string& tok) {
  int frac = 0;
  int expo = 0;
  size_t i = 0;
  bool seen_dot = false;
  for (; i < tok.size(); ++i) {
    const char c = tok[i];
    if (c == '.') {
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      expo = std::atoi(tok.c_str() + i + 1);
      break;
    } else if (seen_dot && std::isdigit(static_cast<unsigned char>(c))) {
      ++frac;
    }
  }
  const int places = frac - expo;
  return places > 0 ? places : 0;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& what) {
  std::ostringstream os;
  os << path.string() << ":" << line << ": " << what;
  throw ParseError(os.str());
}

}  // namespace

FormRecord parse_form_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open form file: " + path.string());

  FormRecord rec;
  bool have_label = false, have_nu = false;
  int max_places = 0;
  std::vector<int> pair_lines;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    std::istringstream ls(line);
    if (!have_label) {
      std::string kw;
      ls >> kw;
      if (kw != "label") parse_fail(path, lineno, "expected 'label <name>'");
      std::string rest;
      std::getline(ls, rest);
      rec.label = trim(rest);
      if (rec.label.empty()) parse_fail(path, lineno, "empty form label");
      have_label = true;
      continue;
    }
    if (!have_nu) {
      std::string kw;
      double nu;
      ls >> kw >> nu;
      if (kw != "nu" || ls.fail())
        parse_fail(path, lineno, "expected 'nu <decimal>'");
      if (nu < 0.0) parse_fail(path, lineno, "nu must be non-negative");
      rec.nu_abs = nu;
      have_nu = true;
      continue;
    }

    uint64_t p;
    std::string ap_tok;
    ls >> p >> ap_tok;
    if (ls.fail() || ap_tok.empty())
      parse_fail(path, lineno, "expected '<p> <a_p>'");
    std::string extra;
    if (ls >> extra) parse_fail(path, lineno, "trailing token '" + extra + "'");
    char* end = nullptr;
    const double ap = std::strtod(ap_tok.c_str(), &end);
    if (end == nullptr || *end != '\0')
      parse_fail(path, lineno, "malformed eigenvalue '" + ap_tok + "'");
    if (!rec.ap_values.empty() && p <= rec.ap_values.back().first)
      parse_fail(path, lineno, "primes must be strictly increasing");

    const double cap =
        2.0 * std::pow(static_cast<double>(p), kKimSarnakExponent) +
        kApSnapSlack;
    if (std::abs(ap) > cap) {
      std::ostringstream os;
      os << path.string() << ":" << lineno << ": |a_p| = " << std::abs(ap)
         << " at p=" << p << " exceeds the eigenvalue cap " << cap;
      throw BoundError(os.str());
    }

    rec.ap_values.emplace_back(p, ap);
    pair_lines.push_back(lineno);
    max_places = std::max(max_places, decimal_places(ap_tok));
  }

  if (!have_label || !have_nu)
    parse_fail(path, lineno, "incomplete header (label and nu required)");

  if (!rec.ap_values.empty()) {
    const std::vector<uint64_t> primes = sieve_primes(rec.p_max());
    size_t qi = 0;
    std::vector<uint64_t> missing;
    for (size_t i = 0; i < rec.ap_values.size(); ++i) {
      const uint64_t p = rec.ap_values[i].first;
      while (qi < primes.size() && primes[qi] < p) {
        missing.push_back(primes[qi]);
        ++qi;
      }
      if (qi >= primes.size() || primes[qi] != p)
        parse_fail(path, pair_lines[i],
                   "index " + std::to_string(p) + " is not prime");
      ++qi;
    }
    if (!missing.empty()) {
      std::ostringstream os;
      os << path.string() << ": missing " << missing.size()
         << " prime(s) below p_max=" << rec.p_max() << ":";
      for (size_t i = 0; i < missing.size() && i < 10; ++i)
        os << " " << missing[i];
      if (missing.size() > 10) os << " ...";
      throw GapError(os.str());
    }
  }

  rec.input_precision =
      max_places == 0 ? 0.0 : 0.5 * std::pow(10.0, -max_places);
  return rec;
}

void write_form_file(const FormRecord& rec,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  out << "label " << rec.label << "\n";
  out << "nu " << format_double(rec.nu_abs) << "\n";
  for (const auto& [p, ap] : rec.ap_values)
    out << p << " " << format_double(ap) << "\n";
  if (!out) throw ParseError("write failed: " + path.string());
}

SatakeData satake_from_ap(const FormRecord& rec,
                          std::vector<std::string>* warnings) {
  std::unordered_map<uint64_t, std::complex<double>> alphas;
  for (const auto& [p, ap_in] : rec.ap_values) {
    double a = ap_in;
    if (std::abs(a) > 2.0 && std::abs(a) <= 2.0 + kApSnapSlack) {
      if (warnings != nullptr) {
        std::ostringstream os;
        os << "p=" << p << ": a_p=" << format_double(a)
           << " snapped to the unitary boundary " << (a > 0 ? "2" : "-2");
        warnings->push_back(os.str());
      }
      a = a > 0 ? 2.0 : -2.0;
    }
    std::complex<double> alpha;
    if (std::abs(a) <= 2.0) {
      alpha = {a / 2.0, std::sqrt(std::max(0.0, 4.0 - a * a)) / 2.0};
    } else {
      const double root = std::sqrt(a * a - 4.0);
      const double candidate = (a + (a > 0 ? root : -root)) / 2.0;
      const double cap =
          std::pow(static_cast<double>(p), kKimSarnakExponent) *
          (1.0 + kUnitaryTolerance);
      if (std::abs(candidate) > cap) {
        std::ostringstream os;
        os << "a_p=" << format_double(a) << " at p=" << p
           << " yields |alpha|=" << std::abs(candidate)
           << " beyond the p^(7/64) window";
        throw BoundError(os.str());
      }
      alpha = candidate;
    }
    alphas.emplace(p, alpha);
  }
  SatakeData data = SatakeData::create(rec.nu_abs, std::move(alphas),
                                       "dataset:" + rec.label);
  data.set_input_precision(rec.input_precision);
  return data;
}

SatakeData synthesize_form(uint64_t seed, uint64_t p_max,
                           SynthProfile profile) {
  if (p_max < 2) throw DomainError("synthesize_form: p_max must be >= 2");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  constexpr double kPi = 3.14159265358979323846;

  std::unordered_map<uint64_t, std::complex<double>> alphas;
  for (uint64_t p : sieve_primes(p_max)) {
    if (profile == SynthProfile::mixed && unif(gen) < 0.02) {
      const double t = 1.0 - unif(gen);  // (0, 1]
      const double cap = std::pow(static_cast<double>(p), kKimSarnakExponent);
      const double mag = 1.0 + (cap - 1.0) * t;
      const double sign = unif(gen) < 0.5 ? -1.0 : 1.0;
      alphas.emplace(p, std::complex<double>(sign * mag, 0.0));
      continue;
    }
    // Sato-Tate angle: density (2/pi) sin^2(theta) by rejection.
    double theta;
    do {
      theta = kPi * unif(gen);
    } while (unif(gen) > std::sin(theta) * std::sin(theta));
    alphas.emplace(p, std::complex<double>(std::cos(theta), std::sin(theta)));
  }

  std::string tag = "synthetic:" + std::to_string(seed);
  if (profile == SynthProfile::mixed) tag += ":mixed";
  return SatakeData::create(kSyntheticNuAbs, std::move(alphas), std::move(tag));
}

namespace {

constexpr char kMagic[8] = {'S', 'S', 'C', 'F', '0', '0', '0', '1'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

uint64_t fnv1a(const std::vector<unsigned char>& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<unsigned char> payload_bytes(const CoeffSeries& s) {
  std::vector<unsigned char> bytes;
  bytes.reserve(s.n_max * 8);
  for (uint64_t n = 1; n <= s.n_max; ++n) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(double));
    std::memcpy(&bits, &s.coeffs[n], 8);
    for (int i = 0; i < 8; ++i)
      bytes.push_back(static_cast<unsigned char>(bits >> (8 * i)));
  }
  return bytes;
}

}  // namespace

void cache_series(const CoeffSeries& series, const CacheKey& key,
                  const std::filesystem::path& path) {
  if (key.n_max != series.n_max)
    throw DomainError("cache_series: key n_max differs from the series");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open cache for writing: " + path.string());

  out.write(kMagic, 8);
  put_u32(out, kVersion);
  put_u32(out, static_cast<uint32_t>(key.form_label.size()));
  out.write(key.form_label.data(),
            static_cast<std::streamsize>(key.form_label.size()));
  put_u32(out, static_cast<uint32_t>(key.series_label.size()));
  out.write(key.series_label.data(),
            static_cast<std::streamsize>(key.series_label.size()));
  put_u64(out, key.n_max);
  put_u64(out, series.n_max);  // value count
  const std::vector<unsigned char> payload = payload_bytes(series);
  put_u64(out, fnv1a(payload));
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw ParseError("cache write failed: " + path.string());
}

CoeffSeries load_series(const std::filesystem::path& path,
                        const CacheKey& expected_key) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open cache: " + path.string());

  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw ParseError("not a coefficient cache: " + path.string());
  if (get_u32(in) != kVersion)
    throw ParseError("unsupported cache version: " + path.string());

  auto read_string = [&](uint32_t len) {
    std::string s(len, '\0');
    in.read(s.data(), len);
    return s;
  };
  CacheKey stored;
  stored.form_label = read_string(get_u32(in));
  stored.series_label = read_string(get_u32(in));
  stored.n_max = get_u64(in);
  const uint64_t count = get_u64(in);
  const uint64_t checksum = get_u64(in);
  if (!in || count != stored.n_max)
    throw ParseError("corrupt cache header: " + path.string());

  if (stored.form_label != expected_key.form_label ||
      stored.series_label != expected_key.series_label ||
      stored.n_max != expected_key.n_max) {
    std::ostringstream os;
    os << "cache key (" << stored.form_label << ", " << stored.series_label
       << ", " << stored.n_max << ") does not match requested ("
       << expected_key.form_label << ", " << expected_key.series_label << ", "
       << expected_key.n_max << ")";
    throw KeyMismatchError(os.str());
  }

  std::vector<unsigned char> payload(count * 8);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (!in) throw ParseError("cache payload truncated: " + path.string());
  if (fnv1a(payload) != checksum)
    throw ChecksumMismatchError("cache payload corrupt: " + path.string());

  CoeffSeries out(count, stored.series_label);
  for (uint64_t n = 1; n <= count; ++n) {
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
      bits |= static_cast<uint64_t>(payload[(n - 1) * 8 + i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    out[n] = v;
  }
  return out;
}

}  // namespace symsieve
