#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "symsieve/errors.hpp"
#include "symsieve/ingest.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/satake.hpp"

using namespace symsieve;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "symsieve_ingest_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("canonical file with comments and blank lines") {
    const fs::path p = write_text("canonical.form",
                                  "# demo form\n"
                                  "label demo-11\n"
                                  "\n"
                                  "nu 1.0\n"
                                  "2 -1.25   # a_2\n"
                                  "3 0.5\n"
                                  "5 1\n");
    const FormRecord rec = parse_form_file(p);
    CHECK(rec.label == "demo-11");
    CHECK(rec.nu_abs == 1.0);
    REQUIRE(rec.ap_values.size() == 3);
    CHECK(rec.ap_values[0] == std::pair<uint64_t, double>{2, -1.25});
    CHECK(rec.ap_values[2] == std::pair<uint64_t, double>{5, 1.0});
    CHECK(rec.p_max() == 5);
    CHECK(rec.input_precision == 0.005);  // two decimal places -> half-ulp
  }

  TEST_CASE("integer eigenvalues are treated as exact") {
    const fs::path p =
        write_text("ints.form", "label z\nnu 0\n2 1\n3 -2\n5 0\n");
    CHECK(parse_form_file(p).input_precision == 0.0);
  }

  TEST_CASE("exponent notation counts effective decimal places") {
    const fs::path p = write_text("exp.form", "label z\nnu 1\n2 1.5e-3\n");
    CHECK(parse_form_file(p).input_precision == doctest::Approx(5e-5));
  }

  TEST_CASE("header only file is a valid empty table") {
    const fs::path p = write_text("empty.form", "label nothing\nnu 2.5\n");
    const FormRecord rec = parse_form_file(p);
    CHECK(rec.ap_values.empty());
    CHECK(rec.p_max() == 0);
  }

  TEST_CASE("parse errors carry the offending line number") {
    const auto line_of = [](const std::string& msg) {
      // message shape: "<path>:<line>: <what>"
      const size_t colon = msg.find(".form:");
      REQUIRE(colon != std::string::npos);
      return std::stoi(msg.substr(colon + 6));
    };

    fs::path p = write_text("badhead.form", "nu 1.0\nlabel x\n");
    CHECK_THROWS_AS(parse_form_file(p), ParseError);
    CHECK(line_of(error_text([&] { parse_form_file(p); })) == 1);

    p = write_text("nonprime.form", "label x\nnu 1\n2 0.5\n3 0.5\n4 0.5\n");
    std::string msg = error_text([&] { parse_form_file(p); });
    CHECK(msg.find("4 is not prime") != std::string::npos);
    CHECK(line_of(msg) == 5);

    p = write_text("order.form", "label x\nnu 1\n3 0.5\n2 0.5\n");
    msg = error_text([&] { parse_form_file(p); });
    CHECK(msg.find("strictly increasing") != std::string::npos);
    CHECK(line_of(msg) == 4);

    p = write_text("trailing.form", "label x\nnu 1\n2 0.5 junk\n");
    msg = error_text([&] { parse_form_file(p); });
    CHECK(msg.find("trailing token 'junk'") != std::string::npos);

    p = write_text("badval.form", "label x\nnu 1\n2 zero\n");
    msg = error_text([&] { parse_form_file(p); });
    CHECK(msg.find("malformed eigenvalue 'zero'") != std::string::npos);

    p = write_text("noheader.form", "# nothing but comments\n");
    CHECK_THROWS_AS(parse_form_file(p), ParseError);

    CHECK_THROWS_AS(parse_form_file(scratch_dir() / "no-such-file.form"),
                    ParseError);
  }

  TEST_CASE("gap detection lists the missing primes") {
    const fs::path p =
        write_text("gap.form", "label x\nnu 1\n2 0.1\n3 0.1\n7 0.1\n11 0.1\n");
    CHECK_THROWS_AS(parse_form_file(p), GapError);
    const std::string msg = error_text([&] { parse_form_file(p); });
    CHECK(msg.find("missing 1 prime(s)") != std::string::npos);
    CHECK(msg.find(" 5") != std::string::npos);
  }

  TEST_CASE("eigenvalue cap at parse time") {
    const fs::path p = write_text("cap.form", "label x\nnu 1\n2 3.0\n");
    CHECK_THROWS_AS(parse_form_file(p), BoundError);
  }

  TEST_CASE("write then parse is value-exact and byte-stable") {
    FormRecord rec;
    rec.label = "roundtrip";
    rec.nu_abs = 1.0;
    rec.ap_values = {{2, -0.8414709848078965}, {3, 1.2345678901234567}};
    const fs::path p1 = scratch_dir() / "rt1.form";
    const fs::path p2 = scratch_dir() / "rt2.form";
    write_form_file(rec, p1);
    const FormRecord back = parse_form_file(p1);
    CHECK(back.label == rec.label);
    CHECK(back.nu_abs == rec.nu_abs);
    REQUIRE(back.ap_values.size() == 2);
    CHECK(back.ap_values[0].second == rec.ap_values[0].second);
    CHECK(back.ap_values[1].second == rec.ap_values[1].second);
    write_form_file(back, p2);
    CHECK(slurp(p1) == slurp(p2));
  }

  TEST_CASE("satake reconstruction reproduces the eigenvalues") {
    SatakeData orig = synthesize_form(41, 300, SynthProfile::unitary);
    FormRecord rec;
    rec.label = "resynth";
    rec.nu_abs = orig.nu_abs();
    for (uint64_t p : sieve_primes(300))
      rec.ap_values.emplace_back(p, hecke_prime_power(orig, p, 1));
    const fs::path path = scratch_dir() / "resynth.form";
    write_form_file(rec, path);
    const SatakeData back = satake_from_ap(parse_form_file(path));
    CHECK(back.source_tag() == "dataset:resynth");
    CHECK(back.p_max() == orig.p_max());
    for (uint64_t p : sieve_primes(300))
      for (int m : {1, 2, 3})
        CHECK(hecke_prime_power(back, p, m) ==
              doctest::Approx(hecke_prime_power(orig, p, m)).epsilon(1e-12));
  }

  TEST_CASE("slightly over-unitary eigenvalues snap with a warning") {
    FormRecord rec;
    rec.label = "snap";
    rec.nu_abs = 1.0;
    rec.ap_values = {{2, 2.0000001}};
    std::vector<std::string> warnings;
    const SatakeData d = satake_from_ap(rec, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("snapped") != std::string::npos);
    CHECK(d.alpha(2) == std::complex<double>(1.0, 0.0));
  }

  TEST_CASE("real window: admissible beyond 2, rejected past the cap") {
    // p = 101: |alpha| may reach 101^(7/64) ~ 1.656, i.e. a_p up to ~2.26
    FormRecord rec;
    rec.label = "real-alpha";
    rec.nu_abs = 1.0;
    for (uint64_t p : sieve_primes(101))
      rec.ap_values.emplace_back(p, p == 101 ? 2.2 : 0.0);
    const SatakeData d = satake_from_ap(rec);
    const std::complex<double> a101 = d.alpha(101);
    CHECK(a101.imag() == 0.0);
    // alpha = (2.2 + sqrt(2.2^2 - 4)) / 2
    CHECK(a101.real() == doctest::Approx(1.5582575694955841).epsilon(1e-12));
    // p = 2: the same eigenvalue exceeds 2^(7/64) + 2^(-7/64) ~ 2.006
    FormRecord bad;
    bad.label = "too-real";
    bad.nu_abs = 1.0;
    bad.ap_values = {{2, 2.1}};
    CHECK_THROWS_AS(satake_from_ap(bad), BoundError);
  }

  TEST_CASE("synthesis is deterministic in the seed") {
    const SatakeData a = synthesize_form(7, 500, SynthProfile::unitary);
    const SatakeData b = synthesize_form(7, 500, SynthProfile::unitary);
    const SatakeData c = synthesize_form(8, 500, SynthProfile::unitary);
    bool all_equal = true, any_diff = false;
    for (uint64_t p : sieve_primes(500)) {
      all_equal = all_equal && a.alpha(p) == b.alpha(p);
      any_diff = any_diff || a.alpha(p) != c.alpha(p);
      CHECK(std::abs(std::abs(a.alpha(p)) - 1.0) < 1e-12);
    }
    CHECK(all_equal);
    CHECK(any_diff);
    CHECK(a.source_tag() == "synthetic:7");
    CHECK(a.input_precision() == 0.0);
  }

  TEST_CASE("mixed profile contains real parameters in the permitted window") {
    const SatakeData d = synthesize_form(7, 5000, SynthProfile::mixed);
    CHECK(d.source_tag() == "synthetic:7:mixed");
    size_t real_count = 0;
    for (uint64_t p : sieve_primes(5000)) {
      const std::complex<double> a = d.alpha(p);
      if (a.imag() == 0.0) {
        ++real_count;
        CHECK(std::abs(a.real()) > 1.0);
        CHECK(std::abs(a.real()) <=
              std::pow(static_cast<double>(p), 7.0 / 64.0) * (1 + 1e-12));
      }
    }
    CHECK(real_count > 0);
    CHECK(real_count < d.prime_count() / 5);  // rare by construction
  }

  TEST_CASE("coefficient cache round trips bit-exactly") {
    CoeffSeries s(64, "unit-test-series");
    for (uint64_t n = 1; n <= 64; ++n)
      s[n] = std::sqrt(static_cast<double>(n)) / 3.0 - 1.0;
    const CacheKey key{"formA", "unit-test-series", 64};
    const fs::path p1 = scratch_dir() / "cache1.bin";
    const fs::path p2 = scratch_dir() / "cache2.bin";
    cache_series(s, key, p1);
    cache_series(s, key, p2);
    CHECK(slurp(p1) == slurp(p2));  // writes are deterministic
    const CoeffSeries back = load_series(p1, key);
    CHECK(back.n_max == 64);
    CHECK(back.label == "unit-test-series");
    for (uint64_t n = 1; n <= 64; ++n) CHECK(back[n] == s[n]);
  }

  TEST_CASE("cache key mismatches are rejected") {
    CoeffSeries s(8, "series");
    for (uint64_t n = 1; n <= 8; ++n) s[n] = static_cast<double>(n);
    const fs::path p = scratch_dir() / "cache_key.bin";
    cache_series(s, {"form", "series", 8}, p);
    CHECK_NOTHROW(load_series(p, {"form", "series", 8}));
    CHECK_THROWS_AS(load_series(p, {"other", "series", 8}), KeyMismatchError);
    CHECK_THROWS_AS(load_series(p, {"form", "other", 8}), KeyMismatchError);
    CHECK_THROWS_AS(load_series(p, {"form", "series", 9}), KeyMismatchError);
  }

  TEST_CASE("payload corruption is caught by the checksum") {
    CoeffSeries s(32, "series");
    for (uint64_t n = 1; n <= 32; ++n) s[n] = 1.0 / static_cast<double>(n);
    const CacheKey key{"form", "series", 32};
    const fs::path p = scratch_dir() / "cache_bad.bin";
    cache_series(s, key, p);
    std::string bytes = slurp(p);
    bytes[bytes.size() - 5] ^= 0x40;  // flip one payload bit
    {
      std::ofstream out(p, std::ios::binary | std::ios::trunc);
      out << bytes;
    }
    CHECK_THROWS_AS(load_series(p, key), ChecksumMismatchError);
  }

  TEST_CASE("foreign and truncated cache files raise parse errors") {
    CoeffSeries s(32, "series");
    for (uint64_t n = 1; n <= 32; ++n) s[n] = static_cast<double>(n);
    const CacheKey key{"form", "series", 32};
    const fs::path p = scratch_dir() / "cache_trunc.bin";
    cache_series(s, key, p);
    std::string bytes = slurp(p);

    const fs::path magic = scratch_dir() / "cache_magic.bin";
    {
      std::string b = bytes;
      b[0] = 'X';
      std::ofstream out(magic, std::ios::binary);
      out << b;
    }
    CHECK_THROWS_AS(load_series(magic, key), ParseError);

    const fs::path trunc = scratch_dir() / "cache_short.bin";
    {
      std::ofstream out(trunc, std::ios::binary);
      out << bytes.substr(0, bytes.size() - 7);
    }
    CHECK_THROWS_AS(load_series(trunc, key), ParseError);
  }
}
