#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "wonderful/counting.hpp"

// Batch verification: every suite that applies at (q, n) is run and its
// checks collected into a deterministic JSON report.
namespace wonderful::verify {

inline constexpr const char* kToolVersion = "1.0.0";

/// Lattices above this many elements skip the enumeration suites.
inline constexpr std::size_t kVerifyLatticeLimit = 1'000;
/// Ordered flag pairs certified before the fan suite is skipped.
inline constexpr std::size_t kVerifyPairLimit = 1'000'000;
/// Points of the rational grid above which the incomparability suite is skipped.
inline constexpr std::size_t kVerifyGridLimit = 200;
/// t in K^n tested by the chart census.
inline constexpr std::uint64_t kVerifyChartLimit = 1'000'000;
/// Collineation groups larger than this are not searched.
inline constexpr std::uint64_t kVerifySearchLimit = 200'000;

enum class Format { Json, Csv, Text };

struct RunConfig {
  unsigned q = 2;
  int n = 2;
  unsigned m = 2;  // extension degree for the chart suite
  std::string subcommand = "verify";
  Format format = Format::Json;
  std::uint64_t budget = 50'000'000;  // node cap of the collineation search
  unsigned workers = 1;
  std::string out;  // empty: standard output
  bool counting_only = false;

  /// Throws NotPrime or InvalidArgument.
  void validate() const;
};

/// Records in run order; `summary` counts; `footer` holds the wall time and
/// is always the last key.
struct Report {
  nlohmann::ordered_json doc;
  bool budget_exceeded = false;

  bool all_pass() const;
  /// 0 all pass, 1 any failure, 3 budget exceeded.
  int exit_code() const;
};

Report run_verify(const RunConfig& config);

/// JSON number when it fits in 64 bits, decimal string otherwise.
nlohmann::ordered_json big_json(const counting::BigInt& x);

/// The report without its footer, serialized; equal configs give equal text.
std::string deterministic_part(const Report& report, Format format);
std::string render(const Report& report, Format format);

}  // namespace wonderful::verify
