#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nds/character.hpp"

namespace nds {

struct ScanConfig {
  std::int64_t q1 = 1;
  std::int64_t q2 = 1;
  std::int64_t c_max_multiplier = 10;
  /// Empty selects every admissible pair.
  std::vector<std::string> pair_labels;
  bool gamma1_only = false;
  /// Restrict to these rows c (each a multiple of q1 q2) instead of N..multiplier*N.
  std::vector<std::int64_t> rows;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
  std::vector<CharacterPair> selected_pairs() const;
  std::vector<std::int64_t> row_list() const;
};

ScanConfig scan_config_from_json(const std::string& text);
std::string scan_config_to_json(const ScanConfig& config);

namespace tags {
inline constexpr const char* kTrivial = "trivial";
inline constexpr const char* kTheorem = "theorem-1.2";
inline constexpr const char* kNegative = "eq-4.1-negative";
inline constexpr const char* kUnexplained = "a-squared-unexplained";
inline constexpr const char* kNone = "none";
}  // namespace tags

struct KernelRecord {
  std::int64_t a = 0;
  std::int64_t c = 0;
  std::string pair;
  bool zero = false;
  std::string predicted_by = tags::kNone;
};

struct Prediction {
  std::int64_t a, c;
  std::string tag;  // theorem-1.2 (+1 branch) or eq-4.1-negative (-1 branch)
  std::int64_t Q, R, k, u, r;
};

/// All (+-1 + Nkur mod c, c = NRku^2) with N = QR, gcd(Q, R) = 1, q2 != R,
/// gcd(u, Q) = gcd(r, R) = 1, 0 <= r < Ru, c <= c_max. One entry per (a, c),
/// keeping the first witness; sorted by (c, a).
std::vector<Prediction> predict_kernel_elements(std::int64_t q1, std::int64_t q2, std::int64_t c_max);

struct ScanResult {
  ScanConfig config;
  std::vector<std::string> pairs;       // labels, in enumeration order
  std::vector<KernelRecord> records;    // sorted by (c, a, pair)
  /// (a, c) zero for every selected pair, sorted by (c, a).
  std::vector<std::pair<std::int64_t, std::int64_t>> kernel;
  /// Tag of each kernel entry.
  std::vector<std::string> kernel_tags;
};

/// One record per (a, c, pair) with 0 < a < c, gcd(a, c) = 1 and N | c (a = 1 mod N
/// when gamma1_only). Rows run in parallel; the output is deterministic.
ScanResult scan(const ScanConfig& config);

struct NonvanishingReport {
  std::int64_t checked = 0;
  /// (a, c, pair) with a vanishing sum.
  std::vector<KernelRecord> violations;
  bool passed() const { return violations.empty(); }
};

/// Checks S(+-1 + Nkr, Nkq2) != 0 for k = 1..k_max, r mod q2 coprime to q2, every pair.
NonvanishingReport verify_nonvanishing(std::int64_t q1, std::int64_t q2, std::int64_t k_max);

/// CSV with header a,c,pair,zero,predicted_by.
std::string emit_csv(const std::vector<KernelRecord>& records);
/// Parses emit_csv output; throws std::invalid_argument on malformed input.
std::vector<KernelRecord> parse_csv(const std::string& text);

struct FigureStyle {
  int width = 640;
  int height = 640;
  std::string title;
  /// Plot K_{q1,q2} (all pairs zero) rather than every zero record.
  bool intersection = true;
};

/// Scatter plot with a on the x axis and c on the y axis; predicted points
/// are circled. Empty input gives axes only.
std::string emit_figure(const std::vector<KernelRecord>& records, const FigureStyle& style = {});

/// Whole-file helpers; throw IoError naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace nds
