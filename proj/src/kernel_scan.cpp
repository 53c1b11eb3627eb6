#include "nds/kernel_scan.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include "nds/dedekind_sum.hpp"
#include "nds/number_theory.hpp"

namespace nds {

void ScanConfig::validate() const {
  if (q1 < 1 || q2 < 1) throw std::invalid_argument("q1 and q2 must be positive");
  if (q1 * q2 <= 1) throw std::invalid_argument("q1 q2 must exceed 1");
  if (q1 == 1) throw std::invalid_argument("kernel scans need q1 > 1 (the double sum is not defined for q1 = 1)");
  if (c_max_multiplier < 0) throw std::invalid_argument("multiplier must be non-negative");
  for (std::int64_t c : rows) {
    if (c < 1 || c % (q1 * q2) != 0) {
      throw std::invalid_argument("row c = " + std::to_string(c) + " is not a positive multiple of q1 q2");
    }
  }
  (void)selected_pairs();
}

std::vector<CharacterPair> ScanConfig::selected_pairs() const {
  if (pair_labels.empty()) return admissible_pairs(q1, q2);
  std::vector<CharacterPair> out;
  for (const std::string& label : pair_labels) {
    CharacterPair p = CharacterPair::parse(label);
    if (p.q1() != q1 || p.q2() != q2) {
      throw std::invalid_argument("pair " + label + " does not have moduli (" + std::to_string(q1) + ", " +
                                  std::to_string(q2) + ")");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::int64_t> ScanConfig::row_list() const {
  std::vector<std::int64_t> out = rows;
  if (out.empty()) {
    for (std::int64_t k = 1; k <= c_max_multiplier; ++k) out.push_back(k * q1 * q2);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Prediction> predict_kernel_elements(std::int64_t q1, std::int64_t q2, std::int64_t c_max) {
  if (q1 == 1) throw std::invalid_argument("predictions need q1 != 1");
  const std::int64_t N = q1 * q2;
  std::map<std::pair<std::int64_t, std::int64_t>, Prediction> found;
  for (int sign : {1, -1}) {
    for (std::int64_t Q : divisors(N)) {
      const std::int64_t R = N / Q;
      if (gcd(Q, R) != 1 || q2 == R) continue;
      for (std::int64_t u = 1; N * R * u * u <= c_max; ++u) {
        if (gcd(u, Q) != 1) continue;
        for (std::int64_t k = 1; N * R * k * u * u <= c_max; ++k) {
          const std::int64_t c = N * R * k * u * u;
          for (std::int64_t r = 0; r < R * u; ++r) {
            if (gcd(r, R) != 1) continue;
            const std::int64_t a = mod(sign + N * k * u * r, c);
            found.try_emplace({c, a}, Prediction{a, c, sign > 0 ? tags::kTheorem : tags::kNegative, Q, R, k, u, r});
          }
        }
      }
    }
  }
  std::vector<Prediction> out;
  out.reserve(found.size());
  for (auto& [key, p] : found) out.push_back(std::move(p));
  return out;
}

namespace {

struct RowResult {
  std::vector<KernelRecord> records;
  std::vector<std::int64_t> kernel_a;
};

RowResult scan_row(std::int64_t c, const ScanConfig& config, const std::vector<PairWeights>& weights,
                   const std::vector<std::string>& labels) {
  RowResult out;
  const std::int64_t N = config.q1 * config.q2;
  for (std::int64_t a = 1; a < c; ++a) {
    if (gcd(a, c) != 1) continue;
    if (config.gamma1_only && mod(a, N) != 1 % N) continue;
    const SumTable table = build_sum_table(config.q1, config.q2, a, c);
    bool all_zero = !weights.empty();
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const bool z = weights[i].is_zero(table);
      all_zero = all_zero && z;
      out.records.push_back({a, c, labels[i], z, tags::kNone});
    }
    if (all_zero) out.kernel_a.push_back(a);
  }
  return out;
}

}  // namespace

ScanResult scan(const ScanConfig& config) {
  config.validate();
  ScanResult result;
  result.config = config;
  const std::vector<CharacterPair> pairs = config.selected_pairs();
  std::vector<PairWeights> weights;
  for (const CharacterPair& p : pairs) {
    weights.emplace_back(p);
    result.pairs.push_back(p.label());
  }
  const std::vector<std::int64_t> rows = config.row_list();
  if (rows.empty()) return result;

  std::vector<RowResult> per_row(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) per_row[i] = scan_row(rows[i], config, weights, result.pairs);
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  std::map<std::pair<std::int64_t, std::int64_t>, std::string> predicted;
  for (const Prediction& p : predict_kernel_elements(config.q1, config.q2, rows.back())) {
    predicted.emplace(std::make_pair(p.c, p.a), p.tag);
  }
  std::map<std::pair<std::int64_t, std::int64_t>, std::string> tag_of;
  auto tag_for = [&](std::int64_t a, std::int64_t c, bool in_kernel) -> std::string {
    if (mod(a - 1, c) == 0 || mod(a + 1, c) == 0) return tags::kTrivial;
    auto it = predicted.find({c, a});
    if (it != predicted.end()) return it->second;
    if (in_kernel && mod(checked_mul(a, a) - 1, c) == 0) return tags::kUnexplained;
    return tags::kNone;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::int64_t c = rows[i];
    for (std::int64_t a : per_row[i].kernel_a) {
      result.kernel.emplace_back(a, c);
      result.kernel_tags.push_back(tag_for(a, c, true));
      tag_of[{c, a}] = result.kernel_tags.back();
    }
    for (KernelRecord& rec : per_row[i].records) {
      auto it = tag_of.find({c, rec.a});
      rec.predicted_by = it != tag_of.end() ? it->second : tag_for(rec.a, c, false);
      result.records.push_back(std::move(rec));
    }
  }
  std::sort(result.records.begin(), result.records.end(), [](const KernelRecord& x, const KernelRecord& y) {
    return std::tie(x.c, x.a, x.pair) < std::tie(y.c, y.a, y.pair);
  });
  return result;
}

NonvanishingReport verify_nonvanishing(std::int64_t q1, std::int64_t q2, std::int64_t k_max) {
  if (q1 == 1) throw std::invalid_argument("nonvanishing needs q1 != 1");
  if (gcd(q1, q2) != 1) throw std::invalid_argument("nonvanishing needs gcd(q1, q2) = 1");
  const std::int64_t N = q1 * q2;
  NonvanishingReport rep;
  std::vector<PairWeights> weights;
  for (const CharacterPair& p : admissible_pairs(q1, q2)) weights.emplace_back(p);
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const std::int64_t c = N * k * q2;
    for (std::int64_t r = 0; r < q2; ++r) {
      if (gcd(r, q2) != 1) continue;
      for (int sign : {1, -1}) {
        const std::int64_t a = mod(sign + N * k * r, c);
        const SumTable table = build_sum_table(q1, q2, a, c);
        for (const PairWeights& w : weights) {
          ++rep.checked;
          if (w.is_zero(table)) rep.violations.push_back({a, c, w.pair().label(), true, tags::kNone});
        }
      }
    }
  }
  return rep;
}

}  // namespace nds
