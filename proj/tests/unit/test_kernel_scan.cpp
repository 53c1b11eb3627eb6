#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nds/dedekind_sum.hpp"
#include "nds/kernel_scan.hpp"
#include "nds/number_theory.hpp"
#include "support/oracle.hpp"

using namespace nds;

namespace {

using Point = std::pair<std::int64_t, std::int64_t>;  // (a, c)

ScanConfig config(std::int64_t q1, std::int64_t q2, std::int64_t mult) {
  ScanConfig cfg;
  cfg.q1 = q1;
  cfg.q2 = q2;
  cfg.c_max_multiplier = mult;
  return cfg;
}

std::set<Point> kernel_set(const ScanResult& r) { return {r.kernel.begin(), r.kernel.end()}; }

std::set<Point> tagged(const ScanResult& r, const std::string& tag) {
  std::set<Point> out;
  for (std::size_t i = 0; i < r.kernel.size(); ++i) {
    if (r.kernel_tags[i] == tag) out.insert(r.kernel[i]);
  }
  return out;
}

const ScanResult& scan_3_5() {
  static const ScanResult r = scan(config(3, 5, 10));
  return r;
}

}  // namespace

TEST(Predictions, SmallestRowsForLevel15) {
  const auto preds = predict_kernel_elements(3, 5, 60);
  std::map<Point, std::string> got;
  for (const Prediction& p : preds) got[{p.a, p.c}] = p.tag;
  EXPECT_EQ(got.at({16, 45}), tags::kTheorem);
  EXPECT_EQ(got.at({31, 45}), tags::kTheorem);
  EXPECT_EQ(got.at({14, 45}), tags::kNegative);
  EXPECT_EQ(got.at({29, 45}), tags::kNegative);
  // Q = 15 contributes only +-1 modulo c at c = 15 k.
  EXPECT_EQ(got.at({1, 15}), tags::kTheorem);
  EXPECT_EQ(got.at({14, 15}), tags::kNegative);
  EXPECT_EQ(got.count({4, 15}), 0u);
  for (const Prediction& p : preds) {
    EXPECT_EQ(p.c, p.Q * p.R * p.R * p.k * p.u * p.u);
    EXPECT_EQ(mod(p.a - (p.tag == tags::kTheorem ? 1 : -1), p.c) % (p.c / (p.R * p.u)), 0);
    EXPECT_NE(p.R, 5);
  }
  EXPECT_TRUE(std::is_sorted(preds.begin(), preds.end(),
                             [](const Prediction& x, const Prediction& y) { return std::tie(x.c, x.a) < std::tie(y.c, y.a); }));
  EXPECT_THROW(predict_kernel_elements(1, 5, 100), std::invalid_argument);
}

TEST(Predictions, SquareRowAt60) {
  // R = 1, u = 2: c = 15 * 4 = 60, a = +-1 + 30 r.
  std::set<Point> row;
  for (const Prediction& p : predict_kernel_elements(3, 5, 60)) {
    if (p.c == 60) row.insert({p.a, p.c});
  }
  EXPECT_EQ(row, (std::set<Point>{{1, 60}, {29, 60}, {31, 60}, {59, 60}}));
  const std::set<Point> k = kernel_set(scan_3_5());
  for (const Point& p : row) EXPECT_TRUE(k.count(p));
}

TEST(Predictions, SquareFactorRows) {
  // u = 2 with Q = 7, R = 11 first appears at c = 77 * 11 * 4.
  const auto preds = predict_kernel_elements(7, 11, 77 * 11 * 4);
  bool seen = false;
  for (const Prediction& p : preds) seen = seen || (p.u == 2 && p.c == 77 * 11 * 4);
  EXPECT_TRUE(seen);
}

TEST(Scan, RowCountsMatchTotient) {
  const ScanResult& r = scan_3_5();
  ASSERT_EQ(r.pairs.size(), admissible_pairs(3, 5).size());
  std::size_t expected = 0;
  for (std::int64_t k = 1; k <= 10; ++k) expected += static_cast<std::size_t>(euler_phi(15 * k)) * r.pairs.size();
  EXPECT_EQ(r.records.size(), expected);
  EXPECT_TRUE(std::is_sorted(r.records.begin(), r.records.end(), [](const KernelRecord& x, const KernelRecord& y) {
    return std::tie(x.c, x.a, x.pair) < std::tie(y.c, y.a, y.pair);
  }));
}

TEST(Scan, RecordsMatchExactSums) {
  const ScanResult& r = scan_3_5();
  for (std::size_t i = 0; i < r.records.size(); i += 37) {
    const KernelRecord& rec = r.records[i];
    const CharacterPair p = CharacterPair::parse(rec.pair);
    EXPECT_EQ(rec.zero, dedekind_sum_finite(p, rec.a, rec.c).is_zero()) << rec.a << "," << rec.c;
  }
}

TEST(Scan, KernelAgreesWithOracle) {
  const ScanResult& r = scan_3_5();
  std::vector<std::pair<oracle::Character, oracle::Character>> chars;
  for (const CharacterPair& p : admissible_pairs(3, 5)) {
    chars.emplace_back(oracle::Character(3, p.chi1().exponents()), oracle::Character(5, p.chi2().exponents()));
  }
  std::set<Point> want;
  for (std::int64_t c = 15; c <= 150; c += 15) {
    for (std::int64_t a = 1; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      bool all = true;
      for (const auto& [x1, x2] : chars) all = all && std::abs(oracle::dedekind_sum(x1, x2, a, c)) < 1e-9;
      if (all) want.insert({a, c});
    }
  }
  EXPECT_EQ(kernel_set(r), want);
}

TEST(Scan, PredictionsAreSound) {
  const ScanResult& r = scan_3_5();
  const std::set<Point> k = kernel_set(r);
  for (const Prediction& p : predict_kernel_elements(3, 5, 150)) {
    if (p.a == 0) continue;
    EXPECT_TRUE(k.count({p.a, p.c})) << p.a << "," << p.c << " " << p.tag;
  }
}

TEST(Scan, TrivialElementsAreInKernel) {
  const std::set<Point> k = kernel_set(scan_3_5());
  for (std::int64_t c = 15; c <= 150; c += 15) {
    EXPECT_TRUE(k.count({1, c}));
    EXPECT_TRUE(k.count({c - 1, c}));
  }
}

TEST(Scan, UnexplainedPointsForLevel15) {
  const ScanResult& r = scan_3_5();
  const std::set<Point> want{{29, 105}, {76, 105}, {29, 120}, {31, 120}, {89, 120}, {91, 120}};
  EXPECT_EQ(tagged(r, tags::kUnexplained), want);
  // Every kernel element up to c = 10N is trivial, predicted or an involution mod c.
  for (std::size_t i = 0; i < r.kernel.size(); ++i) {
    EXPECT_NE(r.kernel_tags[i], tags::kNone) << r.kernel[i].first << "," << r.kernel[i].second;
  }
}

TEST(Scan, Gamma1Restriction) {
  ScanConfig cfg = config(3, 5, 6);
  cfg.gamma1_only = true;
  const ScanResult r = scan(cfg);
  for (const KernelRecord& rec : r.records) EXPECT_EQ(mod(rec.a, 15), 1);
  std::size_t expected = 0;
  for (std::int64_t c = 15; c <= 90; c += 15) {
    for (std::int64_t a = 1; a < c; a += 15) expected += std::gcd(a, c) == 1;
  }
  EXPECT_EQ(r.records.size(), expected * r.pairs.size());
}

TEST(Scan, EmptyRange) {
  const ScanResult r = scan(config(3, 5, 0));
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.kernel.empty());
  EXPECT_EQ(r.pairs.size(), admissible_pairs(3, 5).size());
}

TEST(Scan, ExplicitRowsAndPairs) {
  ScanConfig cfg = config(3, 5, 10);
  cfg.rows = {45, 30, 45};
  cfg.pair_labels = {admissible_pairs(3, 5).front().label()};
  const ScanResult r = scan(cfg);
  EXPECT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.records.size(), static_cast<std::size_t>(euler_phi(30) + euler_phi(45)));
  EXPECT_EQ(r.records.front().c, 30);
}

TEST(Scan, Validation) {
  EXPECT_THROW(scan(config(1, 5, 3)), std::invalid_argument);
  EXPECT_THROW(scan(config(3, 5, -1)), std::invalid_argument);
  EXPECT_THROW(scan(config(0, 5, 3)), std::invalid_argument);
  ScanConfig bad_row = config(3, 5, 3);
  bad_row.rows = {20};
  EXPECT_THROW(scan(bad_row), std::invalid_argument);
  ScanConfig bad_pair = config(3, 5, 3);
  bad_pair.pair_labels = {"4:1;5:1"};
  EXPECT_THROW(scan(bad_pair), std::invalid_argument);
}

TEST(Scan, DeterministicAcrossThreadCounts) {
  ScanConfig one = config(4, 3, 12);
  one.threads = 1;
  ScanConfig many = one;
  many.threads = 4;
  EXPECT_EQ(emit_csv(scan(one).records), emit_csv(scan(many).records));
}

TEST(Nonvanishing, Examples) {
  for (const CharacterPair& p : admissible_pairs(3, 5)) {
    EXPECT_FALSE(dedekind_sum_finite(p, 16, 75).is_zero());
    EXPECT_FALSE(dedekind_sum_finite(p, 61, 150).is_zero());
    EXPECT_FALSE(dedekind_sum_finite(p, 59, 150).is_zero());
  }
}

TEST(Nonvanishing, HoldsForSmallLevels) {
  for (auto [q1, q2] : {std::pair{3, 5}, {4, 3}, {5, 3}}) {
    const NonvanishingReport rep = verify_nonvanishing(q1, q2, 6);
    EXPECT_TRUE(rep.passed()) << q1 << "," << q2;
    EXPECT_GT(rep.checked, 0);
  }
  EXPECT_THROW(verify_nonvanishing(1, 5, 3), std::invalid_argument);
  EXPECT_THROW(verify_nonvanishing(3, 6, 3), std::invalid_argument);
}

TEST(Csv, ScanRowsCarryTags) {
  const std::string csv = emit_csv(scan_3_5().records);
  EXPECT_NE(csv.find("\n16,45,3:1;5:1,true,theorem-1.2\n"), std::string::npos);
  EXPECT_NE(csv.find("\n14,45,3:1;5:1,true,eq-4.1-negative\n"), std::string::npos);
  EXPECT_NE(csv.find("\n29,105,3:1;5:1,true,a-squared-unexplained\n"), std::string::npos);
}

TEST(Csv, HeaderOnlyWhenEmpty) { EXPECT_EQ(emit_csv({}), "a,c,pair,zero,predicted_by\n"); }

TEST(Csv, RoundTripWithQuoting) {
  const std::vector<KernelRecord> recs{{1, 15, "3:1;5:1", true, tags::kTrivial},
                                       {7, 24, "8:1,1;3:1", false, tags::kNone},
                                       {5, 24, "odd \"label\"", true, tags::kUnexplained}};
  const std::string text = emit_csv(recs);
  EXPECT_NE(text.find("\"8:1,1;3:1\""), std::string::npos);
  EXPECT_NE(text.find("\"odd \"\"label\"\"\""), std::string::npos);
  const auto back = parse_csv(text);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].a, recs[i].a);
    EXPECT_EQ(back[i].c, recs[i].c);
    EXPECT_EQ(back[i].pair, recs[i].pair);
    EXPECT_EQ(back[i].zero, recs[i].zero);
    EXPECT_EQ(back[i].predicted_by, recs[i].predicted_by);
  }
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(parse_csv("x,y\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv("a,c,pair,zero,predicted_by\n1,2,3\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv("a,c,pair,zero,predicted_by\nx,15,p,true,none\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv("a,c,pair,zero,predicted_by\n1,15,\"p,true,none\n"), std::invalid_argument);
}

TEST(Svg, AxesOnlyWhenEmpty) {
  const std::string svg = emit_figure({});
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("<circle"), std::string::npos);
}

TEST(Svg, PlotsKernelPoints) {
  const ScanResult& r = scan_3_5();
  FigureStyle style;
  style.title = "K_{3,5}";
  const std::string svg = emit_figure(r.records, style);
  std::size_t circles = 0;
  for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
  EXPECT_GE(circles, r.kernel.size());
  EXPECT_NE(svg.find("K_{3,5}"), std::string::npos);
}

TEST(JsonConfig, RoundTrip) {
  ScanConfig cfg = config(4, 3, 7);
  cfg.gamma1_only = true;
  cfg.rows = {12, 36};
  cfg.threads = 2;
  const ScanConfig back = scan_config_from_json(scan_config_to_json(cfg));
  EXPECT_EQ(back.q1, 4);
  EXPECT_EQ(back.q2, 3);
  EXPECT_EQ(back.c_max_multiplier, 7);
  EXPECT_TRUE(back.gamma1_only);
  EXPECT_EQ(back.rows, cfg.rows);
  EXPECT_EQ(back.threads, 2u);
}

TEST(JsonConfig, RejectsBadInput) {
  EXPECT_THROW(scan_config_from_json("{bad"), std::invalid_argument);
  EXPECT_THROW(scan_config_from_json("[1,2]"), std::invalid_argument);
  EXPECT_THROW(scan_config_from_json(R"({"q1": 3, "q2": 5, "colour": 1})"), std::invalid_argument);
  EXPECT_THROW(scan_config_from_json(R"({"q1": "three", "q2": 5})"), std::invalid_argument);
}
