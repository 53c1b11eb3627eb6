#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nds/errors.hpp"
#include "nds/kernel_scan.hpp"

namespace nds {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line: " + line);
  return fields;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string emit_csv(const std::vector<KernelRecord>& records) {
  std::ostringstream out;
  out << "a,c,pair,zero,predicted_by\n";
  for (const KernelRecord& r : records) {
    out << r.a << ',' << r.c << ',' << csv_field(r.pair) << ',' << (r.zero ? "true" : "false") << ','
        << csv_field(r.predicted_by) << '\n';
  }
  return out.str();
}

std::vector<KernelRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "a,c,pair,zero,predicted_by") {
    throw std::invalid_argument("CSV must start with the header a,c,pair,zero,predicted_by");
  }
  std::vector<KernelRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5 || (f[3] != "true" && f[3] != "false")) {
      throw std::invalid_argument("malformed CSV row at line " + std::to_string(line_no));
    }
    try {
      out.push_back({std::stoll(f[0]), std::stoll(f[1]), f[2], f[3] == "true", f[4]});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("non-integer coordinate at CSV line " + std::to_string(line_no));
    }
  }
  return out;
}

std::string emit_figure(const std::vector<KernelRecord>& records, const FigureStyle& style) {
  // Collapse to one point per (a, c).
  std::map<std::pair<std::int64_t, std::int64_t>, std::pair<bool, std::string>> points;
  std::map<std::pair<std::int64_t, std::int64_t>, bool> all_zero;
  std::int64_t c_max = 0;
  for (const KernelRecord& r : records) {
    c_max = std::max(c_max, r.c);
    auto key = std::make_pair(r.a, r.c);
    auto [it, fresh] = all_zero.emplace(key, r.zero);
    if (!fresh) it->second = it->second && r.zero;
    if (!style.intersection && r.zero) points[key] = {true, r.predicted_by};
    if (style.intersection) points[key] = {false, r.predicted_by};
  }
  if (style.intersection) {
    for (auto& [key, v] : points) v.first = all_zero[key];
  }

  const double margin = 60.0;
  const double w = style.width, h = style.height;
  const double extent = c_max > 0 ? static_cast<double>(c_max) : 1.0;
  auto px = [&](double a) { return margin + a / extent * (w - 2 * margin); };
  auto py = [&](double c) { return h - margin - c / extent * (h - 2 * margin); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.height
      << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    out << "<text x=\"" << fmt(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(style.title) << "</text>\n";
  }
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(h - margin) << "\" x2=\"" << fmt(w - margin) << "\" y2=\""
      << fmt(h - margin) << "\"/>\n"
      << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(h - margin) << "\" x2=\"" << fmt(margin) << "\" y2=\""
      << fmt(margin) << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<text x=\"" << fmt(w / 2) << "\" y=\"" << fmt(h - 20) << "\" text-anchor=\"middle\">a</text>\n"
      << "<text x=\"20\" y=\"" << fmt(h / 2) << "\" text-anchor=\"middle\">c</text>\n"
      << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(h - margin + 16) << "\" text-anchor=\"middle\">0</text>\n";
  if (c_max > 0) {
    out << "<text x=\"" << fmt(px(extent)) << "\" y=\"" << fmt(h - margin + 16) << "\" text-anchor=\"middle\">" << c_max
        << "</text>\n"
        << "<text x=\"" << fmt(margin - 8) << "\" y=\"" << fmt(py(extent) + 4) << "\" text-anchor=\"end\">" << c_max
        << "</text>\n";
  }
  out << "</g>\n<g>\n";
  for (const auto& [key, v] : points) {
    if (!v.first) continue;
    const auto [a, c] = key;
    const std::string& tag = v.second;
    const char* fill = tag == tags::kTrivial ? "gray" : tag == tags::kUnexplained ? "blue" : "black";
    out << "<circle cx=\"" << fmt(px(a)) << "\" cy=\"" << fmt(py(c)) << "\" r=\"2\" fill=\"" << fill << "\"/>\n";
    if (tag == tags::kTheorem || tag == tags::kNegative) {
      out << "<circle cx=\"" << fmt(px(a)) << "\" cy=\"" << fmt(py(c))
          << "\" r=\"6\" fill=\"none\" stroke=\"red\" stroke-width=\"1\"/>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

ScanConfig scan_config_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("JSON config must be an object");
  static const std::set<std::string> known{"q1", "q2", "multiplier", "pairs", "gamma1_only", "rows", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  ScanConfig c;
  try {
    c.q1 = j.at("q1").get<std::int64_t>();
    c.q2 = j.at("q2").get<std::int64_t>();
    c.c_max_multiplier = j.value("multiplier", c.c_max_multiplier);
    c.pair_labels = j.value("pairs", c.pair_labels);
    c.gamma1_only = j.value("gamma1_only", c.gamma1_only);
    c.rows = j.value("rows", c.rows);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid config field: ") + e.what());
  }
  c.validate();
  return c;
}

std::string scan_config_to_json(const ScanConfig& config) {
  nlohmann::json j{{"q1", config.q1},
                   {"q2", config.q2},
                   {"multiplier", config.c_max_multiplier},
                   {"pairs", config.pair_labels},
                   {"gamma1_only", config.gamma1_only},
                   {"rows", config.rows},
                   {"threads", config.threads}};
  return j.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace nds
