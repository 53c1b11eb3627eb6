#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nds/atkin_lehner.hpp"
#include "nds/character.hpp"
#include "nds/dedekind_sum.hpp"
#include "nds/eisenstein.hpp"
#include "nds/errors.hpp"
#include "nds/kernel_scan.hpp"

using namespace nds;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidation = 1, kComputation = 2, kIo = 3 };

std::string fmt_complex(std::complex<double> z) {
  const double scale = std::abs(z) * 1e-15;
  if (std::abs(z.real()) < scale) z.real(0.0);
  if (std::abs(z.imag()) < scale) z.imag(0.0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g %c %.15gi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buf;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::vector<std::string> coefficient_strings(const CyclotomicNumber& x) {
  std::vector<std::string> out;
  for (const BigRational& c : x.coefficients()) out.push_back(c.to_string());
  return out;
}

std::string coefficient_vector(const CyclotomicNumber& x) {
  std::string out = "[";
  const auto cs = coefficient_strings(x);
  for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? ", " : "") + cs[i];
  return out + "]";
}

json exact_json(const CyclotomicNumber& x) {
  return {{"order", x.order()}, {"coefficients", coefficient_strings(x)}, {"value", x.to_string()},
          {"embedding", complex_json(embed_complex(x))}};
}

struct MatrixArgs {
  std::optional<std::int64_t> a, b, c, d;
  std::string left_column;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "upper-left entry");
    cmd->add_option("--b", b, "upper-right entry");
    cmd->add_option("--c", c, "lower-left entry");
    cmd->add_option("--d", d, "lower-right entry");
    cmd->add_option("--left-column", left_column, "a,c: complete the column (a, c) to a matrix by extended gcd");
  }

  CongruenceMatrix build(std::int64_t level) const {
    const bool any = a || b || c || d;
    if (!left_column.empty()) {
      if (any) throw std::invalid_argument("give either --a/--b/--c/--d or --left-column, not both");
      const auto comma = left_column.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("--left-column expects 'a,c'");
      std::int64_t x = 0, y = 0;
      try {
        std::size_t p1 = 0, p2 = 0;
        x = std::stoll(left_column.substr(0, comma), &p1);
        y = std::stoll(left_column.substr(comma + 1), &p2);
        if (p1 != comma || p2 != left_column.size() - comma - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("--left-column expects two integers 'a,c'");
      }
      return CongruenceMatrix::from_left_column(x, y, level);
    }
    if (!any) return CongruenceMatrix::identity(level);
    if (!(a && b && c && d)) throw std::invalid_argument("all four of --a --b --c --d are required");
    return {*a, *b, *c, *d, level};
  }
};

struct PairArgs {
  std::int64_t q1 = 0, q2 = 0;
  std::string chi1, chi2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--q1", q1, "modulus of chi1")->required();
    cmd->add_option("--q2", q2, "modulus of chi2")->required();
    cmd->add_option("--chi1", chi1, "chi1 label 'q:e1,...' (default: every admissible pair)");
    cmd->add_option("--chi2", chi2, "chi2 label 'q:e1,...' (default: every admissible pair)");
  }

  std::vector<CharacterPair> pairs() const {
    if (chi1.empty() != chi2.empty()) throw std::invalid_argument("--chi1 and --chi2 must be given together");
    if (chi1.empty()) {
      auto all = admissible_pairs(q1, q2);
      if (all.empty()) throw std::invalid_argument("no admissible character pairs for these moduli");
      return all;
    }
    CharacterPair p(DirichletCharacter::parse(chi1), DirichletCharacter::parse(chi2));
    if (p.q1() != q1 || p.q2() != q2) throw std::invalid_argument("character moduli do not match --q1/--q2");
    return {p};
  }
};

int run_sum(const PairArgs& pa, const MatrixArgs& ma, bool as_json) {
  const std::vector<CharacterPair> pairs = pa.pairs();
  const CongruenceMatrix g = ma.build(pa.q1 * pa.q2);
  json out{{"matrix", g.to_string()}, {"results", json::array()}};
  if (!as_json) std::cout << "matrix " << g.to_string() << "\n";
  for (const CharacterPair& p : pairs) {
    try {
      const CyclotomicNumber s = dedekind_sum(p, g);
      if (as_json) {
        json r = exact_json(s);
        r["pair"] = p.label();
        r["exact"] = true;
        out["results"].push_back(r);
      } else {
        std::cout << "pair " << p.label() << "\n"
                  << "  field: Q(zeta_" << s.order() << ")\n"
                  << "  coefficients: " << coefficient_vector(s) << "\n"
                  << "  value: " << s.to_string() << "\n"
                  << "  embedding: " << fmt_complex(embed_complex(s)) << "\n";
      }
    } catch (const NotExactlyComputable&) {
      const std::complex<double> v = EisensteinCocycle(p).dedekind_sum(g);
      if (as_json) {
        out["results"].push_back({{"pair", p.label()}, {"exact", false}, {"embedding", complex_json(v)}});
      } else {
        std::cout << "pair " << p.label() << "\n"
                  << "  value: no exact formula (q1 = 1, c != 0); numeric evaluation\n"
                  << "  embedding: " << fmt_complex(v) << "\n";
      }
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

int run_char_list(std::int64_t q, std::int64_t q1, std::int64_t q2, bool primitive, bool as_json) {
  json out = json::array();
  if (q1 || q2) {
    if (q) throw std::invalid_argument("give either --q or --q1/--q2");
    if (!q1 || !q2) throw std::invalid_argument("--q1 and --q2 must be given together");
    for (const CharacterPair& p : admissible_pairs(q1, q2)) {
      if (as_json) {
        out.push_back({{"pair", p.label()}, {"chi1_parity", p.chi1().parity()}, {"psi", p.psi().label()}});
      } else {
        std::cout << p.label() << "  parity " << (p.chi1().is_even() ? "even/even" : "odd/odd") << "\n";
      }
    }
  } else {
    if (q < 1) throw std::invalid_argument("--q must be a positive modulus");
    const auto chars = primitive ? enumerate_primitive_characters(q) : enumerate_characters(q);
    for (const DirichletCharacter& chi : chars) {
      if (as_json) {
        out.push_back({{"label", chi.label()},
                       {"order", chi.order()},
                       {"parity", chi.parity()},
                       {"conductor", chi.conductor()},
                       {"primitive", chi.is_primitive()}});
      } else {
        std::cout << chi.label() << "  order " << chi.order() << "  " << (chi.is_even() ? "even" : "odd")
                  << "  conductor " << chi.conductor() << (chi.is_primitive() ? "  primitive" : "") << "\n";
      }
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

struct OperatorArgs {
  std::int64_t Q = 0, r0 = 1, u0 = 1, shift = 0;

  void attach(CLI::App* cmd, bool required_q) {
    auto* opt = cmd->add_option("--Q", Q, "Q with N = QR, gcd(Q, R) = 1 (Q = N gives the Fricke matrix)");
    if (required_q) opt->required();
    cmd->add_option("--r0", r0, "residue class of r modulo R");
    cmd->add_option("--u0", u0, "residue class of u modulo Q");
    cmd->add_option("--shift", shift, "move to another matrix in the same class (t + mQr, v + mRu)");
  }

  ALOperator build(std::int64_t N) const {
    if (Q == N && r0 == 1 && u0 == 1 && shift == 0) return fricke(N);
    const ALOperator W = build_al_operator(N, Q, r0, u0);
    return shift ? W.shifted(shift) : W;
  }
};

json operator_json(const ALOperator& W) {
  return {{"N", W.N}, {"Q", W.Q}, {"R", W.R}, {"matrix", W.matrix().to_string()}, {"det", W.det()},
          {"r", W.r}, {"t", W.t}, {"u", W.u}, {"v", W.v}};
}

int run_al_op(std::int64_t N, const OperatorArgs& oa, const std::string& chi1, const std::string& chi2, bool as_json) {
  if (N < 1) throw std::invalid_argument("--N must be positive");
  const ALOperator W = oa.build(N);
  json out = operator_json(W);
  if (!as_json) std::cout << "W = " << W.matrix().to_string() << "  det " << W.det() << "  (" << W.to_string() << ")\n";
  if (!chi1.empty() || !chi2.empty()) {
    if (chi1.empty() || chi2.empty()) throw std::invalid_argument("--chi1 and --chi2 must be given together");
    const CharacterPair p(DirichletCharacter::parse(chi1), DirichletCharacter::parse(chi2));
    if (p.level() != N) throw std::invalid_argument("q1 q2 must equal N");
    const ReciprocityConstants k = reciprocity_constants(p, W);
    if (as_json) {
      out["pair"] = p.label();
      out["swapped"] = k.swapped.label();
      out["psi_prime"] = k.psi_prime.label();
      out["C"] = exact_json(k.C);
      out["beta"] = exact_json(k.beta);
      out["xi"] = exact_json(k.xi);
      out["xi_literal"] = complex_json(k.xi_literal);
    } else {
      std::cout << "pair " << p.label() << " -> " << k.swapped.label() << "\n"
                << "  psi': " << k.psi_prime.label() << "\n"
                << "  C: " << k.C.to_string() << "  ~ " << fmt_complex(embed_complex(k.C)) << "\n"
                << "  beta: " << k.beta.to_string() << "  ~ " << fmt_complex(embed_complex(k.beta)) << "\n"
                << "  xi: " << k.xi.to_string() << "  ~ " << fmt_complex(embed_complex(k.xi)) << "\n"
                << "  xi (literal tau(conj chi1) beta / (pi i)): " << fmt_complex(k.xi_literal) << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

int run_reciprocity(const PairArgs& pa, const MatrixArgs& ma, const OperatorArgs& w, const OperatorArgs& wp,
                    bool prime_given, const std::string& mode_name, bool as_json) {
  static const std::map<std::string, ReciprocityMode> modes{
      {"auto", ReciprocityMode::Auto}, {"exact", ReciprocityMode::Exact}, {"numeric", ReciprocityMode::Numeric}};
  const ReciprocityMode mode = modes.at(mode_name);
  const std::int64_t N = pa.q1 * pa.q2;
  const std::vector<CharacterPair> pairs = pa.pairs();
  const CongruenceMatrix g = ma.build(N);
  const ALOperator W = w.build(N);
  const ALOperator Wp = prime_given ? wp.build(N) : W;
  if (Wp.Q != W.Q) throw std::invalid_argument("W and W' must share Q");

  json out{{"matrix", g.to_string()}, {"W", operator_json(W)}, {"W_prime", operator_json(Wp)}, {"results", json::array()}};
  if (!as_json) {
    std::cout << "gamma " << g.to_string() << "  W " << W.matrix().to_string() << "  W' " << Wp.matrix().to_string()
              << "\n";
  }
  std::vector<std::string> failures;
  for (const CharacterPair& p : pairs) {
    const ReciprocityReport r = verify_reciprocity(p, W, Wp, g, mode);
    if (!r.passed) {
      std::ostringstream msg;
      msg << "pair " << p.label() << ": ";
      if (r.exact_lhs) {
        msg << "S(gamma') = " << r.exact_lhs->to_string() << " differs from xi S'(gamma) = " << r.exact_rhs->to_string();
      } else {
        msg << "left side S(W) + xi S'(gamma) = " << fmt_complex(r.lhs) << " differs from right side psi'(gamma) S(W') + "
            << "S(gamma') = " << fmt_complex(r.rhs) << " (residual " << r.residual << ")";
      }
      failures.push_back(msg.str());
    }
    if (as_json) {
      json j{{"pair", p.label()},       {"branch", r.branch},           {"gamma_prime", r.gamma_prime.to_string()},
             {"swapped", r.constants.swapped.label()}, {"xi", exact_json(r.constants.xi)},
             {"lhs", complex_json(r.lhs)}, {"rhs", complex_json(r.rhs)}, {"residual", r.residual},
             {"passed", r.passed}};
      if (r.exact_lhs) {
        j["exact_lhs"] = exact_json(*r.exact_lhs);
        j["exact_rhs"] = exact_json(*r.exact_rhs);
      }
      out["results"].push_back(j);
    } else {
      std::cout << "pair " << p.label() << "  [" << r.branch << "]\n"
                << "  gamma' = " << r.gamma_prime.to_string() << "\n";
      if (r.exact_lhs) {
        std::cout << "  S(gamma')     = " << r.exact_lhs->to_string() << "\n"
                  << "  xi S'(gamma)  = " << r.exact_rhs->to_string() << "\n";
      }
      std::cout << "  lhs = " << fmt_complex(r.lhs) << "\n"
                << "  rhs = " << fmt_complex(r.rhs) << "\n"
                << "  residual " << r.residual << "  " << (r.passed ? "PASS" : "FAIL") << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  for (const std::string& f : failures) std::cerr << "error: reciprocity failed for " << f << "\n";
  return failures.empty() ? kOk : kComputation;
}

struct ScanArgs {
  std::int64_t q1 = 0, q2 = 0, mult = 10;
  std::string config_path, csv_path, svg_path, title;
  bool gamma1 = false;
  std::vector<std::string> pairs;
  std::vector<std::int64_t> rows;
  unsigned threads = 0;
  CLI::Option *q1_opt, *q2_opt, *mult_opt, *gamma1_opt, *pairs_opt, *rows_opt, *threads_opt;

  void attach(CLI::App* cmd) {
    q1_opt = cmd->add_option("--q1", q1, "modulus of chi1 (> 1)");
    q2_opt = cmd->add_option("--q2", q2, "modulus of chi2");
    mult_opt = cmd->add_option("--mult", mult, "scan rows c = N, 2N, ..., mult N (default 10)");
    cmd->add_option("--config", config_path, "JSON scan configuration; explicit flags override it");
    cmd->add_option("--csv", csv_path, "write the CSV here (default: standard output)");
    cmd->add_option("--svg", svg_path, "also write the kernel scatter plot here");
    cmd->add_option("--title", title, "SVG title");
    gamma1_opt = cmd->add_flag("--gamma1", gamma1, "restrict to a = 1 (mod N)");
    pairs_opt = cmd->add_option("--pairs", pairs, "character pair labels 'chi1;chi2' (default: all admissible)");
    rows_opt = cmd->add_option("--rows", rows, "explicit rows c instead of the multiplier range");
    threads_opt = cmd->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  }

  ScanConfig config() const {
    ScanConfig cfg;
    if (!config_path.empty()) cfg = scan_config_from_json(read_text_file(config_path));
    if (q1_opt->count()) cfg.q1 = q1;
    if (q2_opt->count()) cfg.q2 = q2;
    if (mult_opt->count() || config_path.empty()) cfg.c_max_multiplier = mult;
    if (gamma1_opt->count()) cfg.gamma1_only = true;
    if (pairs_opt->count()) cfg.pair_labels = pairs;
    if (rows_opt->count()) cfg.rows = rows;
    if (threads_opt->count()) cfg.threads = threads;
    if (config_path.empty() && (!q1_opt->count() || !q2_opt->count())) {
      throw std::invalid_argument("--q1 and --q2 are required without --config");
    }
    cfg.validate();
    return cfg;
  }
};

int run_kernel_scan(const ScanArgs& sa, bool as_json) {
  const ScanConfig cfg = sa.config();
  const ScanResult r = scan(cfg);
  const std::string csv = emit_csv(r.records);
  if (!sa.csv_path.empty()) write_text_file(sa.csv_path, csv);
  if (!sa.svg_path.empty()) {
    FigureStyle style;
    style.title = sa.title.empty() ? "K_{" + std::to_string(cfg.q1) + "," + std::to_string(cfg.q2) + "}" : sa.title;
    write_text_file(sa.svg_path, emit_figure(r.records, style));
  }
  std::map<std::string, std::size_t> by_tag;
  for (const std::string& t : r.kernel_tags) ++by_tag[t];
  std::ostream& summary = sa.csv_path.empty() ? std::cerr : std::cout;
  if (sa.csv_path.empty()) std::cout << csv;
  if (as_json) {
    json j{{"config", json::parse(scan_config_to_json(cfg))},
           {"pairs", r.pairs},
           {"records", r.records.size()},
           {"kernel", r.kernel.size()},
           {"tags", by_tag}};
    summary << j.dump(2) << "\n";
  } else {
    summary << "scanned " << r.records.size() << " records over " << cfg.row_list().size() << " rows and "
            << r.pairs.size() << " pairs; kernel size " << r.kernel.size();
    for (const auto& [tag, n] : by_tag) summary << ", " << tag << " " << n;
    summary << "\n";
  }
  return kOk;
}

int run_plot(const std::string& csv_path, const std::string& svg_path, const std::string& title, bool all, bool as_json) {
  const std::vector<KernelRecord> records = parse_csv(read_text_file(csv_path));
  FigureStyle style;
  style.title = title;
  style.intersection = !all;
  write_text_file(svg_path, emit_figure(records, style));
  if (as_json) {
    std::cout << json{{"input", csv_path}, {"output", svg_path}, {"records", records.size()}}.dump(2) << "\n";
  } else {
    std::cout << "wrote " << svg_path << " from " << records.size() << " records\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newform Dedekind sums: exact values, reciprocity checks and kernel scans"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output")->configurable(false);

  PairArgs sum_pair;
  MatrixArgs sum_matrix;
  auto* sum = app.add_subcommand("sum", "exact S_{chi1,chi2}(gamma) for gamma in Gamma0(q1 q2)");
  sum_pair.attach(sum);
  sum_matrix.attach(sum);

  std::int64_t cl_q = 0, cl_q1 = 0, cl_q2 = 0;
  bool cl_primitive = false;
  auto* char_list = app.add_subcommand("char-list", "list characters mod q, or admissible pairs for (q1, q2)");
  char_list->add_option("--q", cl_q, "modulus");
  char_list->add_flag("--primitive", cl_primitive, "only primitive characters");
  char_list->add_option("--q1", cl_q1, "list admissible pairs: modulus of chi1");
  char_list->add_option("--q2", cl_q2, "list admissible pairs: modulus of chi2");

  std::int64_t al_N = 0;
  OperatorArgs al_args;
  std::string al_chi1, al_chi2;
  auto* al = app.add_subcommand("al-op", "build an Atkin-Lehner matrix and, for a pair, its constants");
  al->add_option("--N", al_N, "level")->required();
  al_args.attach(al, true);
  al->add_option("--chi1", al_chi1, "chi1 label, to print C, beta and xi");
  al->add_option("--chi2", al_chi2, "chi2 label, to print C, beta and xi");

  PairArgs rc_pair;
  MatrixArgs rc_matrix;
  OperatorArgs rc_w, rc_wp;
  std::string rc_mode = "auto";
  auto* rc = app.add_subcommand("reciprocity-check", "check S(W) + xi S'(gamma) = psi'(gamma) S(W') + S(gamma')");
  rc_pair.attach(rc);
  rc_matrix.attach(rc);
  rc_w.attach(rc, true);
  auto* rc_r0p = rc->add_option("--r0-prime", rc_wp.r0, "r0 for W' (default: W' = W)");
  auto* rc_u0p = rc->add_option("--u0-prime", rc_wp.u0, "u0 for W' (default: W' = W)");
  auto* rc_shp = rc->add_option("--shift-prime", rc_wp.shift, "shift for W' within its class");
  rc->add_option("--mode", rc_mode, "exact, numeric or auto")->check(CLI::IsMember({"auto", "exact", "numeric"}));

  ScanArgs scan_args;
  auto* ks = app.add_subcommand("kernel-scan", "scan rows c of Gamma0(N) for vanishing sums");
  scan_args.attach(ks);

  std::string plot_csv, plot_svg, plot_title;
  bool plot_all = false;
  auto* plot = app.add_subcommand("plot", "render a kernel-scan CSV as an SVG scatter plot");
  plot->add_option("--csv", plot_csv, "input CSV")->required();
  plot->add_option("--svg", plot_svg, "output SVG")->required();
  plot->add_option("--title", plot_title, "plot title");
  plot->add_flag("--all", plot_all, "plot every zero record rather than the kernel over all pairs");

  for (CLI::App* cmd : {sum, char_list, al, rc, ks, plot}) {
    cmd->add_flag("--json", as_json, "machine-readable output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*sum) return run_sum(sum_pair, sum_matrix, as_json);
    if (*char_list) return run_char_list(cl_q, cl_q1, cl_q2, cl_primitive, as_json);
    if (*al) return run_al_op(al_N, al_args, al_chi1, al_chi2, as_json);
    if (*rc) {
      rc_wp.Q = rc_w.Q;
      const bool prime_given = rc_r0p->count() || rc_u0p->count() || rc_shp->count();
      if (prime_given) {
        if (!rc_r0p->count()) rc_wp.r0 = rc_w.r0;
        if (!rc_u0p->count()) rc_wp.u0 = rc_w.u0;
      }
      return run_reciprocity(rc_pair, rc_matrix, rc_w, rc_wp, prime_given, rc_mode, as_json);
    }
    if (*ks) return run_kernel_scan(scan_args, as_json);
    if (*plot) return run_plot(plot_csv, plot_svg, plot_title, plot_all, as_json);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
  return kValidation;
}
