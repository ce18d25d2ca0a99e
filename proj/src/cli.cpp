/** @file
 * Command-line front end: argument parsing, dispatch, and report
 * emission (JSON to stdout / --json, sweep tables to --csv).
 *
 * Output discipline: all rows and documents are fully computed before
 * any file is opened, so a failing run leaves no partial outputs.
 */

#include "di/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "di/compression.hpp"
#include "di/gambling.hpp"
#include "di/hyptest.hpp"
#include "di/info.hpp"
#include "di/model.hpp"
#include "di/portfolio.hpp"
#include "di/report_io.hpp"
#include "di/rng.hpp"
#include "di/stats.hpp"

namespace di {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOpts {
  std::uint64_t seed = 12345;
  double tol = kRateTol;
  std::string csv;
  std::string json;
  bool quiet = false;
  std::string config;  ///< canonical invocation string for CSV trailers
};

void emit_json(const Json& doc, const GlobalOpts& g) {
  const std::string text = doc.dump(2) + "\n";
  if (!g.quiet) std::cout << text;
  if (!g.json.empty()) {
    std::ofstream f(g.json, std::ios::binary);
    if (!f) fail(ErrorKind::Usage, "cannot open output file: " + g.json);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) fail(ErrorKind::Usage, "failed writing output file: " + g.json);
  }
}

/// Write a whole CSV at once (header, rows, trailer); nothing touches
/// the filesystem until every row has been computed.
void write_csv(const GlobalOpts& g, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  if (g.csv.empty()) return;
  CsvWriter w(g.csv, columns, g.config);
  for (const auto& r : rows) w.row(r);
  w.close();
}

std::string bool_cell(bool v) { return v ? "1" : "0"; }

std::vector<int> read_symbols(const std::string& path, int alphabet,
                              const char* side) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Usage, "cannot open input file: " + path);
  std::vector<int> out;
  long long v = 0;
  while (f >> v) {
    if (v < 0 || v >= alphabet)
      fail(ErrorKind::Parse, std::string(side) + " symbol out of alphabet in " +
                                 path);
    out.push_back(static_cast<int>(v));
  }
  if (!f.eof()) fail(ErrorKind::Parse, "invalid symbol file: " + path);
  if (out.empty()) fail(ErrorKind::Parse, "empty symbol file: " + path);
  return out;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorKind::Usage, "invalid --n-list entry: '" + tok + "'");
    }
    pos = comma + 1;
  }
  return out;
}

// ------------------------------------------------------------------ info

struct InfoArgs {
  std::string model;
  int n = 0;
  std::string quantity = "all";
  int delay = 0;
};

void run_info(const InfoArgs& a, const GlobalOpts& g) {
  if (a.n < 1) fail(ErrorKind::Usage, "--n must be >= 1");
  if (a.delay != 0 && a.delay != 1)
    fail(ErrorKind::Usage, "--delay must be 0 or 1");
  JointProcessModel M = load_model_json(a.model);
  const bool want_lautum = a.quantity == "all" || a.quantity == "lautum" ||
                           a.quantity == "lautum1" || a.quantity == "lautum2";
  InfoReport r = compute_info_report(M, a.n, want_lautum);

  std::vector<std::pair<std::string, double>> named;
  named.emplace_back("directed",
                     a.delay == 0 ? r.di_y_to_x : r.di_y_delayed_to_x);
  named.emplace_back("reverse", r.di_x_to_y);
  named.emplace_back("mutual", r.mutual_info);
  if (want_lautum) {
    named.emplace_back("lautum", r.lautum);
    named.emplace_back("lautum1", r.lautum1_x_to_y);
    named.emplace_back("lautum2", r.lautum2_x_to_y);
    named.emplace_back("lautum1_reverse_delayed", r.lautum1_y_delayed_to_x);
    named.emplace_back("lautum1_reverse", r.lautum1_y_to_x);
    named.emplace_back("lautum2_reverse", r.lautum2_y_to_x);
  }

  Json doc;
  doc["n"] = r.n;
  doc["h_joint"] = r.h_joint;
  doc["h_x"] = r.h_x;
  doc["h_y"] = r.h_y;
  doc["h_x_given_y_causal"] = r.h_x_given_y_causal;
  doc["h_x_given_y_delayed"] = r.h_x_given_y_delayed;
  doc["h_y_given_x_causal"] = r.h_y_given_x_causal;
  doc["h_y_given_x_delayed"] = r.h_y_given_x_delayed;
  doc["di_y_to_x"] = r.di_y_to_x;
  doc["di_y_delayed_to_x"] = r.di_y_delayed_to_x;
  doc["di_x_to_y"] = r.di_x_to_y;
  doc["mutual_info"] = r.mutual_info;
  if (want_lautum) {
    doc["lautum"] = r.lautum;
    doc["lautum1_x_to_y"] = r.lautum1_x_to_y;
    doc["lautum2_x_to_y"] = r.lautum2_x_to_y;
    doc["lautum1_y_delayed_to_x"] = r.lautum1_y_delayed_to_x;
    doc["lautum1_y_to_x"] = r.lautum1_y_to_x;
    doc["lautum2_y_to_x"] = r.lautum2_y_to_x;
  }

  std::vector<std::vector<std::string>> rows;
  bool matched = false;
  for (const auto& [name, value] : named) {
    if (a.quantity != "all" && a.quantity != name) continue;
    matched = true;
    rows.push_back({std::to_string(a.n), name, format_g(value)});
  }
  if (!matched)
    fail(ErrorKind::Usage, "unknown --quantity: '" + a.quantity + "'");
  write_csv(g, {"n", "quantity", "value"}, rows);
  emit_json(doc, g);
}

// ---------------------------------------------------------------- gamble

struct GambleArgs {
  std::string model;
  int n = 0;
  std::string odds = "fair";
  std::string mode = "exact";
  int replicas = 100000;
  int lookahead = -1;
};

void run_gamble(const GambleArgs& a, const GlobalOpts& g) {
  if (a.n < 1) fail(ErrorKind::Usage, "--n must be >= 1");
  JointProcessModel M = load_model_json(a.model);
  Odds odds = a.odds == "fair" ? Odds::fair_odds() : load_odds_json(a.odds, M);
  const bool severable = has_no_feedback(M);

  Json doc;
  doc["model"] = a.model;
  doc["odds"] = a.odds;
  doc["mode"] = a.mode;
  std::vector<std::vector<std::string>> rows;
  const std::vector<std::string> columns = {
      "n",       "W_star_with_si", "W_star_no_si",
      "delta_W", "di_rate",        "penalty"};

  if (a.mode == "exact") {
    GrowthIncrease last;
    for (int h = 1; h <= a.n; ++h) {
      GrowthIncrease gi = growth_increase(M, odds, h);
      const double penalty =
          severable ? severed_betting_penalty(M, h)
                    : std::numeric_limits<double>::quiet_NaN();
      rows.push_back({std::to_string(h), format_g(gi.with_si / h),
                      format_g(gi.no_si / h), format_g(gi.per_race_increment),
                      format_g(gi.di / h), format_g(penalty)});
      if (h == a.n) {
        last = gi;
        doc["n"] = h;
        doc["with_si"] = gi.with_si;
        doc["no_si"] = gi.no_si;
        doc["average"] = gi.average;
        doc["per_race_increment"] = gi.per_race_increment;
        doc["di"] = gi.di;
        doc["di_rate"] = gi.di / h;
        doc["penalty"] = penalty;
      }
    }
  } else if (a.mode == "mc") {
    if (a.replicas < 2) fail(ErrorKind::Usage, "--replicas must be >= 2");
    GrowthIncreaseMc mc = growth_increase_mc(M, a.replicas, g.seed);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rows.push_back({std::to_string(mc.races), format_g(nan), format_g(nan),
                    format_g(mc.delta_w), format_g(nan), format_g(nan)});
    doc["races"] = mc.races;
    doc["delta_w"] = mc.delta_w;
    doc["stderr"] = mc.stderr_;
    doc["seed"] = g.seed;
  } else {
    fail(ErrorKind::Usage, "--mode must be 'exact' or 'mc'");
  }

  if (a.lookahead >= 0) {
    Json arr = Json::array();
    for (int k = 0; k <= a.lookahead; ++k) {
      Json e;
      e["k"] = k;
      e["delta"] = lookahead_delta(M, k);
      arr.push_back(e);
    }
    doc["lookahead"] = arr;
  }

  write_csv(g, columns, rows);
  emit_json(doc, g);
}

// ------------------------------------------------------------- portfolio

struct PortfolioArgs {
  std::string market;
  int n = 0;
};

void run_portfolio(const PortfolioArgs& a, const GlobalOpts& g) {
  if (a.n < 1) fail(ErrorKind::Usage, "--n must be >= 1");
  StockMarketModel mkt = load_market_json(a.market);
  std::vector<std::vector<std::string>> rows;
  Json doc;
  doc["market"] = a.market;
  for (int h = 1; h <= a.n; ++h) {
    PortfolioGap pg = growth_gap_vs_directed_info(mkt, h);
    rows.push_back({std::to_string(h), format_g(pg.with_si),
                    format_g(pg.no_si), format_g(pg.gap),
                    format_g(pg.directed_info), bool_cell(pg.bound_ok)});
    if (h == a.n) {
      doc["n"] = h;
      doc["with_si"] = pg.with_si;
      doc["no_si"] = pg.no_si;
      doc["gap"] = pg.gap;
      doc["directed_info"] = pg.directed_info;
      doc["bound_ok"] = pg.bound_ok;
      doc["max_kkt_residual"] = pg.max_kkt;
      doc["converged"] = pg.converged;
    }
  }
  write_csv(g,
            {"n", "W_with_si", "W_no_si", "gap", "directed_info", "bound_ok"},
            rows);
  emit_json(doc, g);
}

// -------------------------------------------------------------- compress

struct CompressArgs {
  std::string model;
  int n = 0;
  bool report = false;
  std::vector<std::string> encode;  ///< XFILE YFILE
  std::vector<std::string> decode;  ///< BITS YFILE
  std::string out;
};

void run_compress(const CompressArgs& a, const GlobalOpts& g) {
  JointProcessModel M = load_model_json(a.model);
  const int modes = static_cast<int>(!a.encode.empty()) +
                    static_cast<int>(!a.decode.empty()) +
                    static_cast<int>(a.report);
  if (modes != 1)
    fail(ErrorKind::Usage,
         "choose exactly one of --report, --encode, or --decode");

  if (a.report) {
    if (a.n < 1) fail(ErrorKind::Usage, "--n must be >= 1");
    std::vector<std::vector<std::string>> rows;
    Json doc;
    doc["model"] = a.model;
    for (int h = 1; h <= a.n; ++h) {
      LengthReport r = expected_length(M, h);
      rows.push_back({std::to_string(h), format_g(r.expected_bits),
                      format_g(r.entropy_bound), format_g(r.redundancy),
                      bool_cell(r.dyadic_exact)});
      if (h == a.n) {
        doc["n"] = h;
        doc["expected_len"] = r.expected_bits;
        doc["entropy_bound"] = r.entropy_bound;
        doc["redundancy"] = r.redundancy;
        doc["gallager_bound"] = r.gallager_bound;
        doc["dyadic_exact"] = r.dyadic_exact;
        try {
          doc["expected_len_no_si"] = expected_length_no_si(M, h);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Capacity) throw;
          doc["expected_len_no_si"] = nullptr;
        }
      }
    }
    write_csv(
        g,
        {"n", "expected_len", "entropy_bound", "redundancy", "dyadic_exact"},
        rows);
    emit_json(doc, g);
    return;
  }

  if (a.out.empty())
    fail(ErrorKind::Usage, "--encode/--decode require --out PATH");

  if (!a.encode.empty()) {
    SequencePair s;
    s.x = read_symbols(a.encode[0], M.nx, "x");
    s.y = read_symbols(a.encode[1], M.ny, "y");
    if (s.x.size() != s.y.size())
      fail(ErrorKind::Parse, "x and y sequences differ in length");
    CausalCode code(M, s.length());
    Bitstream bs = encode_sequence(code, s);
    write_bitstream(bs, a.out);
    Json doc;
    doc["n"] = s.length();
    doc["bits"] = bs.nbits;
    doc["out"] = a.out;
    emit_json(doc, g);
    return;
  }

  Bitstream bs = read_bitstream(a.decode[0]);
  std::vector<int> y = read_symbols(a.decode[1], M.ny, "y");
  CausalCode code(M, static_cast<int>(y.size()));
  std::vector<int> xs = decode_sequence(code, bs, y);
  std::string text;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) text += ' ';
    text += std::to_string(xs[i]);
  }
  text += '\n';
  std::ofstream f(a.out, std::ios::binary);
  if (!f) fail(ErrorKind::Usage, "cannot open output file: " + a.out);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) fail(ErrorKind::Usage, "failed writing output file: " + a.out);
  Json doc;
  doc["n"] = static_cast<int>(xs.size());
  doc["out"] = a.out;
  emit_json(doc, g);
}

// --------------------------------------------------------------- hyptest

struct HyptestArgs {
  std::string model;
  std::string n_list = "2,4,6,8";
  double epsilon = 0.25;
  double delta = 0.05;
  std::string mode = "exact";
  std::int64_t samples = 20000;
};

void run_hyptest(const HyptestArgs& a, const GlobalOpts& g) {
  if (a.mode != "exact" && a.mode != "mc")
    fail(ErrorKind::Usage, "--mode must be 'exact' or 'mc'");
  JointProcessModel M = load_model_json(a.model);
  const std::vector<int> ns = parse_n_list(a.n_list);
  ExponentReport er = exponent_estimates(M, ns, a.epsilon);

  std::vector<std::vector<std::string>> rows;
  Json per_n = Json::array();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    HypothesisPair hp = make_hypothesis_pair(M, ns[i]);
    AepReport ar =
        a.mode == "exact"
            ? aep_error_probs(hp, a.delta)
            : aep_error_probs_mc(hp, a.delta, a.samples,
                                 derive_seed(g.seed,
                                             static_cast<std::uint64_t>(i)));
    rows.push_back({std::to_string(ns[i]), format_g(ar.alpha),
                    format_g(ar.beta), format_g(er.betas[i]),
                    format_g(er.beta_exponent), format_g(er.target_di_rate),
                    format_g(er.alpha_exponent), format_g(er.target_l2_rate)});
    Json e;
    e["n"] = ns[i];
    e["aep_alpha"] = ar.alpha;
    e["aep_beta"] = ar.beta;
    e["aep_rate"] = ar.rate;
    e["beta_bound"] = ar.beta_bound;
    e["bound_ok"] = ar.bound_ok;
    e["np_beta"] = er.betas[i];
    e["np_alpha"] = er.alphas[i];
    per_n.push_back(e);
  }

  Json doc;
  doc["model"] = a.model;
  doc["epsilon"] = a.epsilon;
  doc["delta"] = a.delta;
  doc["mode"] = a.mode;
  doc["beta_exponent"] = er.beta_exponent;
  doc["alpha_exponent"] = er.alpha_exponent;
  doc["target_di_rate"] = er.target_di_rate;
  doc["target_l2_rate"] = er.target_l2_rate;
  doc["points"] = per_n;
  write_csv(g,
            {"n", "alpha", "beta", "beta_np", "exponent_beta", "target_di_rate",
             "exponent_alpha", "target_l2_rate"},
            rows);
  emit_json(doc, g);
}

// -------------------------------------------------------------- example1

struct Example1Args {
  double p = -1;
  double q = -1;
  std::string out;
};

void run_example1(const Example1Args& a, const GlobalOpts& g) {
  if (a.p < 0 || a.p > 1) fail(ErrorKind::Usage, "--p must lie in [0, 1]");
  if (a.q < 0 || a.q > 1) fail(ErrorKind::Usage, "--q must lie in [0, 1]");
  JointProcessModel M = make_example1_model(a.p, a.q);
  Json doc;
  doc["p"] = a.p;
  doc["q"] = a.q;
  doc["per_race_increment_target"] =
      binary_entropy(convolve_bernoulli(a.p, a.q)) - binary_entropy(a.q);
  if (!a.out.empty()) {
    save_model_json(M, a.out);
    doc["out"] = a.out;
  }
  emit_json(doc, g);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  GlobalOpts g;
  for (int i = 0; i < argc; ++i) {
    if (i) g.config += ' ';
    g.config += argv[i];
  }

  CLI::App app{"directed information toolkit for finite-alphabet process "
               "pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.add_option("--seed", g.seed, "random seed for Monte Carlo modes");
  app.add_option("--tol", g.tol, "tolerance override (rate extraction)");
  app.add_option("--csv", g.csv, "write a sweep table to this CSV file");
  app.add_option("--json", g.json, "write the JSON report to this file");
  app.add_flag("--quiet", g.quiet, "suppress stdout");

  InfoArgs ia;
  CLI::App* info = app.add_subcommand(
      "info", "information measures of a model at a horizon");
  info->fallthrough();
  info->add_option("--model", ia.model, "model JSON file")->required();
  info->add_option("--n", ia.n, "horizon")->required();
  info->add_option("--quantity", ia.quantity,
                   "all|directed|reverse|mutual|lautum|lautum1|lautum2|...");
  info->add_option("--delay", ia.delay, "side-information delay (0 or 1)");

  GambleArgs ga;
  CLI::App* gamble = app.add_subcommand(
      "gamble", "causal side-information gambling growth");
  gamble->fallthrough();
  gamble->add_option("--model", ga.model, "model JSON file")->required();
  gamble->add_option("--n", ga.n, "number of races")->required();
  gamble->add_option("--odds", ga.odds, "'fair' or an odds JSON file");
  gamble->add_option("--mode", ga.mode, "exact|mc");
  gamble->add_option("--replicas", ga.replicas, "races in mc mode");
  gamble->add_option("--lookahead", ga.lookahead,
                     "also report lookahead gains for k = 0..K");

  PortfolioArgs pa;
  CLI::App* portfolio = app.add_subcommand(
      "portfolio", "log-optimal portfolio growth gap vs directed information");
  portfolio->fallthrough();
  portfolio->add_option("--market", pa.market, "market JSON file")->required();
  portfolio->add_option("--n", pa.n, "horizon")->required();

  CompressArgs ca;
  CLI::App* compress = app.add_subcommand(
      "compress", "causal side-information compression");
  compress->fallthrough();
  compress->add_option("--model", ca.model, "model JSON file")->required();
  compress->add_option("--n", ca.n, "horizon for --report");
  compress->add_flag("--report", ca.report, "expected-length sweep report");
  compress->add_option("--encode", ca.encode, "XFILE YFILE")->expected(2);
  compress->add_option("--decode", ca.decode, "BITS YFILE")->expected(2);
  compress->add_option("--out", ca.out, "output file (bitstream or symbols)");

  HyptestArgs ha;
  CLI::App* hyptest = app.add_subcommand(
      "hyptest", "causal-dependence hypothesis testing");
  hyptest->fallthrough();
  hyptest->add_option("--model", ha.model, "model JSON file")->required();
  hyptest->add_option("--n-list", ha.n_list, "comma-separated horizons");
  hyptest->add_option("--epsilon", ha.epsilon, "NP constraint level");
  hyptest->add_option("--delta", ha.delta, "typical-set half width");
  hyptest->add_option("--mode", ha.mode, "exact|mc");
  hyptest->add_option("--samples", ha.samples, "samples per hypothesis (mc)");

  Example1Args ea;
  CLI::App* example1 = app.add_subcommand(
      "example1", "emit the two-state noisy horse-race model");
  example1->fallthrough();
  example1->add_option("--p", ea.p, "state persistence probability")
      ->required();
  example1->add_option("--q", ea.q, "observation flip probability")->required();
  example1->add_option("--out", ea.out, "write the model JSON here");

  try {
    app.parse(argc, argv);
    if (info->parsed()) run_info(ia, g);
    if (gamble->parsed()) run_gamble(ga, g);
    if (portfolio->parsed()) run_portfolio(pa, g);
    if (compress->parsed()) run_compress(ca, g);
    if (hyptest->parsed()) run_hyptest(ha, g);
    if (example1->parsed()) run_example1(ea, g);
    return 0;
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = "usage";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    Json err;
    err["error"] = to_string(e.kind());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2 + static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
}

}  // namespace di
