#include "lmoment/cli.hpp"

#include "lmoment/analytic.hpp"
#include "lmoment/arith.hpp"
#include "lmoment/characters.hpp"
#include "lmoment/moments.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/predict.hpp"
#include "lmoment/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <variant>

namespace lmoment::cli {
namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_quote(v); }
    std::string operator()(double v) const {
      if (std::isnan(v)) return "nan";
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.15g", v);
      return buf;
    }
  };
  return std::visit(Visitor{}, c);
}

json json_cell(const Cell& c) {
  struct Visitor {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(std::int64_t v) const { return v; }
    json operator()(std::uint64_t v) const { return v; }
    json operator()(bool v) const { return v; }
    json operator()(const std::string& v) const { return v; }
    json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
  };
  return std::visit(Visitor{}, c);
}

Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

struct Output {
  std::string command;
  json config = json::object();
  Table table;
  bool all_pass = true;
};

void render(const Output& o, const std::string& format, std::optional<double> timing_ms,
            std::ostream& out) {
  if (format == "json") {
    json doc;
    doc["command"] = o.command;
    doc["config"] = o.config;
    json rows = json::array();
    for (const auto& row : o.table.rows) {
      json obj = json::object();
      for (std::size_t j = 0; j < o.table.columns.size(); ++j) {
        obj[o.table.columns[j]] = json_cell(row[j]);
      }
      rows.push_back(std::move(obj));
    }
    doc["results"] = std::move(rows);
    doc["timing_ms"] = timing_ms ? json(*timing_ms) : json(nullptr);
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t j = 0; j < o.table.columns.size(); ++j) {
    out << (j ? "," : "") << o.table.columns[j];
  }
  out << '\n';
  for (const auto& row : o.table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_cell(row[j]);
    out << '\n';
  }
}

// ------------------------------------------------------------ subcommands

struct PredictArgs {
  std::uint64_t q = 0;
  double T = 0.0;
};

Output do_predict(const PredictArgs& a) {
  Output o;
  o.command = "predict";
  o.config = {{"q", a.q}, {"T", a.T}};
  const auto p = predict::prediction_table(a.q, a.T);
  o.table.columns = {"q",         "T",       "theorem1",         "eq7",
                     "rane",      "motohashi", "second_moment",  "montgomery_scale",
                     "nonprim_ratio", "in_hypothesis"};
  o.table.rows.push_back({p.q, p.T, p.theorem1, p.eq7, predict::rane_main(a.q, a.T), p.motohashi,
                          predict::second_moment_main(a.q, a.T), p.montgomery_scale,
                          p.nonprim_ratio, p.in_hypothesis});
  return o;
}

struct MomentArgs {
  std::uint64_t q = 0;
  double T = 0.0;
  int order = 4;
  double panel = 0.25;
  int points = 8;
  double eps = 1e-6;
  std::optional<int> parity;
  std::string breakdown = "none";
};

moments::MomentSpec spec_of(const MomentArgs& a) {
  moments::MomentSpec s;
  s.q = a.q;
  s.T = a.T;
  s.order = a.order;
  s.panel_width = a.panel;
  s.points_per_panel = a.points;
  s.eps_series = a.eps;
  s.parity_filter = a.parity;
  return s;
}

json spec_config(const moments::MomentSpec& s) {
  json c = {{"q", s.q},
            {"T", s.T},
            {"order", s.order},
            {"panel", s.panel_width},
            {"points", s.points_per_panel},
            {"eps", s.eps_series}};
  c["parity"] = s.parity_filter ? json(*s.parity_filter) : json(nullptr);
  return c;
}

const std::vector<std::string> kMomentColumns = {
    "q", "T", "order", "empirical", "predicted", "ratio", "quad_error", "char_count"};

std::vector<Cell> moment_row(const moments::MomentResult& r) {
  return {r.spec.q,   r.spec.T,          static_cast<std::int64_t>(r.spec.order),
          r.empirical, r.predicted,      r.ratio,
          r.quadrature_error, r.char_count};
}

Output do_moment(const MomentArgs& a, unsigned workers) {
  const auto spec = spec_of(a);
  Output o;
  o.command = "moment";
  o.config = spec_config(spec);
  o.config["breakdown"] = a.breakdown;
  const auto r = moments::moment(spec, workers);
  if (a.breakdown == "character") {
    o.table.columns = {"q", "T", "order", "character", "parity", "value", "quad_error"};
    for (const auto& c : r.per_character) {
      o.table.rows.push_back({spec.q, spec.T, static_cast<std::int64_t>(spec.order), c.id,
                              static_cast<std::int64_t>(c.parity), c.value, c.quad_error});
    }
  } else if (a.breakdown == "panel") {
    o.table.columns = {"q", "T", "order", "character", "panel", "t0", "t1", "value"};
    for (const auto& c : r.per_character) {
      for (std::size_t i = 0; i < c.panels.size(); ++i) {
        const double t0 = r.panel_width * static_cast<double>(i);
        o.table.rows.push_back({spec.q, spec.T, static_cast<std::int64_t>(spec.order), c.id,
                                static_cast<std::uint64_t>(i), t0, t0 + r.panel_width,
                                c.panels[i]});
      }
    }
  } else {
    o.table.columns = kMomentColumns;
    o.table.rows.push_back(moment_row(r));
  }
  return o;
}

Output do_decompose(const MomentArgs& a, unsigned workers) {
  auto spec = spec_of(a);
  spec.order = 4;
  spec.parity_filter.reset();
  Output o;
  o.command = "decompose";
  o.config = spec_config(spec);
  o.config.erase("order");
  o.config.erase("parity");
  const auto d = moments::decomposed_fourth_moment(spec, workers);
  const auto m = moments::moment(spec, workers);
  const double eq7 = a.T > 0.0 ? predict::eq7_main(a.q, a.T) : 0.0;
  const double rel = m.empirical > 0.0 ? std::abs(d.total - m.empirical) / m.empirical : 0.0;
  o.table.columns = {"q",  "T",     "Z",      "A2",       "AB",          "B2",
                     "total", "moment", "rel_diff", "eq7", "A2_over_eq7", "quad_error"};
  o.table.rows.push_back({a.q, a.T, d.Z, d.A2, d.AB, d.B2, d.total, m.empirical, rel, eq7,
                          eq7 > 0.0 ? d.A2 / eq7 : std::nan(""),
                          d.quad_error + m.quadrature_error});
  return o;
}

struct LValueArgs {
  std::uint64_t q = 0;
  std::string chi;
  double t = 0.0;
  std::string method = "oracle";
  double eps = 1e-8;
};

Output do_lvalue(const LValueArgs& a) {
  Output o;
  o.command = "lvalue";
  o.config = {{"q", a.q}, {"t", a.t}, {"method", a.method}, {"eps", a.eps}};
  o.config["chi"] = a.chi.empty() ? json(nullptr) : json(a.chi);
  const auto group = characters::build_group(a.q);
  std::vector<characters::DirichletCharacter> chars;
  if (a.chi.empty()) {
    chars = characters::enumerate_characters(group, true);
  } else {
    chars.push_back(characters::parse_character(a.chi, group));
  }
  o.table.columns = {"character", "t", "method", "re", "im", "abs_sq", "error_estimate"};
  for (const auto& chi : chars) {
    if (a.method == "oracle") {
      const auto r = analytic::l_oracle(Complex{0.5, a.t}, chi);
      o.table.rows.push_back({chi.id(), a.t, a.method, r.value.real(), r.value.imag(),
                              std::norm(r.value), r.error_estimate});
    } else {
      const double v = analytic::abs_L_sq_smoothed(a.t, chi, a.eps);
      const double finer = analytic::abs_L_sq_smoothed(a.t, chi, std::max(a.eps / 4.0, 1e-9));
      o.table.rows.push_back({chi.id(), a.t, a.method, std::monostate{}, std::monostate{}, v,
                              std::abs(v - finer)});
    }
  }
  return o;
}

struct WeightArgs {
  double x = 0.0;
  double t = 0.0;
  int parity = 0;
  bool shifted = false;
};

Output do_weight(const WeightArgs& a) {
  Output o;
  o.command = "weight";
  o.config = {{"x", a.x}, {"t", a.t}, {"parity", a.parity}, {"shifted", a.shifted}};
  const auto e = a.shifted ? analytic::weight_W_shifted(a.x, a.t, a.parity)
                           : analytic::weight_W(a.x, a.t, a.parity);
  o.table.columns = {"x", "t", "parity", "tau", "value", "quad_error", "line"};
  o.table.rows.push_back({e.x, e.t, static_cast<std::int64_t>(e.parity_a), e.tau, e.value,
                          e.quad_error, e.line});
  return o;
}

struct VerifyArgs {
  std::string which;
  std::uint64_t q_max = 100;
  std::uint64_t pairs = 200;
  std::uint64_t z_max = 1000;
  std::optional<std::uint64_t> k;
  double Z1 = 4.0;
  double Z2 = 4.0;
  std::optional<std::uint64_t> q;
  std::optional<double> x;
  std::vector<std::uint64_t> moduli;
};

Output do_verify(const VerifyArgs& a, std::uint64_t seed) {
  Output o;
  o.command = "verify";
  o.config = {{"which", a.which}, {"seed", seed}};
  std::vector<verify::LemmaReport> reports;
  auto append = [&](std::vector<verify::LemmaReport> v) {
    reports.insert(reports.end(), std::make_move_iterator(v.begin()),
                   std::make_move_iterator(v.end()));
  };
  const bool all = a.which == "all";
  if (all || a.which == "lemma3") {
    o.config["q_max"] = a.q_max;
    o.config["pairs"] = a.pairs;
    append(verify::lemma3_sweep(a.q_max, a.pairs, seed));
  }
  if (all || a.which == "lemma4") {
    if (a.k && !all) {
      o.config["k"] = *a.k;
      o.config["Z1"] = a.Z1;
      o.config["Z2"] = a.Z2;
      reports.push_back(verify::lemma4_E(*a.k, a.Z1, a.Z2));
    } else {
      append(verify::lemma4_grid());
    }
  }
  if (all || a.which == "lemma5") {
    if (a.q && a.x && !all) {
      o.config["q"] = *a.q;
      o.config["x"] = *a.x;
      reports.push_back(verify::lemma5_sum(*a.x, *a.q));
    } else {
      append(verify::lemma5_grid());
    }
  }
  if (all || a.which == "lemma6") {
    const auto moduli = a.moduli.empty() ? verify::lemma6_moduli() : a.moduli;
    o.config["moduli"] = moduli;
    for (auto q : moduli) {
      for (double x : {1e2, 1e4, 1e6}) reports.push_back(verify::lemma6_sums(x, q));
      reports.push_back(verify::lemma6_trend(q));
    }
  }
  if (all || a.which == "bijection") {
    o.config["z_max"] = a.z_max;
    append(verify::diagonal_bijection_sweep(a.z_max));
  }
  o.table.columns = {"lemma", "params", "lhs", "rhs", "residual", "implied_constant", "pass"};
  for (const auto& r : reports) {
    o.table.rows.push_back(
        {r.lemma, r.params, r.lhs, r.rhs, r.residual, opt_cell(r.implied_constant), r.pass});
    o.all_pass = o.all_pass && r.pass;
  }
  return o;
}

struct SweepArgs {
  std::vector<std::uint64_t> qs = {3, 4, 5, 7, 8, 9, 11, 13};
  std::vector<double> Ts = {10.0, 40.0, 160.0};
  MomentArgs base;
};

Output do_sweep(const SweepArgs& a, unsigned workers) {
  Output o;
  o.command = "sweep";
  auto spec = spec_of(a.base);
  o.config = spec_config(spec);
  o.config.erase("q");
  o.config.erase("T");
  o.config["qs"] = a.qs;
  o.config["Ts"] = a.Ts;
  o.table.columns = kMomentColumns;
  for (auto q : a.qs) {
    for (double T : a.Ts) {
      spec.q = q;
      spec.T = T;
      o.table.rows.push_back(moment_row(moments::moment(spec, workers)));
    }
  }
  return o;
}

void add_moment_flags(CLI::App* sub, MomentArgs& m, bool with_order) {
  if (with_order) {
    sub->add_option("--order", m.order, "Moment order")->check(CLI::IsMember({2, 4}));
    sub->add_option("--parity", m.parity, "Restrict to characters of this parity")
        ->check(CLI::IsMember({0, 1}));
  }
  sub->add_option("--panel", m.panel, "Gauss-Legendre panel width")->check(CLI::Range(1e-3, 1.0));
  sub->add_option("--points", m.points, "Nodes per panel")->check(CLI::Range(4, 64));
  sub->add_option("--eps", m.eps, "Series truncation tolerance")->check(CLI::Range(1e-9, 1.0));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on the fourth moment of Dirichlet L-functions", "lmoment"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string output_path;
  std::optional<unsigned> workers_flag;
  std::uint64_t seed = 0;
  bool timing = false;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", output_path, "Write output to this file");
  app.add_option("--workers", workers_flag, "Worker threads (overrides LMOMENT_WORKERS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for sampled verifications")->capture_default_str();
  app.add_flag("--timing", timing, "Record wall time in JSON output");

  PredictArgs pa;
  auto* predict_cmd = app.add_subcommand("predict", "Closed-form main terms");
  predict_cmd->add_option("--q", pa.q, "Modulus")->required()->check(CLI::PositiveNumber);
  predict_cmd->add_option("--T", pa.T, "Height")->required()->check(CLI::PositiveNumber);

  MomentArgs ma;
  auto* moment_cmd = app.add_subcommand("moment", "Moment over primitive characters mod q");
  moment_cmd->add_option("--q", ma.q, "Modulus")->required()->check(CLI::PositiveNumber);
  moment_cmd->add_option("--T", ma.T, "Height")->required()->check(CLI::NonNegativeNumber);
  add_moment_flags(moment_cmd, ma, true);
  moment_cmd->add_option("--breakdown", ma.breakdown, "Row granularity")
      ->check(CLI::IsMember({"none", "character", "panel"}));

  MomentArgs da;
  auto* decompose_cmd = app.add_subcommand("decompose", "A/B split of the fourth moment");
  decompose_cmd->add_option("--q", da.q, "Modulus")->required()->check(CLI::PositiveNumber);
  decompose_cmd->add_option("--T", da.T, "Height")->required()->check(CLI::NonNegativeNumber);
  add_moment_flags(decompose_cmd, da, false);

  LValueArgs la;
  auto* lvalue_cmd = app.add_subcommand("lvalue", "L(1/2 + it, chi)");
  lvalue_cmd->add_option("--q", la.q, "Modulus")->required()->check(CLI::PositiveNumber);
  lvalue_cmd->add_option("--chi", la.chi, "Character id q:e1,e2,... (default: all primitive)");
  lvalue_cmd->add_option("--t", la.t, "Height")->required();
  lvalue_cmd->add_option("--method", la.method, "Evaluation method")
      ->check(CLI::IsMember({"oracle", "smoothed"}));
  lvalue_cmd->add_option("--eps", la.eps, "Series tolerance for smoothed")
      ->check(CLI::Range(1e-9, 1.0));

  WeightArgs wa;
  auto* weight_cmd = app.add_subcommand("weight", "The weight W_a(x; t)");
  weight_cmd->add_option("--x", wa.x, "Argument")->required()->check(CLI::PositiveNumber);
  weight_cmd->add_option("--t", wa.t, "Height")->required();
  weight_cmd->add_option("--parity", wa.parity, "Parity a")->check(CLI::IsMember({0, 1}));
  weight_cmd->add_flag("--shifted", wa.shifted, "Integrate on Re z = -1/4 without the residue");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Lemma checks");
  verify_cmd->add_option("which", va.which, "lemma3|lemma4|lemma5|lemma6|bijection|all")
      ->required()
      ->check(CLI::IsMember({"lemma3", "lemma4", "lemma5", "lemma6", "bijection", "all"}));
  verify_cmd->add_option("--q-max", va.q_max, "Largest modulus for lemma3")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--pairs", va.pairs, "Random (m, n) pairs per modulus");
  verify_cmd->add_option("--z-max", va.z_max, "Largest Z for the bijection sweep")
      ->check(CLI::Range(1, 10000));
  verify_cmd->add_option("--k", va.k, "Modulus k for a single lemma4 report")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--Z1", va.Z1, "Z1 for lemma4");
  verify_cmd->add_option("--Z2", va.Z2, "Z2 for lemma4");
  verify_cmd->add_option("--q", va.q, "Modulus for a single lemma5 report");
  verify_cmd->add_option("--x", va.x, "x for a single lemma5 report");
  verify_cmd->add_option("--moduli", va.moduli, "Moduli for lemma6")->delimiter(',');

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Moments over a (q, T) grid");
  sweep_cmd->add_option("--q", sa.qs, "Moduli")->delimiter(',');
  sweep_cmd->add_option("--T", sa.Ts, "Heights")->delimiter(',');
  add_moment_flags(sweep_cmd, sa.base, true);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("lmoment");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const unsigned workers = workers_flag.value_or(default_worker_count());
  const auto started = std::chrono::steady_clock::now();
  Output result;
  try {
    if (predict_cmd->parsed()) {
      result = do_predict(pa);
    } else if (moment_cmd->parsed()) {
      result = do_moment(ma, workers);
    } else if (decompose_cmd->parsed()) {
      result = do_decompose(da, workers);
    } else if (lvalue_cmd->parsed()) {
      result = do_lvalue(la);
    } else if (weight_cmd->parsed()) {
      result = do_weight(wa);
    } else if (verify_cmd->parsed()) {
      result = do_verify(va, seed);
    } else {
      result = do_sweep(sa, workers);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  result.config["format"] = format;
  std::optional<double> timing_ms;
  if (timing) {
    timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                    .count();
  }

  if (output_path.empty()) {
    render(result, format, timing_ms, out);
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << output_path << '\n';
      return kExitUsage;
    }
    render(result, format, timing_ms, file);
  }
  return result.all_pass ? kExitOk : kExitVerifyFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lmoment::cli
