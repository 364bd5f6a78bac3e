// Acceptance harness: `acceptance N` runs criterion N, `acceptance` runs all.
// Each criterion prints one line ending in PASS or FAIL.

#include "lmoment/analytic.hpp"
#include "lmoment/arith.hpp"
#include "lmoment/characters.hpp"
#include "lmoment/cli.hpp"
#include "lmoment/moments.hpp"
#include "lmoment/predict.hpp"
#include "lmoment/random.hpp"
#include "lmoment/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace lmoment;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> log_grid(double lo_exp, double hi_exp, int n) {
  std::vector<double> out;
  for (int i = 0; i <= n; ++i) out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / n));
  return out;
}

const std::vector<std::uint64_t> kGridQ = {3, 4, 5, 7, 8, 9, 11, 13};
const std::vector<double> kGridT = {10.0, 40.0, 160.0};
constexpr unsigned kGridWorkers = 8;

// ------------------------------------------------------------------ 1

Outcome orthogonality() {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = verify::lemma3_sweep(100, 200, 20240611);
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  bool all = true;
  for (const auto& r : reports) {
    worst = std::max(worst, r.residual);
    all = all && r.pass && r.residual < 1e-8;
  }
  return {all && reports.size() == 100u * 200u && elapsed < 60.0,
          fmt("%zu checks, worst residual %.3g, %.1f s", reports.size(), worst, elapsed)};
}

// ------------------------------------------------------------------ 2

Outcome series_vs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  SeededRng rng(2);
  double worst = 0.0;
  bool all = true;
  int done = 0;
  while (done < 20) {
    const std::uint64_t q = rng.uniform_int(3, 50);
    const auto chars = characters::enumerate_characters(characters::build_group(q), true);
    if (chars.empty()) continue;
    const auto& chi = chars[rng.uniform_int(0, chars.size() - 1)];
    const double t = rng.uniform_real(0.0, 20.0);
    const double series = analytic::abs_L_sq_smoothed(t, chi, 1e-9);
    const double oracle = std::norm(analytic::l_oracle({0.5, t}, chi).value);
    const double diff = std::abs(series - oracle);
    const bool ok = oracle < 1e-3 ? diff < 1e-7 : diff < 1e-5 * oracle;
    worst = std::max(worst, oracle < 1e-3 ? diff : diff / oracle);
    all = all && ok;
    ++done;
  }
  const double elapsed = seconds_since(start);
  return {all && elapsed < 300.0, fmt("20 triples, worst error %.3g, %.1f s", worst, elapsed)};
}

// ------------------------------------------------------------------ 3, 4

Outcome residue_identity() {
  double worst = 0.0;
  int points = 0;
  for (double t : {0.0, 1.0, 10.0, 100.0})
    for (int a : {0, 1})
      for (double x : log_grid(-3, 3, 60)) {
        const double d = analytic::weight_W(x, t, a).value - 1.0 -
                         analytic::weight_W_shifted(x, t, a).value;
        worst = std::max(worst, std::abs(d));
        ++points;
      }
  return {worst < 1e-9, fmt("%d points, worst %.3g", points, worst)};
}

Outcome envelopes() {
  double c_decay = 0, c_approach = 0, c_dt_decay = 0, c_dt_approach = 0;
  for (double t : {0.0, 1.0, 10.0, 100.0}) {
    const double tau = std::abs(t) + 2.0;
    for (int a : {0, 1})
      for (double x : log_grid(-3, 3, 60)) {
        const double w = analytic::weight_W(x, t, a).value;
        const double d = analytic::weight_dt(x, t, a).value;
        if (x >= tau) {
          c_decay = std::max(c_decay, std::abs(w) / std::pow(tau / x, 2));
          c_dt_decay = std::max(c_dt_decay, std::abs(d) * tau / std::pow(tau / x, 2));
        } else {
          c_approach = std::max(c_approach, std::abs(w - 1.0) / std::pow(x / tau, 0.25));
          c_dt_approach = std::max(c_dt_approach, std::abs(d) * tau / std::pow(x / tau, 0.25));
        }
      }
  }
  const double worst = std::max({c_decay, c_approach, c_dt_decay, c_dt_approach});
  return {worst <= 10.0, fmt("C: decay %.3g, approach %.3g, dt decay %.3g, dt approach %.3g",
                             c_decay, c_approach, c_dt_decay, c_dt_approach)};
}

// ------------------------------------------------------------------ 5

Outcome functional_equation() {
  SeededRng rng(5);
  std::vector<Complex> points;
  for (int i = 0; i < 5; ++i) {
    points.emplace_back(rng.uniform_real(-0.4, 0.4), rng.uniform_real(-5.0, 5.0));
  }
  double worst = 0.0;
  int checks = 0;
  for (std::uint64_t q = 3; q <= 30; ++q) {
    for (const auto& chi : characters::enumerate_characters(characters::build_group(q), true)) {
      for (const auto& s : points) {
        worst = std::max(worst, analytic::functional_equation_residual(s, chi));
        ++checks;
      }
    }
  }
  return {worst < 1e-8, fmt("%d checks, worst residual %.3g", checks, worst)};
}

// ------------------------------------------------------------------ 6

Outcome decomposition() {
  moments::MomentSpec spec;
  spec.q = 5;
  spec.T = 10.0;
  spec.order = 4;
  const auto d = moments::decomposed_fourth_moment(spec, kGridWorkers);
  const auto m = moments::moment(spec, kGridWorkers);
  const double rel = std::abs(d.total - m.empirical) / m.empirical;
  const bool cauchy = d.AB * d.AB <= d.A2 * d.B2 * (1.0 + 1e-9);
  return {rel < 1e-5 && cauchy,
          fmt("total %.10g vs moment %.10g (rel %.3g), AB^2/(A2 B2) = %.6g", d.total,
              m.empirical, rel, d.AB * d.AB / (d.A2 * d.B2))};
}

// ------------------------------------------------------------------ 7, 8

std::map<std::pair<std::uint64_t, double>, double> read_golden(const std::string& path) {
  std::map<std::pair<std::uint64_t, double>, double> out;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string q, T, order, empirical;
    std::getline(ss, q, ',');
    std::getline(ss, T, ',');
    std::getline(ss, order, ',');
    std::getline(ss, empirical, ',');
    out[{std::stoull(q), std::stod(T)}] = std::stod(empirical);
  }
  return out;
}

Outcome grid_trend(int order, double lo, double hi) {
  const auto start = std::chrono::steady_clock::now();
  const auto golden =
      read_golden(std::string(LMOMENT_TEST_DATA) + "/sweep_order" + std::to_string(order) + ".csv");
  struct Cell {
    double qT;
    std::uint64_t q;
    double ratio;
  };
  std::vector<Cell> cells;
  bool in_band = true, matches_golden = golden.size() == kGridQ.size() * kGridT.size();
  double worst_golden = 0.0;
  for (auto q : kGridQ) {
    for (double T : kGridT) {
      moments::MomentSpec spec;
      spec.q = q;
      spec.T = T;
      spec.order = order;
      const auto r = moments::moment(spec, kGridWorkers);
      const double ratio = r.empirical / (order == 4 ? predict::theorem1_main(q, T)
                                                     : predict::second_moment_main(q, T));
      in_band = in_band && ratio > lo && ratio < hi;
      cells.push_back({static_cast<double>(q) * T, q, ratio});
      const auto it = golden.find({q, T});
      if (it == golden.end()) {
        matches_golden = false;
      } else {
        const double rel = std::abs(r.empirical - it->second) / it->second;
        worst_golden = std::max(worst_golden, rel);
        matches_golden = matches_golden && rel < 1e-9;
      }
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.qT != b.qT ? a.qT < b.qT : a.q < b.q; });
  const std::size_t third = cells.size() / 3;
  double small = 0.0, large = 0.0, min_ratio = 1e300, max_ratio = 0.0;
  for (std::size_t i = 0; i < third; ++i) {
    small += std::abs(std::log(cells[i].ratio)) / third;
    large += std::abs(std::log(cells[cells.size() - 1 - i].ratio)) / third;
  }
  for (const auto& c : cells) {
    min_ratio = std::min(min_ratio, c.ratio);
    max_ratio = std::max(max_ratio, c.ratio);
  }
  const double elapsed = seconds_since(start);
  return {in_band && large < small && matches_golden && elapsed < 1800.0,
          fmt("ratios in [%.4g, %.4g], mean |log ratio| small-qT %.4g large-qT %.4g, "
              "golden rel %.3g, %.1f s",
              min_ratio, max_ratio, small, large, worst_golden, elapsed)};
}

// ------------------------------------------------------------------ 9

Outcome combinatorics() {
  bool bij = true;
  for (const auto& r : verify::diagonal_bijection_sweep(1000)) bij = bij && r.pass && r.lhs == r.rhs;
  double c5 = 0.0, c6 = 0.0;
  bool l5 = true, l6 = true;
  for (const auto& r : verify::lemma5_grid()) {
    l5 = l5 && r.pass;
    if (r.implied_constant) c5 = std::max(c5, *r.implied_constant);
  }
  for (auto q : verify::lemma6_moduli()) {
    for (double x : {1e2, 1e4, 1e6}) {
      const auto r = verify::lemma6_sums(x, q);
      l6 = l6 && r.pass;
      if (r.implied_constant) c6 = std::max(c6, *r.implied_constant);
    }
    l6 = l6 && verify::lemma6_trend(q).pass;
  }
  return {bij && l5 && l6,
          fmt("bijection Z<=1000 %s, lemma5 max C %.3g, lemma6 max C %.3g", bij ? "exact" : "MISMATCH",
              c5, c6)};
}

// ------------------------------------------------------------------ 10

Outcome determinism() {
  auto sweep = [](const char* workers) {
    std::ostringstream out, err;
    const int code = cli::run({"sweep", "--order", "4", "--seed", "7", "--workers", workers}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto one = sweep("1");
  const auto eight = sweep("8");
  const bool same = one.first == 0 && eight.first == 0 && one.second == eight.second;
  return {same, fmt("%zu bytes, %s", one.second.size(), same ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"orthogonality exactness", orthogonality},
      {"smoothed series vs oracle", series_vs_oracle},
      {"residue identity", residue_identity},
      {"weight envelopes", envelopes},
      {"functional equation", functional_equation},
      {"decomposition identity", decomposition},
      {"fourth moment trend", [] { return grid_trend(4, 0.1, 10.0); }},
      {"second moment trend", [] { return grid_trend(2, 0.2, 5.0); }},
      {"combinatorial exactness", combinatorics},
      {"determinism", determinism},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    for (int i = 1; i <= 10; ++i) which.push_back(i);
  }
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    Outcome o;
    try {
      o = criteria[n - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s (%s)\n", n, criteria[n - 1].first.c_str(),
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
