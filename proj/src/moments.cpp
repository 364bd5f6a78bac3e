#include "lmoment/moments.hpp"

#include "lmoment/analytic.hpp"
#include "lmoment/arith.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/predict.hpp"
#include "lmoment/summation.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lmoment::moments {
namespace {

using characters::DirichletCharacter;

constexpr std::size_t kCheckStride = 10;
constexpr double kRoundingFloor = 256.0 * std::numeric_limits<double>::epsilon();

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

Rule gauss_legendre(int n) {
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  Rule r;
  for (double x : zeros) {
    const double d = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * d * d);
    r.nodes.push_back(x);
    r.weights.push_back(w);
    if (x != 0.0) {
      r.nodes.push_back(-x);
      r.weights.push_back(w);
    }
  }
  return r;
}

struct Panels {
  double t0 = 0.0;
  double width = 0.0;
  std::size_t count = 0;
  std::size_t checked = 0;

  Panels(double a, double b, double panel_width) : t0(a) {
    const double len = b - a;
    if (len <= 0.0) return;
    count = static_cast<std::size_t>(std::ceil(len / panel_width - 1e-9));
    if (count == 0) count = 1;
    width = len / static_cast<double>(count);
    checked = (count + kCheckStride - 1) / kCheckStride;
  }
  bool is_checked(std::size_t i) const { return i % kCheckStride == 0; }
  double start(std::size_t i) const { return t0 + width * static_cast<double>(i); }
  double error_scale() const {
    return checked == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(checked);
  }
};

// Applies the rule on [a, a + h] to f; f returns the integrand at t.
template <class F>
double apply_rule(const Rule& rule, double a, double h, F&& f) {
  CompensatedSum sum;
  const double mid = a + 0.5 * h;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
  }
  return 0.5 * h * sum.value();
}

double abs_l_power(double t, const std::vector<Complex>& table, int order) {
  const Complex s{0.5, t};
  const double sq = std::norm(analytic::l_value(s, table, analytic::default_em_shift(s)));
  return order == 2 ? sq : sq * sq;
}

struct PanelValue {
  double value = 0.0;
  double diff = 0.0;  // |halved - single| on checked panels
};

template <class F>
PanelValue panel_value(const Rule& rule, const Panels& p, std::size_t i, F&& f) {
  PanelValue r;
  const double a = p.start(i);
  r.value = apply_rule(rule, a, p.width, f);
  if (p.is_checked(i)) {
    const double half = 0.5 * p.width;
    const double fine = apply_rule(rule, a, half, f) + apply_rule(rule, a + half, half, f);
    r.diff = std::abs(fine - r.value);
  }
  return r;
}

Integral reduce(const std::vector<PanelValue>& v, std::size_t from, std::size_t count,
                const Panels& p) {
  CompensatedSum value;
  CompensatedSum diff;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    value += v[from + i].value;
    diff += v[from + i].diff;
    magnitude += std::abs(v[from + i].value);
  }
  return {value.value(), p.error_scale() * diff.value() + kRoundingFloor * magnitude};
}

std::vector<DirichletCharacter> selected_characters(const MomentSpec& spec) {
  const auto group = characters::build_group(spec.q);
  std::vector<DirichletCharacter> out;
  for (auto& chi : characters::enumerate_characters(group, true)) {
    if (spec.parity_filter && chi.parity() != *spec.parity_filter) continue;
    out.push_back(std::move(chi));
  }
  return out;
}

void require_primitive(const DirichletCharacter& chi) {
  if (!chi.primitive()) throw std::invalid_argument("moment: character must be primitive");
}

}  // namespace

void validate(const MomentSpec& spec) {
  if (spec.q == 0) throw std::invalid_argument("moment: q must be positive");
  if (!(spec.T >= 0.0) || !std::isfinite(spec.T)) {
    throw std::invalid_argument("moment: T must be nonnegative");
  }
  if (spec.order != 2 && spec.order != 4) {
    throw std::invalid_argument("moment: order must be 2 or 4");
  }
  if (!(spec.panel_width > 0.0 && spec.panel_width <= 1.0)) {
    throw std::invalid_argument("moment: panel width must lie in (0, 1]");
  }
  if (spec.points_per_panel < 4 || spec.points_per_panel > 64) {
    throw std::invalid_argument("moment: points per panel must lie in [4, 64]");
  }
  if (!(spec.eps_series >= 1e-9)) {
    throw std::invalid_argument("moment: eps must be at least 1e-9");
  }
  if (spec.parity_filter && *spec.parity_filter != 0 && *spec.parity_filter != 1) {
    throw std::invalid_argument("moment: parity must be 0 or 1");
  }
}

SplitSpec split_spec(std::uint64_t q, double T) {
  const unsigned w = arith::omega(arith::factorize(q));
  SplitSpec s;
  s.Z = static_cast<double>(q) * T / std::pow(2.0, w);
  s.Z0 = s.Z / std::pow(9.0, w);
  return s;
}

Integral integrate_power(const DirichletCharacter& chi, double t0, double t1, int order,
                         const MomentSpec& spec) {
  require_primitive(chi);
  if (order != 2 && order != 4) throw std::invalid_argument("moment: order must be 2 or 4");
  if (t1 < t0) throw std::invalid_argument("integrate_power: empty interval");
  const Rule rule = gauss_legendre(spec.points_per_panel);
  const Panels panels(t0, t1, spec.panel_width);
  const auto table = chi.value_table();
  std::vector<PanelValue> v(panels.count);
  for (std::size_t i = 0; i < panels.count; ++i) {
    v[i] = panel_value(rule, panels, i, [&](double t) { return abs_l_power(t, table, order); });
  }
  return reduce(v, 0, panels.count, panels);
}

MomentResult moment(const MomentSpec& spec, unsigned workers) {
  validate(spec);
  MomentResult r;
  r.spec = spec;
  const auto chars = selected_characters(spec);
  const Rule rule = gauss_legendre(spec.points_per_panel);
  const Panels panels(0.0, spec.T, spec.panel_width);

  std::vector<std::vector<Complex>> tables;
  tables.reserve(chars.size());
  for (const auto& chi : chars) tables.push_back(chi.value_table());

  std::vector<PanelValue> v(chars.size() * panels.count);
  parallel_for(v.size(), workers, [&](std::size_t task) {
    const std::size_t c = task / panels.count;
    const std::size_t i = task % panels.count;
    v[task] = panel_value(rule, panels, i,
                          [&](double t) { return abs_l_power(t, tables[c], spec.order); });
  });

  CompensatedSum total;
  CompensatedSum error;
  for (std::size_t c = 0; c < chars.size(); ++c) {
    const Integral in = reduce(v, c * panels.count, panels.count, panels);
    CharacterMoment cm{chars[c].id(), chars[c].parity(), in.value, in.quad_error, {}};
    for (std::size_t i = 0; i < panels.count; ++i) cm.panels.push_back(v[c * panels.count + i].value);
    r.per_character.push_back(std::move(cm));
    total += in.value;
    error += in.quad_error;
  }
  r.empirical = total.value();
  r.quadrature_error = error.value();
  r.char_count = chars.size();
  r.panel_width = panels.width;

  const std::uint64_t star = arith::phi_star(arith::factorize(spec.q));
  if (spec.T > 0.0 && star > 0) {
    const double full = spec.order == 4 ? predict::theorem1_main(spec.q, spec.T)
                                        : predict::second_moment_main(spec.q, spec.T);
    r.predicted = full * static_cast<double>(r.char_count) / static_cast<double>(star);
  }
  r.ratio = r.predicted > 0.0 ? r.empirical / r.predicted
                              : std::numeric_limits<double>::quiet_NaN();
  return r;
}

ABSplit ab_split(double t, const DirichletCharacter& chi, double Z, double eps) {
  const auto s = analytic::smoothed_series(t, chi, eps, Z);
  return {s.head, 0.5 * s.full - s.head};
}

DecomposedMoment decomposed_fourth_moment(const MomentSpec& spec, unsigned workers) {
  MomentSpec checked = spec;
  checked.order = 4;
  checked.parity_filter.reset();
  validate(checked);

  DecomposedMoment r;
  r.Z = split_spec(spec.q, spec.T).Z;
  const auto chars = selected_characters(checked);
  r.char_count = chars.size();
  const Rule rule = gauss_legendre(spec.points_per_panel);
  const Panels panels(0.0, spec.T, spec.panel_width);
  const std::size_t nc = chars.size();

  // Per panel and character: integrals of A^2, AB, B^2, |L|^2 and the
  // halving difference of the assembled |L|^4.
  struct Cell {
    double a2 = 0.0, ab = 0.0, b2 = 0.0, l2 = 0.0, diff = 0.0;
  };
  std::vector<Cell> cells(panels.count * nc);

  // One task per panel so characters of equal parity share weight tables.
  parallel_for(panels.count, workers, [&](std::size_t i) {
    struct NodeSplit {
      double a, b;
    };
    auto splits_at = [&](double t) {
      std::optional<analytic::WeightTable> tables[2];
      std::vector<NodeSplit> out(nc);
      for (std::size_t c = 0; c < nc; ++c) {
        const int a = chars[c].parity();
        if (!tables[a]) tables[a].emplace(t, a, spec.q);
        const auto s = analytic::smoothed_series(t, chars[c], spec.eps_series, r.Z, &*tables[a]);
        const double A = s.head.real();
        out[c] = {A, 0.5 * s.full - A};
      }
      return out;
    };
    auto integrate = [&](double a, double h) {
      std::vector<CompensatedSum> a2(nc), ab(nc), b2(nc), l2(nc);
      const double mid = a + 0.5 * h;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double w = rule.weights[k];
        const auto sp = splits_at(mid + 0.5 * h * rule.nodes[k]);
        for (std::size_t c = 0; c < nc; ++c) {
          a2[c] += w * sp[c].a * sp[c].a;
          ab[c] += w * sp[c].a * sp[c].b;
          b2[c] += w * sp[c].b * sp[c].b;
          l2[c] += w * 2.0 * (sp[c].a + sp[c].b);
        }
      }
      std::vector<Cell> out(nc);
      for (std::size_t c = 0; c < nc; ++c) {
        out[c] = {0.5 * h * a2[c].value(), 0.5 * h * ab[c].value(), 0.5 * h * b2[c].value(),
                  0.5 * h * l2[c].value(), 0.0};
      }
      return out;
    };
    const double start = panels.start(i);
    auto coarse = integrate(start, panels.width);
    if (panels.is_checked(i)) {
      const double half = 0.5 * panels.width;
      const auto left = integrate(start, half);
      const auto right = integrate(start + half, half);
      for (std::size_t c = 0; c < nc; ++c) {
        auto total = [](const Cell& x) { return 4.0 * (x.a2 + 2.0 * x.ab + x.b2); };
        coarse[c].diff = std::abs(total(left[c]) + total(right[c]) - total(coarse[c]));
      }
    }
    for (std::size_t c = 0; c < nc; ++c) cells[i * nc + c] = coarse[c];
  });

  CompensatedSum a2, ab, b2, l2, diff;
  double magnitude = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t i = 0; i < panels.count; ++i) {
      const Cell& x = cells[i * nc + c];
      a2 += x.a2;
      ab += x.ab;
      b2 += x.b2;
      l2 += x.l2;
      diff += x.diff;
      magnitude += 4.0 * (x.a2 + 2.0 * std::abs(x.ab) + x.b2);
    }
  }
  r.A2 = a2.value();
  r.AB = ab.value();
  r.B2 = b2.value();
  r.total = 4.0 * (r.A2 + 2.0 * r.AB + r.B2);
  // Each |L|^2 carries a series error below eps, so |L|^4 moves by at most
  // eps (2 |L|^2 + eps).
  r.quad_error = panels.error_scale() * diff.value() + kRoundingFloor * magnitude +
                 spec.eps_series * (2.0 * std::abs(l2.value()) + spec.eps_series * spec.T * nc);
  return r;
}

}  // namespace lmoment::moments
