#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "catconv/error.hpp"
#include "catconv/model.hpp"
#include "support.hpp"

using namespace catconv;
using catconv::testing::make_config;

namespace {

// Composite Simpson on [0, 1] with n (even) panels.
template <class F>
double simpson(F f, int n) {
  const double h = 1.0 / n;
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

FluidField filled(const Grid& g, std::size_t species, double t, double (*u)(double r)) {
  FluidField f(species, g.radial_nodes(), g.axial_nodes(), t);
  for (std::size_t i = 0; i < species; ++i)
    for (std::size_t k = 0; k < g.axial_nodes(); ++k)
      for (std::size_t j = 0; j < g.radial_nodes(); ++j) f(i, k, j) = u(g.r(j));
  return f;
}

bool has_issue(const ValidationReport& r, Severity s, const std::string& code, const std::string& species = {}) {
  for (const auto& i : r.issues)
    if (i.severity == s && i.code == code && (species.empty() || i.species == species)) return true;
  return false;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("grid nodes cover both endpoints exactly") {
  const Grid g{7, 13, 0.1, 1.0};
  CHECK(g.r(0) == 0.0);
  CHECK(g.r(7) == 1.0);
  CHECK(g.z(13) == 1.0);
  CHECK(g.radial_nodes() == 8);
  CHECK(g.axial_nodes() == 14);
  CHECK(Grid{4, 4, 0.01, 1.0}.step_count() == 100);
  CHECK(Grid{4, 4, 0.3, 1.0}.step_count() == 3);
}

TEST_CASE("contraction with unit constants") {
  const std::vector<SpeciesParams> p{{"A", 1, 1, 1, -1}, {"B", 1, 1, 1, 1}};
  const auto d = contraction_margin(p);
  CHECK(d.mu == doctest::Approx(1.0));
  CHECK(d.margin == doctest::Approx(std::sqrt(std::numbers::e) / 2).epsilon(1e-14));
  CHECK(d.margin == doctest::Approx(0.8244).epsilon(1e-4));
  CHECK(d.alpha_opt == doctest::Approx(std::sqrt(2.0)));
  CHECK(d.satisfied);
  CHECK_FALSE(d.degenerate);
}

TEST_CASE("contraction threshold is 2/sqrt(e)") {
  CHECK(contraction_threshold() == doctest::Approx(1.2130613194).epsilon(1e-10));
  const std::vector<SpeciesParams> p{{"A", 1, 4, 1, -1}};
  const auto d = contraction_margin(p);
  CHECK(d.mu == doctest::Approx(2.0));
  CHECK_FALSE(d.satisfied);
  CHECK(d.margin > 1.0);
}

TEST_CASE("contraction with theta = 0 is degenerate") {
  const std::vector<SpeciesParams> p{{"A", 1, 1, 1, -1}, {"B", 1, 1, 0, 1}};
  const auto d = contraction_margin(p);
  CHECK(std::isinf(d.mu));
  CHECK_FALSE(d.satisfied);
  CHECK(d.degenerate);
}

TEST_CASE("contraction rejects bad input") {
  CHECK_THROWS_AS(contraction_margin(std::vector<SpeciesParams>{}), Error);
  const std::vector<SpeciesParams> p{{"A", 0, 1, 1, -1}};
  CHECK_THROWS_AS(contraction_margin(p), Error);
}

TEST_CASE("mu scales with the square root of gamma") {
  for (double c : {0.25, 2.0, 9.0, 17.5}) {
    std::vector<SpeciesParams> p{{"A", 1.3, 0.7, 0.9, -1}, {"B", 2.0, 1.1, 1.4, 1}};
    const double mu = contraction_margin(p).mu;
    for (auto& s : p) s.gamma_s *= c;
    CHECK(contraction_margin(p).mu == doctest::Approx(std::sqrt(c) * mu).epsilon(1e-14));
  }
}

TEST_CASE("satisfied agrees with margin and mu near the threshold") {
  const double t = contraction_threshold();
  for (double mu : {t * (1 - 1e-9), t * (1 + 1e-9), 0.5, 1.0, 1.5}) {
    // gamma = mu^2, beta = theta = 1 gives exactly this mu.
    const std::vector<SpeciesParams> p{{"A", 1, mu * mu, 1, -1}};
    const auto d = contraction_margin(p);
    CHECK(d.satisfied == (d.mu < d.threshold));
    CHECK(d.satisfied == (d.margin < 1.0));
  }
}

TEST_CASE("validation of consistent constant data is empty") {
  const auto cfg = catconv::testing::constant_config(0.3);
  CHECK(validate_config(cfg).issues.empty());
}

TEST_CASE("validation flags the temperature mismatch of the shipped scenario") {
  const auto doc = catconv::testing::shipped_scenario();
  const auto r = validate_config(doc.model);
  CHECK_FALSE(r.has_errors());
  CHECK(has_issue(r, Severity::warning, "COMPATIBILITY", "T"));
  CHECK(r.warning_count() == 1);
}

TEST_CASE("validation errors name species and field") {
  auto cfg = catconv::testing::constant_config(1.0);
  cfg.species[1].beta_f = 0.0;
  const auto r = validate_config(cfg);
  REQUIRE(r.has_errors());
  const auto& issue = r.issues.front();
  CHECK(issue.code == "NONPOSITIVE");
  CHECK(issue.species == "B");
  CHECK(issue.field == "beta_f");
}

TEST_CASE("validation covers each hard invariant") {
  auto base = catconv::testing::constant_config(1.0);
  {
    auto c = base;
    c.species[0].gamma_s = -1;
    CHECK(has_issue(validate_config(c), Severity::error, "NONPOSITIVE", "A"));
  }
  {
    auto c = base;
    c.species[0].delta = 0;
    CHECK(has_issue(validate_config(c), Severity::error, "DELTA", "A"));
  }
  {
    auto c = base;
    c.species[0].theta_s = -0.5;
    CHECK(has_issue(validate_config(c), Severity::error, "NEGATIVE", "A"));
  }
  {
    auto c = base;
    c.species[0].theta_s = 0.0;
    const auto r = validate_config(c);
    CHECK_FALSE(r.has_errors());
    CHECK(has_issue(r, Severity::warning, "DEGENERATE", "A"));
    CHECK(has_issue(r, Severity::warning, "CONTRACTION"));
  }
  {
    auto c = base;
    c.grid.nr = 3;
    CHECK(has_issue(validate_config(c), Severity::error, "GRID"));
  }
  {
    auto c = base;
    c.grid.t_end = c.grid.dt / 2;
    CHECK(has_issue(validate_config(c), Severity::error, "GRID"));
  }
  {
    auto c = base;
    c.initial.inlet[0].pop_back();
    CHECK(has_issue(validate_config(c), Severity::error, "LENGTH", "A"));
  }
  {
    auto c = base;
    c.initial.wall_init[1][3] = std::numeric_limits<double>::quiet_NaN();
    CHECK(has_issue(validate_config(c), Severity::error, "NONFINITE", "B"));
  }
  {
    auto c = base;
    c.species[1].name = "A";
    CHECK(has_issue(validate_config(c), Severity::error, "DUPLICATE"));
  }
  {
    auto c = base;
    c.species[0].gamma_s = 4.0;
    const auto r = validate_config(c);
    CHECK_FALSE(r.has_errors());
    CHECK(has_issue(r, Severity::warning, "CONTRACTION"));
  }
  {
    auto c = base;
    c.species.clear();
    c.initial = {};
    CHECK(has_issue(validate_config(c), Severity::error, "NO_SPECIES"));
  }
}

TEST_CASE("compatibility gap below 1e-12 is tolerated") {
  auto c = catconv::testing::constant_config(1.0);
  c.initial.wall_init[0][0] = 1.0 + 5e-13;
  CHECK(validate_config(c).issues.empty());
  c.initial.wall_init[0][0] = 1.0 + 5e-12;
  CHECK(has_issue(validate_config(c), Severity::warning, "COMPATIBILITY", "A"));
}

TEST_CASE("validation is repeatable") {
  auto c = catconv::testing::constant_config(1.0);
  c.species[0].theta_s = 0.0;
  c.initial.wall_init[1][0] = 2.0;
  const auto a = validate_config(c);
  const auto b = validate_config(c);
  CHECK(a == b);
}

TEST_CASE("weighted norm of a constant field is T/4") {
  const Grid g{64, 8, 0.25, 2.0};
  std::vector<FluidField> h;
  for (int n = 0; n <= 8; ++n) h.push_back(filled(g, 1, 0.25 * n, [](double) { return 1.0; }));
  const double v = weighted_fluid_norm(h, g)[0];
  CHECK(v == doctest::Approx(2.0 / 4).epsilon(2.0 / (64.0 * 64.0)));
}

TEST_CASE("weighted norm of zero is zero") {
  const Grid g{16, 8, 0.1, 1.0};
  std::vector<FluidField> h{filled(g, 2, 0.0, [](double) { return 0.0; }), filled(g, 2, 1.0, [](double) { return 0.0; })};
  const auto v = weighted_fluid_norm(h, g);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
}

TEST_CASE("weighted norm of U = r matches a high-resolution quadrature") {
  const Grid g{256, 4, 0.5, 1.0};
  std::vector<FluidField> h;
  for (int n = 0; n <= 2; ++n) h.push_back(filled(g, 1, 0.5 * n, [](double r) { return r; }));
  const double oracle = simpson([](double r) { return r * r * r * (1 - r * r); }, 20000);
  CHECK(oracle == doctest::Approx(1.0 / 12).epsilon(1e-12));
  CHECK(std::abs(weighted_fluid_norm(h, g)[0] - oracle) < 1e-4);
}

TEST_CASE("weighted norm takes the sup over stations") {
  const Grid g{32, 4, 1.0, 1.0};
  FluidField a(1, g.radial_nodes(), g.axial_nodes(), 0.0);
  for (std::size_t j = 0; j < g.radial_nodes(); ++j) a(0, 2, j) = 3.0;  // only station k = 2 nonzero
  FluidField b = a;
  b.time = 1.0;
  const std::vector<FluidField> h{a, b};
  const auto w = radial_quadrature_weights(g);
  double q = 0.0;
  for (double x : w) q += 9.0 * x;
  CHECK(weighted_fluid_norm(h, g)[0] == doctest::Approx(q));
}

TEST_CASE("weighted norm is homogeneous of degree two") {
  const Grid g{24, 6, 0.1, 1.0};
  std::vector<FluidField> h, h3;
  for (int n = 0; n < 5; ++n) {
    FluidField f(2, g.radial_nodes(), g.axial_nodes(), 0.1 * n);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < g.axial_nodes(); ++k)
        for (std::size_t j = 0; j < g.radial_nodes(); ++j)
          f(i, k, j) = std::sin(1.0 + i + 0.3 * n + g.r(j) * 2 + g.z(k));
    h.push_back(f);
    for (std::size_t i = 0; i < 2; ++i)
      for (auto& x : f.species(i)) x *= -2.5;
    h3.push_back(f);
  }
  const auto a = weighted_fluid_norm(h, g);
  const auto b = weighted_fluid_norm(h3, g);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b[i] == doctest::Approx(6.25 * a[i]).epsilon(1e-14));
}

TEST_CASE("weighted norm rejects mismatched history") {
  const Grid g{8, 4, 0.1, 1.0};
  const Grid g2{16, 4, 0.1, 1.0};
  std::vector<FluidField> h{filled(g, 1, 0.0, [](double) { return 1.0; }), filled(g2, 1, 0.1, [](double) { return 1.0; })};
  CHECK_THROWS_AS(weighted_fluid_norm(h, g), Error);
  CHECK_THROWS_AS(weighted_fluid_norm(std::vector<FluidField>{}, g), Error);
}

TEST_CASE("radial weights integrate r(1 - r^2) exactly up to the trapezoid error") {
  for (int nr : {8, 64, 512}) {
    const Grid g{nr, 4, 0.1, 1.0};
    double s = 0.0;
    for (double w : radial_quadrature_weights(g)) s += w;
    CHECK(std::abs(s - 0.25) < 1.0 / (nr * nr));
  }
}

}  // TEST_SUITE
