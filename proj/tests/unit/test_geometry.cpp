#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vanatta/errors.hpp"
#include "vanatta/geometry.hpp"
#include "vanatta/layout_io.hpp"

using namespace vanatta;
using namespace vanatta::geometry;

namespace {
const double wl = wavelength_of(24e9);
}

TEST_SUITE("geometry") {

TEST_CASE("wavelength at 24 GHz") {
  CHECK(wl == doctest::Approx(0.0124913524).epsilon(1e-9));
  CHECK_THROWS_AS(wavelength_of(0.0), DomainError);
  CHECK_THROWS_AS(wavelength_of(-1.0), DomainError);
}

TEST_CASE("linear array structure") {
  const auto layout = build_linear_array(2, wl / 2, wl);
  REQUIRE(layout.elements.size() == 4);
  REQUIRE(layout.pair_count() == 2);
  CHECK(validate_layout(layout).passed());
  // pair 1 outermost, pair 2 inner; lines differ by exactly one wavelength
  auto [a, b] = layout.pair_elements(1);
  REQUIRE(a != nullptr);
  CHECK(std::abs(a->position.x) == doctest::Approx(0.75 * wl));
  CHECK(a->position.x + b->position.x == doctest::Approx(0.0).epsilon(1e-15));
  const double diff = layout.line_for(1)->base_length - layout.line_for(2)->base_length;
  CHECK(std::abs(diff) == doctest::Approx(wl).epsilon(1e-12));
  CHECK_FALSE(layout.line_for(1)->has_switch);
  CHECK(layout.line_for(2)->has_switch);
  CHECK(layout.line_for(2)->switched_extra_length == doctest::Approx(wl / 2));
}

TEST_CASE("linear array rejects sub-half-wavelength spacing") {
  CHECK_THROWS_AS(build_linear_array(2, 0.4 * wl, wl), ConstraintError);
  CHECK_THROWS_AS(build_linear_array(0, wl / 2, wl), DomainError);
}

TEST_CASE("every built layout passes; spacing matches brute force") {
  for (int n = 1; n <= 16; ++n) {
    for (double s : {0.5, 0.7, 1.0}) {
      const auto layout = build_linear_array(n, s * wl, wl);
      CHECK(validate_layout(layout).passed());
      CHECK(min_element_spacing(layout) == doctest::Approx(oracle::min_pairwise_distance(layout)));
    }
  }
  for (int rings = 1; rings <= 4; ++rings) {
    for (double r0 : {0.5, 1.0, 2.0}) {
      const auto layout = build_concentric_surface(rings, r0 * wl, wl);
      CAPTURE(rings);
      CAPTURE(r0);
      CHECK(validate_layout(layout).passed());
      CHECK(min_element_spacing(layout) >= wl / 2 - 1e-12);
      CHECK(min_element_spacing(layout) == doctest::Approx(oracle::min_pairwise_distance(layout)));
    }
  }
}

TEST_CASE("concentric surface ring radii and arc lines") {
  const auto layout = build_concentric_surface(3, wl, wl);
  for (const auto& line : layout.lines) {
    auto [a, b] = layout.pair_elements(line.pair_id);
    const double r = a->position.norm();
    CHECK(b->position.norm() == doctest::Approx(r));
    CHECK(line.base_length == doctest::Approx(oracle::pi * r));
    const double rings = (r - wl) / (wl / oracle::pi);
    CHECK(rings == doctest::Approx(std::round(rings)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(build_concentric_surface(2, 0.2 * wl, wl), ConstraintError);
}

TEST_CASE("validator names the broken rule") {
  auto layout = build_linear_array(2, wl / 2, wl);
  SUBCASE("element displaced") {
    layout.elements[0].position.y += wl / 10;
    const auto report = validate_layout(layout);
    CHECK(report.has(Rule::centrosymmetry));
    CHECK_FALSE(report.has(Rule::line_congruence));
    CHECK(report.violations.front().deviation == doctest::Approx(wl / 10));
  }
  SUBCASE("line lengthened by a quarter wavelength") {
    layout.lines[1].base_length += wl / 4;
    const auto report = validate_layout(layout);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule == Rule::line_congruence);
    CHECK(report.violations[0].deviation == doctest::Approx(wl / 4));
  }
  SUBCASE("line lengthened by a full wavelength is still congruent") {
    layout.lines[1].base_length += wl;
    CHECK(validate_layout(layout).passed());
  }
  SUBCASE("elements too close") {
    auto tight = build_linear_array(2, wl / 2, wl);
    for (auto& e : tight.elements) e.position.x *= 0.8;
    const auto report = validate_layout(tight);
    CHECK(report.has(Rule::min_spacing));
    CHECK_FALSE(report.has(Rule::centrosymmetry));
  }
  SUBCASE("switch must add half a wavelength") {
    layout.lines[1].switched_extra_length = wl / 3;
    CHECK(validate_layout(layout).has(Rule::structure));
  }
  SUBCASE("empty layout") {
    SurfaceLayout empty;
    empty.wavelength = wl;
    CHECK_THROWS_AS(validate_layout(empty), PreconditionError);
  }
}

TEST_CASE("property: random single perturbations are always caught") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * oracle::pi);
  for (int trial = 0; trial < 200; ++trial) {
    auto layout = build_concentric_surface(2, wl, wl);
    const auto idx = rng() % layout.elements.size();
    const double a = angle(rng);
    layout.elements[idx].position.x += wl / 10 * std::cos(a);
    layout.elements[idx].position.y += wl / 10 * std::sin(a);
    CHECK(validate_layout(layout).has(Rule::centrosymmetry));
  }
}

TEST_CASE("layout export/import round trip is exact") {
  for (const auto& layout : {build_linear_array(4, 0.6 * wl, wl), build_concentric_surface(2, wl, wl)}) {
    const auto text = export_layout(layout);
    CHECK(import_layout(text) == layout);
  }
  CHECK_THROWS_AS(import_layout("{not json"), IoError);
  CHECK_THROWS_AS(import_layout("{}"), IoError);
  CHECK_THROWS_AS(load_layout("/nonexistent/layout.json"), IoError);
}

}  // TEST_SUITE
