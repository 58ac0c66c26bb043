#include <doctest.h>

#include <cmath>

#include "binopt/cubic_penalty.hpp"
#include "binopt/errors.hpp"
#include "binopt/oracle.hpp"

using namespace binopt;

TEST_CASE("g at the anchor points") {
  CHECK(g_value(0.0) == 0.0);
  CHECK(g_value(1.0) == 0.0);
  CHECK(g_value(0.5) == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(1.0 - 0.5 * 0.5 * 0.5 == doctest::Approx(g_value(0.5)));
}

TEST_CASE("g is symmetric about one half and vanishes only at 0 and 1") {
  for (int k = 0; k <= 1000; ++k) {
    const double x = k * 1e-3;
    CHECK(g_value(x) == doctest::Approx(g_value(1.0 - x)).epsilon(1e-12));
    if (k == 0 || k == 1000)
      CHECK(g_value(x) == 0.0);
    else
      CHECK(g_value(x) > 0.0);
  }
}

TEST_CASE("subdifferential") {
  CHECK(g_subdiff(0.0).size() == 1);
  CHECK(g_subdiff(0.0)[0] == 3.0);
  CHECK(g_subdiff(1.0)[0] == -3.0);
  const SmallSet half = g_subdiff(0.5);
  REQUIRE(half.size() == 2);
  CHECK(half.contains(-0.75));
  CHECK(half.contains(0.75));

  // |nu| >= 3 holds at the binary points only; inside [0, 1/2) the slope is at most 3.
  CHECK(std::abs(g_subdiff(0.0)[0]) >= 3.0);
  CHECK(std::abs(g_subdiff(1.0)[0]) >= 3.0);
  for (int k = 0; k < 500; ++k) CHECK(std::abs(g_subdiff(k * 1e-3)[0]) <= 3.0);
}

TEST_CASE("p sums g over the coordinates") {
  CHECK(p_value(Vector::Zero(0)) == 0.0);
  CHECK(p_value((Vector(4) << 0, 1, 1, 0).finished()) == 0.0);
  CHECK(p_value((Vector(1) << 0.5).finished()) == doctest::Approx(0.875));
  CHECK(p_value((Vector(2) << 0.5, 0.5).finished()) == doctest::Approx(1.75));
}

TEST_CASE("prox regimes and worked cases") {
  CHECK(ProxRegime::of(1.0 / 6.0).branch == ProxBranch::LargeTau);
  CHECK(ProxRegime::of(0.1666).branch == ProxBranch::SmallTau);
  CHECK_THROWS_AS(prox_scalar(0.3, 0.0), ParameterError);
  CHECK_THROWS_AS(prox_scalar(0.3, -1.0), ParameterError);

  auto r = prox_scalar(0.3, 0.25);
  CHECK(r.candidates.size() == 1);
  CHECK(r.selected == 0.0);

  r = prox_scalar(0.5, 0.25);
  REQUIRE(r.candidates.size() == 2);
  CHECK(r.candidates.contains(0.0));
  CHECK(r.candidates.contains(1.0));
  CHECK(r.selected == 0.0);

  r = prox_scalar(0.05, 0.1);
  CHECK(r.candidates.size() == 1);
  CHECK(r.selected == 0.0);
}

TEST_CASE("small-tau interior root matches a fine grid scan") {
  const auto r = prox_scalar(0.4, 0.1);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.selected == doctest::Approx(0.21525).epsilon(1e-4));
  const GridMinimum grid = grid_prox_minimum(0.4, 0.1, 1e-6);
  CHECK(std::abs(grid.argmin - r.selected) < 2e-6);
  const double at_root = g_value(r.selected) + (r.selected - 0.4) * (r.selected - 0.4) / 0.2;
  CHECK(at_root <= grid.value + 1e-12);
}

TEST_CASE("grid oracle sees both wells at z = 1/2") {
  const auto pts = grid_prox_oracle(0.5, 0.25, 1e-4, 1e-8);
  REQUIRE(!pts.empty());
  CHECK(pts.front() == doctest::Approx(0.0));
  CHECK(pts.back() == doctest::Approx(1.0));
  for (double w : grid_prox_oracle(0.3, 0.25, 1e-4, 1e-8)) CHECK(w == doctest::Approx(0.0));
}

TEST_CASE("prox reflection and large-tau snapping") {
  for (double tau : {0.01, 0.05, 1.0 / 6.0, 0.2, 0.5, 1.0}) {
    for (int k = -100; k <= 200; ++k) {
      const double z = k * 1e-2;
      const auto a = prox_scalar(z, tau).candidates;
      const auto b = prox_scalar(1.0 - z, tau).candidates;
      REQUIRE(a.size() == b.size());
      for (double c : a.values()) {
        bool found = false;
        for (double d : b.values()) found = found || std::abs((1.0 - c) - d) < 1e-12;
        CHECK(found);
      }
      if (tau >= 1.0 / 6.0)
        for (double c : a.values()) CHECK((c == 0.0 || c == 1.0));
    }
  }
}

TEST_CASE("small tau does not lose the root to cancellation") {
  // z - tau * (g'(z)) to first order; the step must stay tiny.
  for (double tau : {1e-8, 1e-12, 1e-16}) {
    const double z = 0.3;
    const double w = prox_scalar(z, tau).selected;
    CHECK(std::abs(w - z) < 10.0 * tau);
    const double z2 = 0.7;
    CHECK(std::abs(prox_scalar(z2, tau).selected - z2) < 10.0 * tau);
  }
}

TEST_CASE("vector prox") {
  CHECK(prox_vector((Vector(2) << 0.3, 0.7).finished(), 0.25) == (Vector(2) << 0, 1).finished());
  CHECK(prox_vector((Vector(2) << 0.5, 0.5).finished(), 0.2) == (Vector(2) << 0, 0).finished());
  CHECK(prox_vector((Vector(2) << -2, 3).finished(), 0.01) == (Vector(2) << 0, 1).finished());
  CHECK_THROWS_AS(prox_vector(Vector::Zero(2), 0.0), ParameterError);
}

TEST_CASE("box predicates") {
  CHECK(is_binary((Vector(3) << 0, 1, 0).finished()));
  CHECK_FALSE(is_binary((Vector(2) << 0, 0.5).finished()));
  CHECK(in_box((Vector(2) << 0, 0.5).finished()));
  CHECK_FALSE(in_box((Vector(2) << -1e-9, 0.5).finished()));
}
