#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lomo/norms.hpp"
#include "support.hpp"

using namespace lomo;
using lomo::testing::random_function;
using lomo::testing::random_levels;
using lomo::testing::rel_diff;

namespace {

GridFunction central_bump(const Domain& d, std::uint64_t seed) {
  GridFunction f = random_function(d, seed);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Point x = d.cell_center(i);
    double r2 = 0.0;
    for (int k = 0; k < d.dim; ++k) r2 += x[k] * x[k];
    if (r2 >= 0.09 * d.side * d.side) f[i] = 0.0;
  }
  return f;
}

double lp_norm(const GridFunction& f, double p) { return std::pow(f.power_integral(p), 1.0 / p); }

}  // namespace

TEST_CASE("SpaceParams validation and conjugate exponent") {
  CHECK_THROWS_AS((SpaceParams{0.5, 2.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SpaceParams{kInfinity, 2.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SpaceParams{2.0, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((SpaceParams{1.0, kInfinity}.validate()));
  CHECK_NOTHROW((SpaceParams{2.0, 0.5}.validate()));
  CHECK(SpaceParams{4.0, 2.0}.conjugate_p() == doctest::Approx(4.0 / 3.0));
  CHECK(std::isinf(SpaceParams{1.0, 2.0}.conjugate_p()));
}

TEST_CASE("Lorentz norm of an indicator") {
  const Domain d = make_domain(2, 1.0, 32);
  const GridFunction chi = sample(d, [](const Point& x) { return std::abs(x[0]) < 0.2 && x[1] > 0.0 ? 1.0 : 0.0; });
  const double measure = chi.l1_norm();
  for (double p : {1.0, 1.5, 3.0}) {
    for (double q : {0.5, 1.0, 2.0, 7.0}) {
      const double closed = std::pow(p / q, 1.0 / q) * std::pow(measure, 1.0 / p);
      // midpoint rule in log t; the cut below e^{-40}|E| loses a relative e^{-40}
      constexpr int kSamples = 200000;
      double acc = 0.0;
      const double lo = std::log(measure) - 40.0 * p / q;
      const double width = (std::log(measure) - lo) / kSamples;
      for (int i = 0; i < kSamples; ++i) acc += std::pow(std::exp(lo + (i + 0.5) * width), q / p) * width;
      CHECK(rel_diff(std::pow(acc, 1.0 / q), closed) < 1e-6);
      CHECK(rel_diff(lorentz_norm(chi, p, q), closed) < 1e-13);
    }
    CHECK(rel_diff(lorentz_norm(chi, p, kInfinity), std::pow(measure, 1.0 / p)) < 1e-14);
  }
  CHECK_THROWS_AS(lorentz_norm(chi, 0.9, 2.0), std::invalid_argument);
}

TEST_CASE("Lorentz norm with q = p is the L_p norm") {
  for (int dim : {1, 2, 3}) {
    const Domain d = make_domain(dim, 1.3, dim == 3 ? 8 : 32);
    const GridFunction f = random_levels(d, dim);
    for (double p : {1.0, 2.0, 3.7}) CHECK(rel_diff(lorentz_norm(f, p, p), lp_norm(f, p)) < 1e-12);
  }
}

TEST_CASE("f** functional of an indicator and the quasi-norm comparison") {
  const DecreasingProfile chi({0.7}, {1.0});
  for (double p : {1.5, 2.0, 4.0}) {
    for (double q : {1.0, 2.0, 5.0}) {
      const double closed = std::pow(std::pow(0.7, q / p) * (p / q + 1.0 / (q * (1.0 - 1.0 / p))), 1.0 / q);
      CHECK(rel_diff(lorentz_norm_double_star(chi, p, q), closed) < 1e-10);
    }
  }
  const Domain d = make_domain(2, 1.0, 32);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto prof = decreasing_rearrangement(seed % 2 ? random_function(d, seed) : random_levels(d, seed));
    for (double p : {1.5, 2.0, 4.0}) {
      for (double q : {1.0, 2.0, 6.0, kInfinity}) {
        const double plain = lorentz_norm(prof, p, q);
        const double starred = lorentz_norm_double_star(prof, p, q);
        CHECK(plain <= starred * (1 + 1e-9));
        CHECK(starred <= p / (p - 1.0) * plain * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("norms are absolutely homogeneous and monotone") {
  const Domain d = make_domain(2, 1.0, 16);
  const GridFunction f = random_function(d, 3);
  GridFunction scaled = f;
  for (double& v : scaled.samples()) v *= -2.5;
  GridFunction bigger = f;
  for (std::size_t i = 0; i < d.size(); ++i) bigger[i] = std::abs(f[i]) * (1.0 + 0.1 * (i % 4));
  const SweepSpec sweep = SweepSpec::full(d, 16);
  CHECK(rel_diff(lorentz_norm(scaled, 2.0, 3.0), 2.5 * lorentz_norm(f, 2.0, 3.0)) < 1e-14);
  CHECK(rel_diff(morrey_norm(scaled, 2.0, 1.0, sweep).value, 2.5 * morrey_norm(f, 2.0, 1.0, sweep).value) < 1e-14);
  CHECK(rel_diff(lorentz_morrey_norm(scaled, 2.0, 3.0, 1.0, sweep).value,
                 2.5 * lorentz_morrey_norm(f, 2.0, 3.0, 1.0, sweep).value) < 1e-14);
  CHECK(lorentz_norm(f, 2.0, 3.0) <= lorentz_norm(bigger, 2.0, 3.0));
  CHECK(morrey_norm(f, 2.0, 1.0, sweep).value <= morrey_norm(bigger, 2.0, 1.0, sweep).value);
  CHECK(lorentz_morrey_norm(f, 2.0, 3.0, 1.0, sweep).value <= lorentz_morrey_norm(bigger, 2.0, 3.0, 1.0, sweep).value);
}

TEST_CASE("Morrey norm examples") {
  const Domain d = make_domain(2, 1.0, 32);
  CHECK(morrey_norm(GridFunction(d), 2.0, 1.0, SweepSpec::full(d)).value == 0.0);

  const GridFunction f = central_bump(d, 4);
  const SweepSpec sweep = SweepSpec::strided(f, 4);
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(rel_diff(morrey_norm(f, p, 0.0, sweep).value, lp_norm(f, p)) < 1e-12);
  }
}

TEST_CASE("1D Morrey norm of the indicator of [0,1] against a dense sweep") {
  const Domain d = make_domain(1, 4.0, 256);
  const GridFunction chi = sample(d, [](const Point& x) { return x[0] >= 0.0 && x[0] < 1.0 ? 1.0 : 0.0; });
  const double lambda = 0.5;
  double oracle = 0.0;
  for (std::size_t c = 0; c < d.size(); ++c) {
    for (int j = 1; j <= 400; ++j) {
      const double r = 2.0 * j / 400.0;
      const Ball b = ball(d, d.cell_center(c), r);
      double mass = 0.0;
      for (std::size_t i : b.cell_indices) mass += chi[i] * d.cell_volume();
      oracle = std::max(oracle, std::pow(r, -lambda) * mass);
    }
  }
  const NormResult res = morrey_norm(chi, 1.0, lambda, SweepSpec::full(d, 64));
  CHECK(res.value <= oracle * (1 + 1e-12));
  CHECK(res.value >= 0.97 * oracle);
  CHECK(oracle == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
  CHECK(res.balls_evaluated == d.size() * 64);
}

TEST_CASE("Lorentz-Morrey coincidences") {
  const Domain d = make_domain(2, 1.0, 32);
  const GridFunction f = central_bump(d, 6);
  const SweepSpec sweep = SweepSpec::strided(f, 4);
  SUBCASE("q = p is Morrey") {
    for (double p : {1.0, 2.0, 3.5}) {
      for (double lambda : {0.0, 0.7, 2.0}) {
        CHECK(rel_diff(lorentz_morrey_norm(f, p, p, lambda, sweep).value, morrey_norm(f, p, lambda, sweep).value) <
              1e-12);
      }
    }
  }
  SUBCASE("lambda = 0 is Lorentz") {
    for (double q : {0.8, 2.0, 5.0, kInfinity}) {
      CHECK(rel_diff(lorentz_morrey_norm(f, 2.0, q, 0.0, sweep).value, lorentz_norm(f, 2.0, q)) < 1e-12);
    }
  }
  SUBCASE("lambda = n, q = p sits between max|f| and a ball-shape multiple of it") {
    // the smallest ball is the single cell of measure h^2 = r^2
    const SweepSpec all = SweepSpec::full(d);
    double shape = 0.0;
    for (double r : all.radii.radii()) {
      shape = std::max(shape, ball(d, d.cell_center(0), r).measure / (r * r));
    }
    for (double p : {1.0, 2.0}) {
      const double value = lorentz_morrey_norm(f, p, p, 2.0, all).value;
      CHECK(value >= f.max_abs() * (1 - 1e-12));
      CHECK(value <= std::pow(shape, 1.0 / p) * f.max_abs() * (1 + 1e-12));
    }
  }
}

TEST_CASE("batch evaluation matches single evaluations") {
  const Domain d = make_domain(2, 1.0, 16);
  const GridFunction f = random_function(d, 21);
  const SweepSpec sweep = SweepSpec::full(d, 16);
  const std::vector<SpaceParams> params{{1.0, 1.0, 0.5}, {2.0, 3.0, 1.0}, {3.0, kInfinity, 1.5}, {1.5, 0.6, 0.0}};
  const auto batch = lorentz_morrey_norms(f, params, sweep);
  REQUIRE(batch.size() == params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const NormResult one = lorentz_morrey_norm(f, params[k].p, params[k].q, params[k].lambda, sweep);
    CHECK(rel_diff(batch[k].value, one.value) < 1e-13);
    CHECK(batch[k].argmax_center == one.argmax_center);
    CHECK(batch[k].argmax_radius == one.argmax_radius);
  }
}

TEST_CASE("ball term agrees with a direct restriction") {
  const Domain d = make_domain(2, 1.0, 32);
  const GridFunction f = random_function(d, 31);
  const Point c{0.1, -0.2, 0.0};
  const double r = 0.3;
  const double direct = std::pow(r, -1.0 / 2.0) * lorentz_norm(restrict_to(f, ball(d, c, r)), 2.0, 3.0);
  CHECK(rel_diff(lorentz_morrey_term(f, 2.0, 3.0, 1.0, c, r), direct) < 1e-14);
}

TEST_CASE("enlarging the sweep never decreases the norm") {
  const Domain d = make_domain(2, 1.0, 32);
  const GridFunction f = random_function(d, 8);
  const SweepSpec coarse = SweepSpec::strided(f, 8);
  const SweepSpec fine = SweepSpec::strided(f, 2);
  CHECK(std::includes(fine.centers.begin(), fine.centers.end(), coarse.centers.begin(), coarse.centers.end()));
  CHECK(morrey_norm(f, 2.0, 1.0, coarse).value <= morrey_norm(f, 2.0, 1.0, fine).value);
  CHECK(lorentz_morrey_norm(f, 2.0, 1.0, 1.0, coarse).value <= lorentz_morrey_norm(f, 2.0, 1.0, 1.0, fine).value);
}

TEST_CASE("default stride keeps at most 4096 centers") {
  for (int dim : {1, 2, 3}) {
    const Domain d = make_domain(dim, 1.0, dim == 3 ? 32 : 256);
    const GridFunction f = random_function(d, 1);
    CHECK(SweepSpec::strided(f).centers.size() <= 4097);
  }
}

TEST_CASE("degenerate_space_probe") {
  SUBCASE("lambda above n on an indicator") {
    const Domain d = make_domain(1, 4.0, 1024);
    const GridFunction chi = sample(d, [](const Point& x) { return std::abs(x[0]) < 1.0 ? 1.0 : 0.0; });
    for (double p : {1.0, 2.0}) {
      const double lambda = 2.0;
      const double ratio = degenerate_space_probe(chi, p, p, lambda, {0.0, 0, 0}, 0.5);
      CHECK(ratio > 1.0);
      CHECK(ratio == doctest::Approx(std::pow(2.0, (lambda - 1.0) / p)).epsilon(0.02));
    }
  }
  SUBCASE("lambda below zero on a full-support function") {
    const Domain d = make_domain(2, 1.0, 32);
    const GridFunction f = random_function(d, 2, 0.5, 1.0);
    for (double lambda : {-0.5, -2.0}) {
      const double ratio = degenerate_space_probe(f, 2.0, 2.0, lambda, {0.0, 0, 0}, 0.4);
      CHECK(ratio >= std::pow(2.0, -lambda / 2.0));
    }
  }
  SUBCASE("errors") {
    const Domain d = make_domain(1, 1.0, 32);
    CHECK_THROWS_AS(degenerate_space_probe(GridFunction(d), 2.0, 2.0, 3.0, {0, 0, 0}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(degenerate_space_probe(random_function(d, 1), 2.0, 2.0, 0.5, {0, 0, 0}, 0.2), std::invalid_argument);
  }
}
