#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pspankit/bounds.hpp"
#include "pspankit/linalg.hpp"
#include "support.hpp"

using namespace pspankit;
using testsupport::rows;

TEST_CASE("first-order bound arithmetic") {
  BoundInputs in;
  in.cm_value = 1 / std::sqrt(2.0);
  in.delta = 0.1;
  in.lip_grad = 1.0;
  CHECK(first_order_bound(in) == doctest::Approx(0.1 * std::sqrt(2.0) / 2).epsilon(1e-15));
  in.cm_value = 1.0;
  in.delta = 1.0;
  in.lip_grad = 2.0;
  CHECK(first_order_bound(in) == 1.0);

  in.cm_value = 0.0;
  try {
    first_order_bound(in);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::nonpositive_cosine_measure);
  }
}

TEST_CASE("a failed poll on a quadratic respects the first-order bound") {
  const DirectionSet d = rows({{0.05, 0}, {-0.05, 0}, {0, 0.05}, {0, -0.05}});
  const Vector x0 = Eigen::Vector2d(0.01, 0.01);
  auto f = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  for (std::size_t j = 0; j < d.size(); ++j) CHECK(f(x0) <= f(x0 + d.column(j)));
  BoundInputs in;
  in.cm_value = compute_cosine_measure_span(d).value;
  in.delta = radius(d);
  in.lip_grad = 1.0;
  CHECK(x0.norm() <= first_order_bound(in));
}

TEST_CASE("symmetry factors") {
  const std::vector<double> a = symmetry_factors(DirectionSet(testsupport::maximal_basis(3)));
  CHECK(std::all_of(a.begin(), a.end(), [](double x) { return x == 1.0; }));
  const std::vector<double> b = symmetry_factors(rows({{1, 0}, {-2, 0}, {0, 1}, {0, -1}}));
  CHECK(b[0] == 2.0);
  CHECK(b[1] == 0.5);
  CHECK(*std::max_element(b.begin(), b.end()) == 2.0);
  try {
    symmetry_factors(rows({{1, 0}, {0, 1}, {-1, -1}}));
    FAIL("expected asymmetric_set");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::asymmetric_set);
  }
}

TEST_CASE("second-order bound arithmetic") {
  BoundInputs in;
  in.cm_value = 0.5;
  in.delta = 0.3;
  in.lip_hess = 2.0;
  const std::vector<double> one(4, 1.0);
  CHECK(second_order_bound(in, one) == doctest::Approx(2.0 * 0.09 / 1.5).epsilon(1e-15));
  const std::vector<double> two{2.0, 0.5};
  CHECK(second_order_bound(in, two) == doctest::Approx(2.0 * 2.0 * 0.09 / 1.5).epsilon(1e-15));
  in.alpha_max = 3.0;
  CHECK(second_order_bound(in) == doctest::Approx(3.0 * 2.0 * 0.09 / 1.5).epsilon(1e-15));
}

TEST_CASE("bounds are monotone in their inputs") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  const std::vector<double> alpha{1.0};
  for (int t = 0; t < 500; ++t) {
    BoundInputs a;
    a.cm_value = u(rng);
    a.delta = u(rng);
    a.lip_grad = u(rng) * 10;
    a.lip_hess = u(rng) * 10;
    BoundInputs b = a;
    b.cm_value = a.cm_value * (1.0 + u(rng));
    CHECK(first_order_bound(b) < first_order_bound(a));
    CHECK(second_order_bound(b, alpha) < second_order_bound(a, alpha));
    BoundInputs c = a;
    c.delta = a.delta * (1.0 + u(rng));
    CHECK(first_order_bound(c) > first_order_bound(a));
    CHECK(second_order_bound(c, alpha) > second_order_bound(a, alpha));
    const BoundReport r = evaluate_bounds(a, alpha);
    CHECK(r.first_order_bound.value() >= 0.0);
    CHECK(r.second_order_bound.value() >= 0.0);
  }
}

TEST_CASE("failed-poll advice") {
  const DirectionSet e = rows({{1, 0}, {0, 1}});
  const FailedPollAdvice a = failed_poll_advice(e);
  CHECK((a.w + Eigen::Vector2d(1, 1) / std::sqrt(2.0)).norm() <= 1e-15);
  CHECK(a.single_certificate.is_positive_spanning);
  CHECK(a.mirrored_certificate.is_positive_spanning);
  CHECK(std::abs(a.mirrored_cosine.value - 1 / std::sqrt(2.0)) <= 1e-12);
  CHECK(a.single_cosine.value > 0.0);

  const FailedPollAdvice b = failed_poll_advice(rows({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}}));
  CHECK(b.single_certificate.is_positive_spanning);
  CHECK(b.mirrored_certificate.is_positive_spanning);

  std::mt19937_64 rng(73);
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    const DirectionSet d(testsupport::uniform_matrix(rng, n, std::uniform_int_distribution<int>(1, 6)(rng)));
    if (is_positive_spanning(d).is_positive_spanning) {
      CHECK_THROWS_AS(failed_poll_advice(d), Error);
      continue;
    }
    const FailedPollAdvice adv = failed_poll_advice(d);
    CHECK(std::abs(adv.w.norm() - radius(d)) <= 1e-12 * radius(d));
    CHECK(adv.single_certificate.is_positive_spanning);
    CHECK(adv.mirrored_certificate.is_positive_spanning);
    CHECK(adv.single_cosine.value > 0.0);
    CHECK(adv.mirrored_cosine.value > 0.0);
  }
}
