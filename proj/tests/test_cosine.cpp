#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pspankit/cosine.hpp"
#include "pspankit/linalg.hpp"
#include "pspankit/oracle.hpp"
#include "support.hpp"

using namespace pspankit;
using testsupport::rows;

namespace {

const double kRt2 = 1.0 / std::sqrt(2.0);

DirectionSet d1() { return rows({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}); }
DirectionSet d2() { return rows({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}}); }

Subspace line(double a, double b, double c) {
  Matrix m(3, 1);
  m << a, b, c;
  return Subspace::from_spanning_columns(m);
}

bool contains(const std::vector<Vector>& vs, const Vector& v, double tol = 1e-12) {
  for (const Vector& x : vs) {
    if ((x - v).norm() <= tol) return true;
  }
  return false;
}

void check_invariants(const CosineReport& r, const DirectionSet& d, const Matrix& q, const Tolerances& tol = {}) {
  REQUIRE(!r.cosine_vectors.empty());
  CHECK(r.active_sets.size() == r.cosine_vectors.size());
  const Matrix dn = d.normalized();
  for (const Vector& u : r.cosine_vectors) {
    CHECK(std::abs(u.norm() - 1.0) <= 1e-10);
    CHECK((u - q * (q.transpose() * u)).norm() <= 1e-10);
    CHECK(std::abs((dn.transpose() * u).maxCoeff() - r.value) <= tol.active_tol);
  }
  if (r.value > tol.active_tol) CHECK(r.kind == CosineCase::positive);
  else if (r.value < -tol.active_tol) CHECK(r.kind == CosineCase::negative);
  else CHECK(r.kind == CosineCase::zero);
}

}  // namespace

TEST_CASE("measure relative to the span") {
  CosineReport r = compute_cosine_measure_span(d1());
  CHECK(std::abs(r.value - kRt2) <= 1e-12);
  CHECK(r.kind == CosineCase::positive);
  REQUIRE(r.cosine_vectors.size() == 4);
  for (double a : {-kRt2, kRt2}) {
    for (double b : {-kRt2, kRt2}) CHECK(contains(r.cosine_vectors, Eigen::Vector3d(a, b, 0)));
  }
  CHECK(std::all_of(r.active_set_spans.begin(), r.active_set_spans.end(), [](bool b) { return b; }));
  REQUIRE(!r.bases.empty());
  CHECK(std::abs(r.bases.front().gamma - kRt2) <= 1e-12);

  r = compute_cosine_measure_span(d2());
  CHECK(r.value == 0.0);
  CHECK(r.kind == CosineCase::zero);
  REQUIRE(r.cosine_vectors.size() == 1);
  CHECK((r.cosine_vectors.front() - Eigen::Vector3d(0, -1, 0)).norm() <= 1e-12);
  REQUIRE(r.null_witness);

  r = compute_cosine_measure_span(rows({{2, -1}}));
  CHECK(std::abs(r.value + 1.0) <= 1e-12);
  CHECK((r.cosine_vectors.front() - Eigen::Vector2d(-2, 1).normalized()).norm() <= 1e-12);

  r = compute_cosine_measure_span(rows({{1, 0}, {0, 1}}));
  CHECK(std::abs(r.value + kRt2) <= 1e-12);
  CHECK(r.kind == CosineCase::negative);
  CHECK((r.cosine_vectors.front() + Eigen::Vector2d(kRt2, kRt2)).norm() <= 1e-12);
  CHECK(std::abs(r.value - testsupport::circle_grid_measure(rows({{1, 0}, {0, 1}}).matrix(), 7200)) <= 1e-6);

  r = compute_cosine_measure_span(DirectionSet(testsupport::maximal_basis(3)));
  CHECK(std::abs(r.value - 1 / std::sqrt(3.0)) <= 1e-12);
  CHECK(r.cosine_vectors.size() == 8);
}

TEST_CASE("measure relative to a given subspace") {
  const Subspace l = line(0.6, 0.8, 0);
  const Subspace m = line(0, 1, 0);

  CosineReport r = compute_cosine_measure_relative(d1(), l);
  CHECK(std::abs(r.value - 0.8) <= 1e-12);
  CHECK(r.cosine_vectors.size() == 2);
  CHECK(contains(r.cosine_vectors, Eigen::Vector3d(0.6, 0.8, 0)));
  CHECK(contains(r.cosine_vectors, Eigen::Vector3d(-0.6, -0.8, 0)));

  r = compute_cosine_measure_relative(d2(), l);
  CHECK(std::abs(r.value - 0.6) <= 1e-12);
  REQUIRE(r.cosine_vectors.size() == 1);
  CHECK((r.cosine_vectors.front() - Eigen::Vector3d(-0.6, -0.8, 0)).norm() <= 1e-12);

  r = compute_cosine_measure_relative(d1(), m);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  CHECK(r.cosine_vectors.size() == 2);
  CHECK(r.zero_projection == IndexList{0, 1});

  r = compute_cosine_measure_relative(d2(), m);
  CHECK(r.value == 0.0);
  CHECK(r.kind == CosineCase::zero);
  REQUIRE(r.cosine_vectors.size() == 1);
  CHECK((r.cosine_vectors.front() - Eigen::Vector3d(0, -1, 0)).norm() <= 1e-12);
  REQUIRE(r.projected_value);
  CHECK(std::abs(*r.projected_value + 1.0) <= 1e-12);

  for (const DirectionSet& d : {d1(), d2()}) {
    r = compute_cosine_measure_relative(d, Subspace::full(3));
    CHECK(r.value == 0.0);
    check_invariants(r, d, Matrix::Identity(3, 3));
  }

  // every direction orthogonal to L
  r = compute_cosine_measure_relative(rows({{1, 0, 0}, {0, 1, 0}}), line(0, 0, 1));
  CHECK(r.value == 0.0);
  CHECK(r.may_be_non_isolated == false);
  CHECK(r.active_sets.front() == IndexList{0, 1});

  CHECK_THROWS_AS(compute_cosine_measure_relative(d1(), Subspace::full(2)), Error);
}

TEST_CASE("relative to span(D) reproduces the span report") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> nd(2, 5), qd(1, 8);
  for (int t = 0; t < 150; ++t) {
    const DirectionSet d(testsupport::uniform_matrix(rng, nd(rng), qd(rng)));
    const CosineReport a = compute_cosine_measure_span(d);
    const CosineReport b = compute_cosine_measure_relative(d, Subspace::span_of(d));
    CHECK(std::abs(a.value - b.value) <= 1e-12);
    CHECK(a.kind == b.kind);
    REQUIRE(a.cosine_vectors.size() == b.cosine_vectors.size());
    for (const Vector& u : a.cosine_vectors) CHECK(contains(b.cosine_vectors, u, 1e-9));
  }
}

TEST_CASE("active_set examples") {
  CHECK(active_set(d1(), Subspace::span_of(d1()), Eigen::Vector3d(kRt2, kRt2, 0), kRt2) == IndexList{0, 2});
  CHECK(active_set(d2(), Subspace::span_of(d2()), Eigen::Vector3d(0, -1, 0), 0.0) == IndexList{0, 1});
  CHECK(active_set(d1(), line(0.6, 0.8, 0), Eigen::Vector3d(0.6, 0.8, 0), 0.8) == IndexList{2});
  CHECK_THROWS_AS(active_set(d1(), line(0.6, 0.8, 0), Eigen::Vector3d(1, 0, 0), 0.8), Error);
}

TEST_CASE("positive spanning subset extraction") {
  CHECK(find_positive_spanning_subset(d2()) == std::optional<IndexList>(IndexList{0, 1}));
  CHECK_FALSE(find_positive_spanning_subset(rows({{1, 0}, {0, 1}})));
  CHECK(find_positive_spanning_subset(d1()) == std::optional<IndexList>(IndexList{0, 1, 2, 3}));
}

TEST_CASE("two-dimensional sets match the angular-gap formula") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> qd(2, 9);
  for (int t = 0; t < 300; ++t) {
    const DirectionSet d(testsupport::uniform_matrix(rng, 2, qd(rng)));
    if (linalg::span_dimension(d) < 2) continue;
    const CosineReport r = compute_cosine_measure_span(d);
    CHECK(std::abs(r.value - testsupport::circle_gap_measure(d.matrix())) <= 1e-10);
    check_invariants(r, d, Matrix::Identity(2, 2));
  }
}

TEST_CASE("three-dimensional positive spanning sets match the facet oracle") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> qd(4, 9);
  int seen = 0;
  for (int t = 0; t < 300 && seen < 100; ++t) {
    const DirectionSet d(testsupport::uniform_matrix(rng, 3, qd(rng)));
    if (!is_positive_spanning(d).is_positive_spanning) continue;
    ++seen;
    const CosineReport r = compute_cosine_measure_span(d);
    CHECK(std::abs(r.value - testsupport::facet_distance_measure(d.normalized())) <= 1e-10);
    check_invariants(r, d, Matrix::Identity(3, 3));
    for (std::size_t i = 0; i < r.cosine_vectors.size(); ++i) {
      CHECK(linalg::matrix_rank(d.subset(r.active_sets[i]).matrix()) == 3);
    }
  }
  CHECK(seen >= 50);
}

TEST_CASE("structural properties on random sets") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> nd(1, 6), qd(1, 10);
  for (int t = 0; t < 300; ++t) {
    const int n = nd(rng);
    const DirectionSet d(testsupport::uniform_matrix(rng, n, qd(rng)));
    const CosineReport r = compute_cosine_measure_span(d);
    const bool ps = is_positive_spanning(d).is_positive_spanning;
    CHECK(ps == (r.value > 1e-8));
    check_invariants(r, d, linalg::orthonormal_range(d.matrix()));

    if (r.kind == CosineCase::negative) {
      const Vector p = d.normalized() * r.hull_weights;
      CHECK(r.hull_weights.minCoeff() >= 0.0);
      CHECK(std::abs(r.hull_weights.sum() - 1.0) <= 1e-12);
      CHECK(std::abs(r.value + p.norm()) <= 1e-12);
      CHECK(r.kkt_residual <= Tolerances{}.gap_tol);
    }
    if (r.kind == CosineCase::positive) {
      for (std::size_t i = 0; i < r.cosine_vectors.size(); ++i) {
        CHECK(r.active_set_spans[i]);
        CHECK(linalg::matrix_rank(d.subset(r.active_sets[i]).matrix()) == linalg::span_dimension(d));
      }
    }

    // scale and permutation invariance
    Matrix m = d.matrix();
    std::uniform_real_distribution<double> sc(0.1, 10.0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) *= sc(rng);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m.cols()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    Matrix perm(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) perm.col(j) = m.col(order[static_cast<std::size_t>(j)]);
    CHECK(std::abs(compute_cosine_measure_span(DirectionSet(perm)).value - r.value) <= 1e-10);

    // ordering against the full-space measure and its equality case
    const CosineReport full = compute_cosine_measure_relative(d, Subspace::full(static_cast<std::size_t>(n)));
    CHECK(r.value >= full.value - 1e-12);
    if (r.value - full.value > Tolerances{}.active_tol) {
      CHECK(ps);
      CHECK(linalg::span_dimension(d) < static_cast<std::size_t>(n));
    }

    // a random subspace sits above the full-space measure too
    const Eigen::Index k = std::uniform_int_distribution<Eigen::Index>(1, n)(rng);
    const Subspace l = Subspace::from_orthonormal(testsupport::random_orthonormal(rng, n).leftCols(k));
    const CosineReport rl = compute_cosine_measure_relative(d, l);
    CHECK(rl.value >= full.value - 1e-12);
    check_invariants(rl, d, l.basis());
    const oracle::SampledCosine s = oracle::sampled_cosine_measure(d, l, 2000, oracle::kDefaultSeed, true);
    CHECK(s.value >= rl.value - 1e-9);
    if (k <= 2) CHECK(s.value <= rl.value + 1e-3);
  }
}

TEST_CASE("one-dimensional subspaces have a closed form") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    Matrix m = testsupport::uniform_matrix(rng, n, std::uniform_int_distribution<int>(1, 6)(rng));
    const Vector dir = testsupport::gaussian_unit(rng, n);
    if (t % 3 == 0) m.col(0) -= dir * dir.dot(m.col(0));  // force a zero projection
    const DirectionSet d(m);
    const Vector w = d.normalized().transpose() * dir;
    double up = w.maxCoeff(), down = (-w).maxCoeff();
    if (t % 3 == 0) {
      up = std::max(up, 0.0);
      down = std::max(down, 0.0);
    }
    const CosineReport r = compute_cosine_measure_relative(d, Subspace::from_orthonormal(Matrix(dir)));
    CHECK(std::abs(r.value - std::min(up, down)) <= 1e-12);
  }
}

TEST_CASE("pairs are either antipodal or negative") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    Matrix m = testsupport::uniform_matrix(rng, n, 2);
    if (t % 3 == 0) m.col(1) = -std::uniform_real_distribution<double>(0.1, 4.0)(rng) * m.col(0);
    const bool anti = std::abs(m.col(0).normalized().dot(m.col(1).normalized()) + 1.0) <= 1e-12;
    const CosineReport r = compute_cosine_measure_span(DirectionSet(m));
    if (anti) {
      CHECK(std::abs(r.value - 1.0) <= 1e-9);
      CHECK(r.may_be_non_isolated == false);
    } else {
      CHECK(r.value < -1e-9);
    }
  }
}

TEST_CASE("enumeration budget") {
  CHECK(binomial(30, 10) == 30045015ULL);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(200, 100) == std::numeric_limits<std::uint64_t>::max());

  std::mt19937_64 rng(67);
  Matrix m(10, 30);
  m << testsupport::maximal_basis(10), testsupport::uniform_matrix(rng, 10, 10);
  try {
    compute_cosine_measure_span(DirectionSet(m));
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == 30045015ULL);
    CHECK(e.allowed() == 2000000ULL);
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
  EnumerationBudget big;
  big.max_bases = 3;
  CHECK_THROWS_AS(compute_cosine_measure_span(d1(), {}, big), BudgetExceeded);
}
