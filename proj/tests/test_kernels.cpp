#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pspankit/kernels.hpp"
#include "support.hpp"

#include <random>

namespace k = pspankit::kernels;

TEST_CASE("panel layout pads rows and keeps values") {
  Eigen::MatrixXd m(3, 5);
  m.setRandom();
  const k::PointPanel p(m);
  const k::PanelView v = p.view();
  CHECK(v.rows == 3);
  CHECK(v.cols == 5);
  CHECK(v.stride % 4 == 0);
  CHECK(v.stride >= 5);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) CHECK(v.data[static_cast<std::size_t>(i) * v.stride + static_cast<std::size_t>(j)] == m(i, j));
  }
}

TEST_CASE("scalar and avx2 variants agree") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 9), cnt(1, 37);
  for (int trial = 0; trial < 400; ++trial) {
    const int rows = dim(rng), cols = cnt(rng);
    const Eigen::MatrixXd m = testsupport::uniform_matrix(rng, rows, cols);
    const Eigen::VectorXd u = testsupport::uniform_matrix(rng, rows, 1).col(0);
    const k::PointPanel p(m);

    Eigen::VectorXd a(cols), b(cols);
    k::scalar::project(p.view(), u.data(), a.data());
    k::avx2::project(p.view(), u.data(), b.data());
    const Eigen::VectorXd ref = m.transpose() * u;
    CHECK((a - ref).lpNorm<Eigen::Infinity>() <= 1e-14);
    CHECK((a - b).lpNorm<Eigen::Infinity>() <= 4e-16 * rows);

    const k::ArgMax sa = k::scalar::max_project(p.view(), u.data());
    const k::ArgMax sb = k::avx2::max_project(p.view(), u.data());
    CHECK(sa.index == sb.index);
    CHECK(sa.value == doctest::Approx(sb.value).epsilon(1e-15));
    CHECK(sa.value == a(static_cast<Eigen::Index>(sa.index)));

    const double da = k::scalar::dot(m.col(0).data(), m.col(0).data(), static_cast<std::size_t>(rows));
    const double db = k::avx2::dot(m.col(0).data(), m.col(0).data(), static_cast<std::size_t>(rows));
    CHECK(da == doctest::Approx(m.col(0).squaredNorm()).epsilon(1e-14));
    CHECK(db == doctest::Approx(da).epsilon(1e-14));
  }
}

TEST_CASE("max_project breaks ties toward the lowest index") {
  Eigen::MatrixXd m(2, 9);
  m.setZero();
  m(0, 3) = 1.0;
  m(0, 6) = 1.0;
  m(0, 8) = 1.0;
  const Eigen::VectorXd u = Eigen::Vector2d(1.0, 0.0);
  const k::PointPanel p(m);
  CHECK(k::scalar::max_project(p.view(), u.data()).index == 3);
  CHECK(k::avx2::max_project(p.view(), u.data()).index == 3);
}

TEST_CASE("dispatch can be forced") {
  const k::Isa start = k::active_isa();
  CHECK(k::isa_available(k::Isa::scalar));
  CHECK(k::force_isa(k::Isa::scalar));
  CHECK(k::active_isa() == k::Isa::scalar);
  if (k::isa_available(k::Isa::avx2)) {
    CHECK(k::force_isa(k::Isa::avx2));
    CHECK(k::active_isa() == k::Isa::avx2);
  } else {
    CHECK_FALSE(k::force_isa(k::Isa::avx2));
  }
  k::force_isa(start);
}
