#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version; the variant is chosen once at runtime from
// CPUID (override with PSPANKIT_KERNELS=scalar|avx2 or force_isa()).
//
// Points are held in a row-panel layout: for k-dimensional points p_0..p_{q-1}
// the panel stores k rows, row i holding coordinate i of every point
// contiguously, so p^T u for all points vectorizes across points.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pspankit::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct PanelView {
  const double* data = nullptr;
  std::size_t rows = 0;    // point dimension k
  std::size_t cols = 0;    // number of points q
  std::size_t stride = 0;  // distance between rows, >= cols
};

struct ArgMax {
  double value;
  std::size_t index;
};

/// Owns a padded row panel built from a k x q column-per-point matrix.
class PointPanel {
 public:
  PointPanel() = default;
  explicit PointPanel(const Eigen::MatrixXd& points);

  PanelView view() const noexcept { return {storage_.data(), rows_, cols_, stride_}; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::vector<double> storage_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
};

// Dispatched entry points.

/// out[j] = sum_i panel(i, j) * u[i]
void project(const PanelView& panel, const double* u, double* out);

/// max_j sum_i panel(i, j) * u[i]; ties resolve to the lowest index. Requires cols >= 1.
ArgMax max_project(const PanelView& panel, const double* u);

double dot(const double* a, const double* b, std::size_t n);

Isa active_isa();
bool isa_available(Isa isa);
/// Select a variant explicitly; returns false (and changes nothing) if unavailable.
bool force_isa(Isa isa);

namespace scalar {
void project(const PanelView& panel, const double* u, double* out);
ArgMax max_project(const PanelView& panel, const double* u);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void project(const PanelView& panel, const double* u, double* out);
ArgMax max_project(const PanelView& panel, const double* u);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace avx2

// Eigen conveniences.
inline ArgMax max_project(const PointPanel& panel, const Eigen::VectorXd& u) {
  return max_project(panel.view(), u.data());
}
inline Eigen::VectorXd project(const PointPanel& panel, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(panel.cols()));
  project(panel.view(), u.data(), out.data());
  return out;
}

}  // namespace pspankit::kernels
