#include "pspankit/kernels.hpp"

namespace pspankit::kernels::scalar {

void project(const PanelView& panel, const double* u, double* out) {
  for (std::size_t j = 0; j < panel.cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < panel.rows; ++i) {
    const double* row = panel.data + i * panel.stride;
    const double ui = u[i];
    for (std::size_t j = 0; j < panel.cols; ++j) out[j] += row[j] * ui;
  }
}

ArgMax max_project(const PanelView& panel, const double* u) {
  ArgMax best{0.0, 0};
  for (std::size_t j = 0; j < panel.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < panel.rows; ++i) s += panel.data[i * panel.stride + j] * u[i];
    if (j == 0 || s > best.value) best = {s, j};
  }
  return best;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace pspankit::kernels::scalar
