#include "pspankit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace pspankit::kernels {

#ifndef PSPANKIT_HAVE_AVX2
namespace avx2 {
void project(const PanelView& panel, const double* u, double* out) { scalar::project(panel, u, out); }
ArgMax max_project(const PanelView& panel, const double* u) { return scalar::max_project(panel, u); }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
}  // namespace avx2
#endif

namespace {

struct Table {
  Isa isa;
  void (*project)(const PanelView&, const double*, double*);
  ArgMax (*max_project)(const PanelView&, const double*);
  double (*dot)(const double*, const double*, std::size_t);
};

constexpr Table kScalar{Isa::scalar, &scalar::project, &scalar::max_project, &scalar::dot};
constexpr Table kAvx2{Isa::avx2, &avx2::project, &avx2::max_project, &avx2::dot};

bool cpu_has_avx2() {
#if defined(PSPANKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* initial_table() {
  const bool avx2_ok = cpu_has_avx2();
  if (const char* env = std::getenv("PSPANKIT_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && avx2_ok) return &kAvx2;
  }
  return avx2_ok ? &kAvx2 : &kScalar;
}

std::atomic<const Table*>& table_slot() {
  static std::atomic<const Table*> slot{initial_table()};
  return slot;
}

const Table& table() { return *table_slot().load(std::memory_order_acquire); }

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

PointPanel::PointPanel(const Eigen::MatrixXd& points)
    : rows_(static_cast<std::size_t>(points.rows())), cols_(static_cast<std::size_t>(points.cols())) {
  stride_ = (cols_ + 3) & ~std::size_t{3};
  storage_.assign(rows_ * stride_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      storage_[i * stride_ + j] = points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
}

void project(const PanelView& panel, const double* u, double* out) { table().project(panel, u, out); }
ArgMax max_project(const PanelView& panel, const double* u) { return table().max_project(panel, u); }
double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }

Isa active_isa() { return table().isa; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

bool force_isa(Isa isa) {
  if (!isa_available(isa)) return false;
  table_slot().store(isa == Isa::avx2 ? &kAvx2 : &kScalar, std::memory_order_release);
  return true;
}

}  // namespace pspankit::kernels
