#include <doctest.h>

#include <cmath>
#include <vector>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/kernels.hpp"
#include "smoothsvm/objective.hpp"
#include "smoothsvm/tron.hpp"
#include "test_support.hpp"

using namespace smoothsvm;

namespace {

std::vector<const kernels::KernelTable*> simd_tables() {
  std::vector<const kernels::KernelTable*> out;
  for (kernels::Isa isa : {kernels::Isa::Avx2, kernels::Isa::Neon}) {
    if (const kernels::KernelTable* t = kernels::table_for(isa)) out.push_back(t);
  }
  return out;
}

double abs_dot(const std::vector<double>& a, const std::vector<double>& b, std::size_t off, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(a[off + i] * b[off + i]);
  return s;
}

// Restores the active table when a test switches it.
struct ActiveGuard {
  const kernels::KernelTable& saved = kernels::active();
  ~ActiveGuard() {
    for (kernels::Isa isa : {kernels::Isa::Scalar, kernels::Isa::Avx2, kernels::Isa::Neon}) {
      if (kernels::table_for(isa) == &saved) kernels::select(isa);
    }
  }
};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(kernels::table_for(kernels::Isa::Scalar) == &kernels::scalar_table());
  CHECK(kernels::scalar_table().name == "scalar");
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  const kernels::KernelTable& ref = kernels::scalar_table();
  testing::Gen g(7);
  for (const kernels::KernelTable* t : simd_tables()) {
    CAPTURE(t->name);
    for (std::size_t n = 0; n < 70; ++n) {
      for (std::size_t off = 0; off < 3; ++off) {
        const std::vector<double> a = testing::random_vector(g, n + off, 3.0);
        const std::vector<double> b = testing::random_vector(g, n + off, 3.0);
        const double bound = 4.0 * 1.1e-16 * static_cast<double>(n + 1) * abs_dot(a, b, off, n);
        CHECK(std::abs(t->dot(a.data() + off, b.data() + off, n) - ref.dot(a.data() + off, b.data() + off, n)) <=
              bound);

        std::vector<double> y1 = b, y2 = b;
        t->axpy(0.37, a.data() + off, y1.data() + off, n);
        ref.axpy(0.37, a.data() + off, y2.data() + off, n);
        CHECK(testing::max_rel_err(y1, y2) <= 1e-15);

        y1 = b;
        y2 = b;
        t->xpby(a.data() + off, -1.3, y1.data() + off, n);
        ref.xpby(a.data() + off, -1.3, y2.data() + off, n);
        CHECK(testing::max_rel_err(y1, y2) <= 1e-15);

        y1 = b;
        y2 = b;
        t->scale(2.5, y1.data() + off, n);
        ref.scale(2.5, y2.data() + off, n);
        CHECK(y1 == y2);
      }
    }
  }
}

TEST_CASE("SIMD sparse kernels agree with the scalar reference") {
  const kernels::KernelTable& ref = kernels::scalar_table();
  testing::Gen g(8);
  for (const kernels::KernelTable* t : simd_tables()) {
    CAPTURE(t->name);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t p = 1 + g.index(300);
      std::vector<std::uint32_t> cols;
      for (std::uint32_t j = 0; j < p; ++j) {
        if (g.coin(0.2)) cols.push_back(j);
      }
      const std::vector<double> values = testing::random_vector(g, cols.size(), 2.0);
      const std::vector<double> dense = testing::random_vector(g, p, 2.0);
      double mag = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) mag += std::abs(values[k] * dense[cols[k]]);
      CHECK(std::abs(t->sparse_dot(values.data(), cols.data(), cols.size(), dense.data()) -
                     ref.sparse_dot(values.data(), cols.data(), cols.size(), dense.data())) <=
            4.0 * 1.1e-16 * static_cast<double>(cols.size() + 1) * mag);

      std::vector<double> y1 = dense, y2 = dense;
      t->sparse_axpy(-0.75, values.data(), cols.data(), cols.size(), y1.data());
      ref.sparse_axpy(-0.75, values.data(), cols.data(), cols.size(), y2.data());
      CHECK(testing::max_rel_err(y1, y2) <= 1e-15);
    }
  }
}

TEST_CASE("kernels are deterministic run to run") {
  testing::Gen g(9);
  const std::vector<double> a = testing::random_vector(g, 1001);
  const std::vector<double> b = testing::random_vector(g, 1001);
  const double first = vec::dot(a, b);
  for (int k = 0; k < 10; ++k) CHECK(vec::dot(a, b) == first);
}

TEST_CASE("vector wrappers check sizes") {
  std::vector<double> a(3), b(4);
  CHECK_THROWS_AS(vec::dot(a, b), DimensionMismatch);
  CHECK_THROWS_AS(vec::axpy(1.0, a, b), DimensionMismatch);
  CHECK(vec::norm(std::vector<double>{3.0, 4.0}) == doctest::Approx(5.0));
}

TEST_CASE("TRON gives the same optimum on every kernel table") {
  ActiveGuard guard;
  testing::Gen g(10);
  const Dataset data = testing::random_dataset(g, 200, 40, 0.2);
  const Objective obj(data, 1e-2, LossSpec::smooth_hinge_m(0.5));
  TronConfig cfg;
  cfg.tol = 1e-9;
  REQUIRE(kernels::select(kernels::Isa::Scalar));
  const TrainReport ref = tron_train(obj, cfg);
  for (const kernels::KernelTable* t : simd_tables()) {
    CAPTURE(t->name);
    for (kernels::Isa isa : {kernels::Isa::Avx2, kernels::Isa::Neon}) {
      if (kernels::table_for(isa) == t) REQUIRE(kernels::select(isa));
    }
    const TrainReport r = tron_train(obj, cfg);
    CHECK(r.converged);
    CHECK(testing::max_rel_err(r.weights, ref.weights) <= 1e-8);
  }
}
