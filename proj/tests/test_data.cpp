#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/libsvm_io.hpp"
#include "smoothsvm/split.hpp"
#include "smoothsvm/synthetic.hpp"
#include "test_support.hpp"

using namespace smoothsvm;

namespace {

const std::string kFixtures = SMOOTHSVM_FIXTURE_DIR;

std::size_t parse_error_line(const std::string& path) {
  try {
    read_libsvm_file(path);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string written(const Dataset& d) {
  std::ostringstream out;
  write_libsvm(d, out);
  return out.str();
}

}  // namespace

TEST_CASE("parse basic LIBSVM text") {
  const Dataset d = parse_libsvm(std::string_view("+1 3:4.5\n-1 1:2\n"));
  CHECK(d.size() == 2);
  CHECK(d.dimension() == 3);
  CHECK(d.features().to_dense() == std::vector<double>{0, 0, 4.5, 2, 0, 0});
  CHECK(std::vector<int>(d.labels().begin(), d.labels().end()) == std::vector<int>{1, -1});
}

TEST_CASE("zero/one labels map to -1/+1") {
  const Dataset d = parse_libsvm(std::string_view("1 1:1\n0 2:1\n"));
  CHECK(std::vector<int>(d.labels().begin(), d.labels().end()) == std::vector<int>{1, -1});
}

TEST_CASE("CRLF line endings, blank lines and tabs are accepted") {
  const Dataset d = parse_libsvm(std::string_view("+1\t1:1  2:2\r\n\r\n-1 2:3\r\n"));
  CHECK(d.size() == 2);
  CHECK(d.features().to_dense() == std::vector<double>{1, 2, 0, 3});
}

TEST_CASE("malformed input raises ParseError with the line number") {
  CHECK_THROWS_AS(parse_libsvm(std::string_view("1 2:1 1:1\n")), ParseError);
  CHECK(parse_error_line(kFixtures + "/malformed_label.svm") == 3);
  CHECK(parse_error_line(kFixtures + "/malformed_token.svm") == 2);
  CHECK(parse_error_line(kFixtures + "/malformed_order.svm") == 4);
  CHECK_THROWS_AS(parse_libsvm(std::string_view("+1 0:1\n")), ParseError);
  CHECK_THROWS_AS(parse_libsvm(std::string_view("+1 1:abc\n")), ParseError);
  CHECK_THROWS_AS(parse_libsvm(std::string_view("+1 1:inf\n")), ParseError);
  CHECK_THROWS_AS(parse_libsvm(std::string_view("+1 -1:1\n")), ParseError);
  CHECK_THROWS_AS(parse_libsvm(std::string_view("x 1:1\n")), ParseError);
  CHECK_THROWS_AS(parse_libsvm(std::string_view("\n\n")), ParseError);
  CHECK_THROWS_AS(read_libsvm_file(kFixtures + "/does_not_exist.svm"), Error);
}

TEST_CASE("ParseError message carries the line") {
  try {
    parse_libsvm(std::string_view("+1 1:1\n+1 1:1 1:2\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).rfind("line 2: ", 0) == 0);
  }
}

TEST_CASE("dimension override drops out-of-range features") {
  LibsvmStats stats;
  const Dataset d = parse_libsvm(std::string_view("+1 1:1 5:2\n-1 2:1\n"), {.dimension = 3}, &stats);
  CHECK(d.dimension() == 3);
  CHECK(stats.dropped_features == 1);
  CHECK(stats.instances == 2);
  CHECK(parse_libsvm(std::string_view("+1 1:1\n"), {.dimension = 10}).dimension() == 10);
}

TEST_CASE("write produces canonical text") {
  const Dataset d = read_libsvm_file(kFixtures + "/three_lines.svm");
  CHECK(written(d) == "+1 1:0.5 3:1.25\n-1 2:2 3:-0.75\n+1 1:1 2:0.25\n");
  const Dataset empty_row = parse_libsvm(std::string_view("1 2:1\n0\n"));
  CHECK(written(empty_row) == "+1 2:1\n-1\n");
  CHECK(parse_libsvm(written(empty_row)) == empty_row);
}

TEST_CASE("write then parse is the identity on random datasets") {
  testing::Gen g(77);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + g.index(20), p = 1 + g.index(30);
    std::vector<double> dense(n * p, 0.0);
    for (double& x : dense) {
      if (g.coin(0.3)) x = std::ldexp(g.uniform(-1.0, 1.0), static_cast<int>(g.index(200)) - 100);
    }
    std::vector<int> labels(n);
    for (int& y : labels) y = g.coin() ? 1 : -1;
    const Dataset d(CsrMatrix::from_dense(n, p, dense), labels);
    CHECK(parse_libsvm(written(d), {.dimension = p}) == d);
  }
}

TEST_CASE("dataset invariants and helpers") {
  CHECK_THROWS_AS(Dataset(CsrMatrix::from_dense(1, 1, std::vector<double>{1}), {0}), InvalidArgument);
  CHECK_THROWS_AS(Dataset(CsrMatrix::from_dense(1, 1, std::vector<double>{1}), {1, 1}), DimensionMismatch);
  const Dataset eye(CsrMatrix::from_dense(2, 2, std::vector<double>{1, 0, 0, 1}), {1, -1});
  CHECK(sparsity_metric(eye) == 0.5);
  const Dataset dense(CsrMatrix::from_dense(2, 2, std::vector<double>{1, 2, 3, 4}), {1, -1});
  CHECK(sparsity_metric(dense) == 1.0);
  const std::size_t idx[] = {1};
  CHECK(eye.subset(idx).labels()[0] == -1);
}

TEST_CASE("accuracy follows the sign rule with ties negative") {
  const Dataset one(CsrMatrix::from_dense(1, 2, std::vector<double>{2, 0}), {1});
  CHECK(accuracy(std::vector<double>{1, 0}, one) == 1.0);
  const Dataset zero_row(CsrMatrix::from_dense(1, 2, std::vector<double>{0, 0}), {1});
  CHECK(accuracy(std::vector<double>{1, 1}, zero_row) == 0.0);
  const Dataset balanced(CsrMatrix::from_dense(4, 1, std::vector<double>{1, 2, 3, 4}), {1, -1, -1, 1});
  CHECK(accuracy(std::vector<double>{0.0}, balanced) == 0.5);
  CHECK_THROWS_AS(accuracy(std::vector<double>{1, 2}, balanced), DimensionMismatch);

  testing::Gen g(4);
  const Dataset d = testing::random_dataset(g, 50, 8, 0.5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> w = testing::random_vector(g, 8);
    const double base = accuracy(w, d);
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);
    for (double& x : w) x *= 3.7;
    CHECK(accuracy(w, d) == base);
  }
}

TEST_CASE("k-fold split partitions every repetition") {
  const auto splits = kfold_split(10, SplitPlan{5, 1, 3});
  REQUIRE(splits.size() == 5);
  std::set<std::size_t> seen;
  for (const FoldSplit& s : splits) {
    CHECK(s.test.size() == 2);
    CHECK(s.train.size() == 8);
    for (std::size_t i : s.test) CHECK(seen.insert(i).second);
  }
  CHECK(seen.size() == 10);
  CHECK(kfold_split(100, SplitPlan{5, 4, 0}).size() == 20);
}

TEST_CASE("fold sizes put the remainder on the lowest folds") {
  const auto splits = kfold_split(13, SplitPlan{5, 2, 1});
  for (const FoldSplit& s : splits) CHECK(s.test.size() == (s.fold < 3 ? 3u : 2u));
}

TEST_CASE("split properties on random sizes") {
  testing::Gen g(12);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t folds = 2 + g.index(8);
    const std::size_t n = folds + g.index(200);
    const std::size_t reps = 1 + g.index(4);
    const auto splits = kfold_split(n, SplitPlan{folds, reps, g.next()});
    REQUIRE(splits.size() == folds * reps);
    for (std::size_t r = 0; r < reps; ++r) {
      std::vector<int> count(n, 0);
      std::size_t min_size = n, max_size = 0;
      for (std::size_t f = 0; f < folds; ++f) {
        const FoldSplit& s = splits[r * folds + f];
        CHECK(s.repetition == r);
        CHECK(s.fold == f);
        CHECK(std::is_sorted(s.test.begin(), s.test.end()));
        CHECK(s.train.size() + s.test.size() == n);
        for (std::size_t i : s.test) ++count[i];
        min_size = std::min(min_size, s.test.size());
        max_size = std::max(max_size, s.test.size());
      }
      CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
      CHECK(max_size - min_size <= 1);
    }
  }
}

TEST_CASE("splits are deterministic and seed dependent") {
  const auto a = kfold_split(50, SplitPlan{5, 4, 42});
  const auto b = kfold_split(50, SplitPlan{5, 4, 42});
  const auto c = kfold_split(50, SplitPlan{5, 4, 43});
  bool same = true, differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    same = same && a[k].test == b[k].test;
    differs = differs || a[k].test != c[k].test;
  }
  CHECK(same);
  CHECK(differs);
  CHECK(a[0].test != a[5].test);  // repetitions use independent permutations
}

TEST_CASE("split preconditions") {
  CHECK_THROWS_AS(kfold_split(4, SplitPlan{5, 1, 0}), TooFewInstances);
  CHECK_THROWS_AS(kfold_split(10, SplitPlan{1, 1, 0}), InvalidArgument);
  CHECK_THROWS_AS(kfold_split(10, SplitPlan{5, 0, 0}), InvalidArgument);
}

TEST_CASE("synthetic data is separable by w* without noise") {
  const SyntheticData s = synthetic_dataset(500, 30, 5, 0.0, 9);
  CHECK(s.data.size() == 500);
  CHECK(s.data.dimension() == 30);
  CHECK(s.data.features().nnz() == 2500);
  CHECK(accuracy(s.w_star, s.data) == 1.0);
  double norm2 = 0.0;
  for (double w : s.w_star) norm2 += w * w;
  CHECK(norm2 == doctest::Approx(1.0));
  const SyntheticData noisy = synthetic_dataset(500, 30, 5, 1.0, 9);
  CHECK(accuracy(noisy.w_star, noisy.data) < 1.0);
}

TEST_CASE("synthetic data is reproducible") {
  CHECK(synthetic_dataset(100, 20, 4, 0.1, 5).data == synthetic_dataset(100, 20, 4, 0.1, 5).data);
  CHECK_FALSE(synthetic_dataset(100, 20, 4, 0.1, 5).data == synthetic_dataset(100, 20, 4, 0.1, 6).data);
  CHECK_THROWS_AS(synthetic_dataset(10, 5, 6, 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(synthetic_dataset(10, 5, 0, 0.0, 1), InvalidArgument);
}

TEST_CASE("checked-in benchmark fixture matches the generator") {
  const Dataset fixture = read_libsvm_file(kFixtures + "/synthetic_2000x100_seed42.svm", {.dimension = 100});
  CHECK(fixture == synthetic_dataset(2000, 100, 10, 0.0, 42).data);
}
