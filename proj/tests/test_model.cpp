#include <random>

#include "doctest.h"
#include "smoothcount/error.hpp"
#include "smoothcount/model.hpp"
#include "smoothcount/random_instance.hpp"
#include "support.hpp"

using namespace smoothcount;

namespace {

Bits to_bits(const std::vector<int>& x) { return Bits(x.begin(), x.end()); }

bool same_system(const SparseSystem& a, const SparseSystem& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // beta may differ in the last bit since fixing order changes the summation order
  return a.dense() == b.dense() &&
         std::equal(a.beta().begin(), a.beta().end(), b.beta().begin(),
                    [](double u, double v) { return std::abs(u - v) <= 1e-12; }) &&
         std::equal(a.gamma().begin(), a.gamma().end(), b.gamma().begin());
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("column_max_nonzeros") {
    CHECK(column_max_nonzeros(testing::dense_system({{1, 1}}, {1}, {1})) == 1);
    CHECK(column_max_nonzeros(incidence_system(testing::fano(), 1.0)) == 3);
    CHECK(column_max_nonzeros(testing::zero_system(0, 3)) == 0);
  }

  TEST_CASE("construction drops zeros and validates") {
    const SparseSystem s = testing::dense_system({{1, 0, 2}, {0, 0, 3}}, {1, 2}, {1, 1});
    CHECK(s.nonzeros() == 3);
    CHECK(s.row_nonzeros(0) == 2);
    CHECK(s.row_nonzeros(1) == 1);
    CHECK(s.column(1).empty());

    const std::vector<Triplet> dup{{0, 0, 1.0}, {0, 0, 2.0}};
    CHECK_THROWS_AS(SparseSystem(1, 1, dup, {1}, {1}), InputError);
    const std::vector<Triplet> out{{1, 0, 1.0}};
    CHECK_THROWS_AS(SparseSystem(1, 1, out, {1}, {1}), InputError);
    const std::vector<Triplet> nan{{0, 0, std::nan("")}};
    CHECK_THROWS_AS(SparseSystem(1, 1, nan, {1}, {1}), InputError);
    CHECK_THROWS_AS(SparseSystem(1, 1, {}, {1}, {0.0}), InputError);
    CHECK_THROWS_AS(SparseSystem(1, 1, {}, {1, 2}, {1}), InputError);
  }

  TEST_CASE("probability vector") {
    CHECK_THROWS_AS(ProbabilityVector({0.5, 1.0}), InputError);
    CHECK_THROWS_AS(ProbabilityVector({0.0}), InputError);
    const ProbabilityVector p({0.5, 0.25});
    CHECK(p.odds()[0] == doctest::Approx(1.0));
    CHECK(p.odds()[1] == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("partial assignment conflicts") {
    PartialAssignment a;
    a.fix(2, true).fix(2, true);
    CHECK(a.size() == 1);
    CHECK_THROWS_AS(a.fix(2, false), InputError);
  }

  TEST_CASE("restrict examples") {
    const SparseSystem s = testing::dense_system({{1, 1}}, {1}, {1});
    PartialAssignment one;
    one.fix(1, true);
    const SparseSystem r1 = restrict(s, one);
    CHECK(r1.cols() == 1);
    CHECK(r1.dense() == std::vector<double>{1.0});
    CHECK(r1.beta()[0] == 0.0);

    PartialAssignment zero;
    zero.fix(1, false);
    const SparseSystem r0 = restrict(s, zero);
    CHECK(r0.dense() == std::vector<double>{1.0});
    CHECK(r0.beta()[0] == 1.0);

    PartialAssignment bad;
    bad.fix(5, true);
    CHECK_THROWS_AS(restrict(s, bad), InputError);
  }

  TEST_CASE("restrict keeps empty rows") {
    const SparseSystem s = testing::dense_system({{1, 0}, {0, 0}}, {1, 2}, {1, 3});
    PartialAssignment a;
    a.fix(0, true);
    const SparseSystem r = restrict(s, a);
    CHECK(r.rows() == 2);
    CHECK(r.beta()[1] == 2.0);
    CHECK(penalty_at_zero(r) == doctest::Approx(12.0));
  }

  TEST_CASE("hypergraph right-hand sides only shrink") {
    const SparseSystem s = incidence_system(testing::fano(), 1.0);
    for (std::size_t j = 0; j < s.cols(); ++j) {
      for (bool v : {false, true}) {
        PartialAssignment a;
        a.fix(j, v);
        const SparseSystem r = restrict(s, a);
        for (std::size_t i = 0; i < s.rows(); ++i) CHECK(r.beta()[i] <= s.beta()[i]);
      }
    }
  }

  TEST_CASE("penalty examples") {
    const SparseSystem s = testing::dense_system({{1, 1}}, {1}, {2});
    CHECK(penalty(s, Bits{1, 1}) == doctest::Approx(2.0));
    CHECK(penalty(s, Bits{1, 0}) == 0.0);
    CHECK_THROWS_AS(penalty(s, Bits{1}), InputError);
    CHECK_THROWS_AS(penalty(s, Bits{2, 0}), InputError);
    const SparseSystem k4 = incidence_system(testing::k4(), 1.0);
    CHECK(penalty(k4, Bits{1, 0, 0, 0, 0, 1}) == 0.0);
    CHECK(residuals(k4, Bits{0, 0, 0, 0, 0, 0}) == std::vector<double>(4, -1.0));
  }

  TEST_CASE("restrict commutes and preserves penalty (exhaustive, n = 6)") {
    std::mt19937_64 rng(11);
    RandomSystemSpec spec;
    spec.n = 6;
    spec.m = 3;
    for (int trial = 0; trial < 5; ++trial) {
      const SparseSystem s = random_system(spec, rng);
      for (std::size_t j1 = 0; j1 < 6; ++j1) {
        for (std::size_t j2 = 0; j2 < 6; ++j2) {
          if (j1 == j2) continue;
          for (int v1 = 0; v1 < 2; ++v1) {
            for (int v2 = 0; v2 < 2; ++v2) {
              PartialAssignment first;
              first.fix(j1, v1);
              PartialAssignment second;  // j2 re-indexed after removing j1
              second.fix(j2 > j1 ? j2 - 1 : j2, v2);
              PartialAssignment both;
              both.fix(j1, v1).fix(j2, v2);
              CHECK(same_system(restrict(restrict(s, first), second), restrict(s, both)));
            }
          }
        }
      }
      testing::for_each_cube_point(6, [&](const std::vector<int>& x) {
        for (std::size_t j = 0; j < 6; ++j) {
          PartialAssignment a;
          a.fix(j, x[j]);
          std::vector<int> rest = x;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
          CHECK(penalty(restrict(s, a), to_bits(rest)) == doctest::Approx(penalty(s, to_bits(x))).epsilon(1e-12));
        }
      });
    }
  }

  TEST_CASE("nonnegative restriction lowers beta") {
    std::mt19937_64 rng(5);
    RandomSystemSpec spec;
    spec.n = 6;
    spec.nonnegative = true;
    const SparseSystem s = random_system(spec, rng);
    PartialAssignment a;
    a.fix(0, true).fix(3, true).fix(4, false);
    const SparseSystem r = restrict(s, a);
    for (std::size_t i = 0; i < s.rows(); ++i) CHECK(r.beta()[i] <= s.beta()[i]);
    CHECK(free_indices(6, a) == std::vector<std::size_t>{1, 2, 5});
  }
}
