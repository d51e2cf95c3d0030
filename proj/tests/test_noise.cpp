#include <set>

#include "doctest.h"
#include "rnmf/noise.hpp"
#include "test_util.hpp"

using namespace rnmf;

namespace {

Dataset uniform_dataset(int height, int width, int samples, unsigned seed) {
  std::mt19937 gen(seed);
  Dataset ds;
  ds.height = height;
  ds.width = width;
  ds.X = rnmf::testing::random_matrix(static_cast<Index>(height) * width, samples, gen);
  ds.labels.assign(static_cast<std::size_t>(samples), 0);
  return ds;
}

// Outside the mask the data is bit-identical; inside, it holds `value`
// (or 0/1 for salt-and-pepper when value < 0).
void check_replacement(const Dataset& ds, const Corruption& c, double value) {
  for (Index j = 0; j < ds.X.cols(); ++j) {
    for (Index i = 0; i < ds.X.rows(); ++i) {
      if (c.mask(i, j) == 0.0) {
        REQUIRE(c.corrupted(i, j) == ds.X(i, j));
      } else {
        REQUIRE(c.mask(i, j) == 1.0);
        if (value >= 0.0) {
          REQUIRE(c.corrupted(i, j) == value);
        } else {
          REQUIRE((c.corrupted(i, j) == 0.0 || c.corrupted(i, j) == 1.0));
        }
      }
    }
  }
  CHECK(c.corrupted.minCoeff() >= 0.0);
  CHECK(c.corrupted.maxCoeff() <= 1.0);
}

}  // namespace

TEST_CASE("block occlusion on a 4x4 image") {
  const Dataset ds = uniform_dataset(4, 4, 6, 1);
  const Corruption c = add_block_occlusion(ds, NoiseSpec::block(2, 0.5, 3));
  for (Index j = 0; j < 6; ++j) {
    CHECK(c.mask.col(j).sum() == 4.0);
    // The four marked pixels form a 2x2 square.
    int top = 4, left = 4, bottom = -1, right = -1;
    for (int p = 0; p < 16; ++p) {
      if (c.mask(p, j) == 1.0) {
        top = std::min(top, p / 4), bottom = std::max(bottom, p / 4);
        left = std::min(left, p % 4), right = std::max(right, p % 4);
      }
    }
    CHECK(bottom - top == 1);
    CHECK(right - left == 1);
  }
  check_replacement(ds, c, 0.5);
}

TEST_CASE("block occlusion on ORL-sized images corrupts 100 pixels per column") {
  const Dataset ds = uniform_dataset(37, 30, 25, 2);
  const Corruption c = add_block_occlusion(ds, NoiseSpec::block(10, 0.5, 9));
  for (Index j = 0; j < ds.X.cols(); ++j) CHECK(c.mask.col(j).sum() == 100.0);
  check_replacement(ds, c, 0.5);
}

TEST_CASE("full-size block fills the whole column") {
  const Dataset ds = uniform_dataset(5, 5, 3, 3);
  const Corruption c = add_block_occlusion(ds, NoiseSpec::block(5, 0.25, 0));
  CHECK((c.corrupted.array() == 0.25).all());
  CHECK((c.mask.array() == 1.0).all());
}

TEST_CASE("block occlusion validates its spec") {
  const Dataset ds = uniform_dataset(6, 4, 2, 4);
  CHECK_THROWS_AS(add_block_occlusion(ds, NoiseSpec::block(5, 0.5, 0)), std::invalid_argument);
  CHECK_THROWS_AS(add_block_occlusion(ds, NoiseSpec::salt_pepper(0.1, 0.5, 0)), std::invalid_argument);
  CHECK_THROWS_AS(add_block_occlusion(ds, NoiseSpec::block(2, 1.5, 0)), std::invalid_argument);
}

TEST_CASE("block positions cover every valid corner") {
  const Dataset ds = uniform_dataset(4, 5, 400, 5);
  const Corruption c = add_block_occlusion(ds, NoiseSpec::block(3, 0.0, 12));
  std::set<int> corners;
  for (Index j = 0; j < ds.X.cols(); ++j) {
    for (int p = 0; p < 20; ++p) {
      if (c.mask(p, j) == 1.0) {
        corners.insert(p);
        break;
      }
    }
  }
  CHECK(corners.size() == 2 * 3);  // (4-3+1) x (5-3+1)
}

TEST_CASE("salt-and-pepper with zero fraction is the identity") {
  const Dataset ds = uniform_dataset(5, 6, 4, 6);
  const Corruption c = add_salt_pepper(ds, NoiseSpec::salt_pepper(0.0, 0.45, 1));
  CHECK(c.corrupted == ds.X);
  CHECK(c.mask.sum() == 0.0);
}

TEST_CASE("salt-and-pepper counts on an 1110-pixel column") {
  const Dataset ds = uniform_dataset(37, 30, 8, 7);
  const Corruption c = add_salt_pepper(ds, NoiseSpec::salt_pepper(0.4, 0.45, 2));
  for (Index j = 0; j < ds.X.cols(); ++j) {
    CHECK(c.mask.col(j).sum() == 444.0);
    int salt = 0, pepper = 0;
    for (Index i = 0; i < ds.X.rows(); ++i) {
      if (c.mask(i, j) == 1.0) (c.corrupted(i, j) == 1.0 ? salt : pepper)++;
    }
    CHECK(salt == 200);
    CHECK(pepper == 244);
  }
  check_replacement(ds, c, -1.0);
}

TEST_CASE("all-salt saturation") {
  const Dataset ds = uniform_dataset(3, 4, 5, 8);
  const Corruption c = add_salt_pepper(ds, NoiseSpec::salt_pepper(1.0, 1.0, 3));
  CHECK((c.corrupted.array() == 1.0).all());
}

TEST_CASE("noise models are deterministic and count-exact") {
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int round = 0; round < 40; ++round) {
    const int h = 3 + round % 7, w = 2 + round % 5;
    const Dataset ds = uniform_dataset(h, w, 1 + round % 6, static_cast<unsigned>(round));
    const NoiseSpec sp = NoiseSpec::salt_pepper(unit(gen), unit(gen), static_cast<std::uint64_t>(round));
    const Corruption a = add_salt_pepper(ds, sp);
    const Corruption b = add_salt_pepper(ds, sp);
    CHECK(a.corrupted == b.corrupted);
    CHECK(a.mask == b.mask);
    const double expected = static_cast<double>(std::lround(sp.fraction * h * w));
    CHECK(a.mask.sum() == expected * static_cast<double>(ds.samples()));
    check_replacement(ds, a, -1.0);

    const NoiseSpec bs = NoiseSpec::block(1 + round % std::min(h, w), unit(gen), static_cast<std::uint64_t>(round));
    const Corruption c = apply_noise(ds, bs);
    CHECK(c.corrupted == add_block_occlusion(ds, bs).corrupted);
    check_replacement(ds, c, bs.fill_value);
  }
}

TEST_CASE("noise kind names") {
  CHECK(parse_noise_kind("block") == NoiseKind::block_occlusion);
  CHECK(parse_noise_kind("salt_pepper") == NoiseKind::salt_pepper);
  CHECK(parse_noise_kind("none") == NoiseKind::none);
  CHECK_THROWS_AS(parse_noise_kind("gaussian"), std::invalid_argument);
  const Dataset ds = uniform_dataset(3, 3, 2, 10);
  CHECK(apply_noise(ds, NoiseSpec::none()).corrupted == ds.X);
}
