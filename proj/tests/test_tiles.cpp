#include <doctest.h>

#include <cmath>
#include <random>

#include "bslab/tiles.hpp"
#include "oracle_helpers.hpp"

using namespace bslab;
using namespace bslab::testing;

namespace {

NormalForm nf(const std::string& text, const GroupParams& P) {
  return reduce(parse_word(text), P);
}

}  // namespace

TEST_CASE("standard tile corners are exact") {
  const GroupParams P(2, 3);
  const GridTileStd unit = tile_corners_std(0, 0, P);
  CHECK(unit.x0 == 0);
  CHECK(unit.x1 == 1);

  const GridTileStd t11 = tile_corners_std(1, 1, P);
  CHECK(t11.x0 == make_rational(3, 2));
  CHECK(t11.x1 == Rational(3));

  const GridTileStd below = tile_corners_std(0, -1, P);
  CHECK(below.x0 == 0);
  CHECK(below.x1 == make_rational(2, 3));

  // Shared edges: right edge of (a,b) equals left edge of (a+1,b), exactly.
  for (long b : {-2L, 0L, 3L})
    for (long long a : {0LL, 1LL, 7LL})
      CHECK(tile_corners_std(a, b, P).x1 == tile_corners_std(a + 1, b, P).x0);
}

TEST_CASE("compressed corners match the extended-precision reference") {
  for (const GroupParams P : {GroupParams(2, 3), GroupParams(1, 2)}) {
    CHECK(tile_corners_compressed(0, 0, P).x0 == 0.0);
    for (long b = 0; b <= 10; ++b) {
      for (long long a = 0; a <= 21; ++a) {
        const double got = loglog_grid(a, b, P);
        const long double ref = loglog_grid_ref(a, b, P);
        CHECK(std::abs(got - static_cast<double>(ref)) < 1e-12);
      }
    }
    // Large-b path switches to the log domain and stays finite and close.
    const double far = loglog_grid(5, 5000, P);
    CHECK(std::isfinite(far));
    CHECK(std::abs(far - static_cast<double>(loglog_grid_ref(5, 5000, P))) <
          1e-9);
  }
}

TEST_CASE("theta on grid tiles") {
  const GroupParams P(2, 3);
  CHECK(theta_ab(0, 0, P) == doctest::Approx(1.5707963267948966));
  const double expected =
      std::atan(1.0 / std::log(std::log(1.0 + std::exp(1.0))));
  CHECK(theta_ab(1, 0, P) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(theta_ab(-1, 0, P), std::invalid_argument);

  // The bounding angle dominates sampled corner-pair angles of the tile.
  for (long b : {0L, 2L, 7L}) {
    for (long long a : {0LL, 3LL, 50LL}) {
      const GridTileCompressed tile = tile_corners_compressed(a, b, P);
      const double bound = theta_ab(a, b, P);
      const double corners_x[2] = {tile.x0, tile.x1};
      const double corners_y[2] = {static_cast<double>(b),
                                   static_cast<double>(b) + 1.0};
      double widest = 0.0;
      for (double x1 : corners_x)
        for (double y1 : corners_y)
          for (double x2 : corners_x)
            for (double y2 : corners_y) {
              if (x1 == 0.0 && y1 == 0.0) continue;
              if (x2 == 0.0 && y2 == 0.0) continue;
              widest = std::max(
                  widest, std::abs(std::atan2(y1, x1) - std::atan2(y2, x2)));
            }
      CHECK(widest <= bound + 1e-12);
    }
  }
}

TEST_CASE("key quantity") {
  const GroupParams P(2, 3);
  CHECK(key_quantity(5, 0, P) == 0.0);
  CHECK_THROWS_AS(key_quantity(0, 0, P), std::invalid_argument);

  SUBCASE("decay in a at fixed height") {
    double prev = key_quantity(10, 3, P);
    for (long long a = 100; a <= 1'000'000; a *= 10) {
      const double cur = key_quantity(a, 3, P);
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev < 1e-6);
  }

  SUBCASE("decay on the axis") {
    const double k10 = key_quantity(0, 10, P);
    const double k20 = key_quantity(0, 20, P);
    const double k40 = key_quantity(0, 40, P);
    CHECK(k10 > k20);
    CHECK(k20 > k40);
    // ~ b log b / (b^2 + b)
    CHECK(k20 ==
          doctest::Approx(20.0 * loglog_grid(1, 20, P) / (400.0 + 20.0)));
  }

  SUBCASE("tan(theta) decomposes into (#) plus the q-term") {
    for (long b : {1L, 4L, 16L, 64L}) {
      for (long long a : {0LL, 1LL, 9LL, 1000LL}) {
        const double p = loglog_grid(a, b, P);
        const double q = loglog_grid(a + 1, b, P);
        const double bd = static_cast<double>(b);
        const double denom = p * q + bd * bd + bd;
        const double lhs = std::tan(theta_ab(a, b, P));
        const double rhs = key_quantity(a, b, P) + q / denom;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("theta decays along the geometric regime schedules") {
  // Axis, fixed-a and diagonal schedules all decrease strictly; fixed-height
  // rows are the slow regime (theta only decays at loglog speed there, and
  // for b >= 1 it is not even monotone at these scales).
  for (const GroupParams P : {GroupParams(2, 3), GroupParams(1, 2)}) {
    double prev = 4.0;
    for (long b = 1; b <= 64; b *= 2) {  // a = 0 column
      const double theta = theta_ab(0, b, P);
      CHECK(theta < prev);
      prev = theta;
    }
    for (long long a : {1LL, 5LL}) {  // fixed a, growing b
      prev = 4.0;
      for (long b = 1; b <= 64; b *= 2) {
        const double theta = theta_ab(a, b, P);
        CHECK(theta < prev);
        prev = theta;
      }
      CHECK(prev < 0.01);
    }
    prev = 4.0;
    for (long b = 1; b <= 64; b *= 2) {  // diagonal
      const double theta = theta_ab(b, b, P);
      CHECK(theta < prev);
      prev = theta;
    }
    CHECK(prev < 0.01);
    prev = 4.0;
    for (long long a = 1; a <= 1'000'000; a *= 10) {  // bottom row
      const double theta = theta_ab(a, 0, P);
      CHECK(theta < prev);
      prev = theta;
    }
  }
}

TEST_CASE("angle report rows bundle the sweep columns") {
  const GroupParams P(2, 3);
  const AngleReport row = angle_report(7, 3, P);
  CHECK(row.p == loglog_grid(7, 3, P));
  CHECK(row.q == loglog_grid(8, 3, P));
  CHECK(row.theta == theta_ab(7, 3, P));
  CHECK(row.key_quantity == key_quantity(7, 3, P));
  CHECK(row.r_min == doctest::Approx(std::hypot(row.p, 3.0)));
}

TEST_CASE("find_N behavior") {
  const GroupParams P(2, 3);

  SUBCASE("eps = pi accepts everything") {
    const FindNResult r = find_N(3.1415926535897932, P, {200, 20});
    CHECK(r.N == 0.0);
    CHECK(r.violating_tiles == 0);
    CHECK(r.beyond_violations == 0);
    CHECK(r.status == SweepStatus::conclusive);
  }

  SUBCASE("agrees with a direct scan on a small grid") {
    const FindNBounds bounds{500, 30};
    const double eps = 0.1;
    const FindNResult r = find_N(eps, P, bounds);
    double n_ref = 0.0;
    std::uint64_t violating = 0;
    for (long b = 0; b <= bounds.b_max; ++b)
      for (long long a = 0; a <= bounds.a_max; ++a) {
        if (theta_ab(a, b, P) >= eps) {
          ++violating;
          n_ref = std::max(
              n_ref, std::hypot(loglog_grid(a, b, P), static_cast<double>(b)));
        }
      }
    CHECK(r.N == doctest::Approx(n_ref));
    CHECK(r.violating_tiles == violating);
    CHECK(r.beyond_violations == 0);
  }

  SUBCASE("monotone in eps") {
    const FindNBounds bounds{2000, 40};
    CHECK(find_N(0.01, P, bounds).N >= find_N(0.1, P, bounds).N);
  }

  SUBCASE("grid too small to certify anything is inconclusive") {
    const FindNResult r = find_N(1e-4, P, {3, 2});
    CHECK(r.status == SweepStatus::inconclusive);
  }
}

TEST_CASE("tiles of group elements") {
  const GroupParams P(2, 3);

  SUBCASE("identity tile is the compressed unit square") {
    const Tile tile = tile_of(NormalForm(P));
    CHECK(tile.x0 == 0.0);
    CHECK(tile.x1 == doctest::Approx(compress(1.0)));
    CHECK(tile.d_lo == 0.0);
    CHECK(tile.b_signed == 0);
    CHECK(tile.samples.size() >= 16);
    CHECK(tile.std_x0 == 0);
    CHECK(tile.std_x1 == 1);
  }

  SUBCASE("powers of t reproduce grid tiles") {
    for (int b : {1, 2, 3}) {
      NormalForm g(P);
      for (int i = 0; i < b; ++i) g = multiply(g, nf("t", P));
      const Tile tile = tile_of(g);
      const GridTileCompressed grid = tile_corners_compressed(0, b, P);
      CHECK(tile.x0 == doctest::Approx(grid.x0).epsilon(1e-12));
      CHECK(tile.x1 == doctest::Approx(grid.x1).epsilon(1e-12));
      CHECK(tile.d_lo == static_cast<double>(b));
      CHECK(tile.b_signed == b);
    }
  }

  SUBCASE("s shifts the pre-compression tile by 1/n") {
    const NormalForm g = nf("t t", P);
    const Tile base = tile_of(g);
    const Tile shifted = tile_of(multiply(nf("s", P), g));
    CHECK(shifted.std_x0 - base.std_x0 == make_rational(1, 3));
    CHECK(shifted.std_x1 - base.std_x1 == make_rational(1, 3));
  }

  SUBCASE("negative heights live below the axis") {
    const Tile tile = tile_of(nf("T", P));
    CHECK(tile.b_signed == -1);
    CHECK(tile.d_lo == 0.0);  // the edge endpoint v0 is the near one
  }
}

TEST_CASE("angular diameter") {
  const GroupParams P(2, 3);
  const Tile first = tile_of(NormalForm(P));
  CHECK(angular_diameter(first) == doctest::Approx(1.5707963267948966));

  // Bounded by theta_ab for grid tiles realized as t^b translates with
  // horizontal s-shifts.
  const Tile far = tile_of(multiply(nf("s^4", P), nf("ttt", P)));
  CHECK(std::isfinite(angular_diameter(far)));

  // A genuinely distant grid tile subtends almost nothing.
  CHECK(theta_ab(100000, 40, P) < 0.05);

  const Tile across = tile_of(nf("S", P));  // x-range straddles the origin
  CHECK(across.std_x0 < 0);
  CHECK(across.std_x1 > 0);
  CHECK_THROWS_AS(angular_diameter(across), std::domain_error);
}

TEST_CASE("fits_in_U criterion") {
  const GroupParams P(2, 3);

  SUBCASE("near tiles never fit") {
    CHECK_FALSE(fits_in_U(tile_of(NormalForm(P)), 0.05));
    CHECK_FALSE(fits_in_U(tile_of(nf("t", P)), 0.05));
  }

  SUBCASE("far grid tiles fit for moderate delta") {
    // Row b = 60 clears 1/delta = 20 and subtends under eta(delta).
    const double delta = 0.05;
    const double eta = std::acos(1.0 - 0.5 * std::pow(delta, 4));
    for (long long a : {1LL, 100LL, 100000LL}) {
      const GridTileCompressed grid = tile_corners_compressed(a, 60, P);
      Tile tile{grid.x0,        grid.x1,     60.0,
                TreeVertex::base(P), EndStep{1, 0}, 60,
                Rational(0),    Rational(0), {}};
      for (int i = 0; i <= 4; ++i) {
        const double x = grid.x0 + (grid.x1 - grid.x0) * i / 4.0;
        tile.samples.emplace_back(x, 60.0);
        tile.samples.emplace_back(x, 61.0);
      }
      CHECK(theta_ab(a, 60, P) < eta);
      CHECK(fits_in_U(tile, delta));
    }
  }

  SUBCASE("monotone under shrinking the sample set") {
    Tile tile = tile_of(multiply(nf("s^3", P), nf("tt", P)));
    const double delta = 0.8;
    if (fits_in_U(tile, delta)) {
      Tile sub = tile;
      sub.samples.resize(sub.samples.size() / 2);
      CHECK(fits_in_U(sub, delta));
    }
  }
}

TEST_CASE("nullity sweep partitions the ball") {
  const GroupParams P(2, 3);
  NullityOptions options;
  options.grid = FindNBounds{2000, 40};

  const NullityReport r0 = nullity_sweep(0, 0.5, P, options);
  CHECK(r0.fits + r0.near == 1);
  CHECK(r0.near == 1);  // the fundamental tile touches the base point
  CHECK(r0.far_failures.empty());

  const NullityReport r = nullity_sweep(3, 0.9, P, options);
  CHECK(r.fits + r.near == ball(3, P).size());
  CHECK(r.far_failures.empty());
  CHECK(r.eta == doctest::Approx(std::acos(1.0 - 0.5 * std::pow(0.9, 4))));
  // Failure set stays within the documented radius.
  for (const NormalForm& g : ball(3, P)) {
    const Tile tile = tile_of(g);
    if (!fits_in_U(tile, 0.9)) CHECK(tile.r_min() <= r.near_radius);
  }
}

TEST_CASE("cover margin estimates") {
  const GroupParams P(2, 3);
  CoverSampling sampling;
  sampling.theta_samples = 9;
  sampling.ends_per_theta = 4;

  SUBCASE("fine net of equal neighborhoods yields eps0/2") {
    const double eps0 = 0.25;
    std::vector<CoverElement> cover;
    cover.push_back(BallSpec{100.0});
    const std::vector<TreeEnd> ends = {TreeEnd::tau_plus(P),
                                       TreeEnd::tau_minus(P)};
    // Build centers on a net finer than the sample net, over several ends.
    std::mt19937 rng(sampling.seed);
    for (int i = 0; i <= 64; ++i) {
      const double theta = 3.14159265358979324 * i / 64.0;
      for (const TreeEnd& e : ends)
        cover.push_back(
            BasicNbhdSpec{BoundaryPoint::of(theta, e), 1.0 / eps0, eps0});
    }
    // Random sampled ends may diverge from the net's sheets, so also give
    // every sampled end its own neighborhoods.
    sampling.ends_per_theta = 2;  // restrict samples to tau+ and tau-
    const double delta = cover_delta(cover, P, sampling);
    CHECK(delta > 0.0);
    CHECK(delta <= 0.5 * eps0 + 1e-9);
    CHECK(delta > 0.25 * eps0);
  }

  SUBCASE("single huge neighborhood hits the bisection ceiling") {
    std::vector<CoverElement> cover;
    cover.push_back(
        BasicNbhdSpec{BoundaryPoint::pole_R(P), 0.01, 1000.0});
    sampling.ends_per_theta = 2;
    const double delta = cover_delta(cover, P, sampling);
    CHECK(delta == doctest::Approx(0.5 * kCoverEpsCeiling));
  }

  SUBCASE("two-element split cover has positive margin") {
    std::vector<CoverElement> cover;
    cover.push_back(BasicNbhdSpec{BoundaryPoint::pole_R(P), 0.5, 2.9});
    cover.push_back(BasicNbhdSpec{BoundaryPoint::pole_L(P), 0.5, 2.9});
    sampling.ends_per_theta = 2;
    const double delta = cover_delta(cover, P, sampling);
    CHECK(delta > 0.0);
  }

  SUBCASE("uncovered samples are an error") {
    std::vector<CoverElement> cover;
    cover.push_back(
        BasicNbhdSpec{BoundaryPoint::pole_R(P), 2.0, 0.001});
    sampling.ends_per_theta = 2;
    CHECK_THROWS_AS(cover_delta(cover, P, sampling), cover_violation);
  }
}
