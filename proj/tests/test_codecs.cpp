#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "jscc/codecs/fractal.hpp"
#include "jscc/codecs/hybrid.hpp"
#include "jscc/codecs/normalization.hpp"
#include "jscc/codecs/repetition.hpp"
#include "jscc/codecs/shift_map.hpp"
#include "jscc/codecs/unbounded.hpp"
#include "jscc/errors.hpp"

using namespace jscc;

namespace {

std::vector<double> enc(const Codec& c, double x) {
  std::vector<double> s(static_cast<std::size_t>(c.channel_dimension()));
  c.encode(x, s);
  return s;
}

double dec(const Codec& c, const std::vector<double>& y, double sigma = 0.0) {
  return c.decode(y, DecodeContext{sigma});
}

double sqdist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

// Noisy channel outputs around random codewords, with noise levels spread
// over several decades so every digit depth sees errors.
std::vector<double> noisy_output(const Codec& c, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> src(-0.5, 0.5);
  std::uniform_real_distribution<double> level(-4.0, -0.5);
  std::normal_distribution<double> noise(0.0, 1.0);
  auto y = enc(c, src(gen));
  const double sigma = std::pow(10.0, level(gen));
  for (double& v : y) v += sigma * noise(gen);
  return y;
}

// Brute-force nearest over all digit patterns with the given weights; ties
// go to the lexicographically smallest pattern (first digit most significant).
std::uint64_t brute_nearest(const std::vector<double>& weights, double r) {
  const std::size_t m = weights.size();
  std::uint64_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << m); ++p) {
    double v = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if ((p >> (m - 1 - j)) & 1U) v += weights[j];
    }
    const double d = std::fabs(r - v);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

CodecSpec spec_of(const char* text) { return parse_codec_spec(text); }

void check_round_trip(const Codec& c, double floor, int count = 100000) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> src(-0.5, 0.5);
  for (int i = 0; i < count; ++i) {
    const double x = src(gen);
    const double xh = dec(c, enc(c, x));
    REQUIRE(std::fabs(xh - x) <= floor);
    REQUIRE(xh >= -0.5);
    REQUIRE(xh <= 0.5);
  }
}

}  // namespace

TEST_CASE("repetition encode and decode") {
  RepetitionCodec c(spec_of("repetition:N=3"));
  CHECK(enc(c, 0.25) == std::vector<double>{0.25, 0.25, 0.25});
  CHECK(dec(c, {0.1, 0.2, 0.3}) == doctest::Approx(0.2));
  CHECK(dec(c, {2.0, 2.0, 2.0}) == 0.5);
  CHECK(dec(c, {-2.0, -1.0, -3.0}) == -0.5);
  check_round_trip(c, 1e-12);
}

TEST_CASE("shift map encode examples") {
  ShiftMapCodec c(spec_of("shift_map:N=3,a=2"));
  auto s = enc(c, 0.0);
  CHECK(s[0] == 0.5);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);
  s = enc(c, -0.25);
  CHECK(s == std::vector<double>{0.25, 0.5, 0.0});
  CHECK(c.segment_count() == 4);

  ShiftMapCodec het(spec_of("shift_map:N=3,b=2/3"));
  s = enc(het, -0.5 + 0.3);
  CHECK(s[1] == doctest::Approx(0.6));
  CHECK(s[2] == doctest::Approx(0.8));
  CHECK(het.segment_count() == 6);
}

TEST_CASE("shift map wrapped labeling") {
  ShiftMapCodec c(spec_of("shift_map:N=2,a=3,labeling=wrapped"));
  CHECK(enc(c, 0.2)[0] == doctest::Approx(0.2));
  CHECK(enc(c, -0.2)[0] == doctest::Approx(0.8));
  CHECK(enc(c, -0.2)[1] == doctest::Approx(0.4));
  check_round_trip(c, 1e-12);
}

TEST_CASE("shift map round trip and range") {
  for (const char* text : {"shift_map:N=2,a=2", "shift_map:N=3,a=3", "shift_map:N=4,a=5",
                           "shift_map:N=2,a=33"}) {
    ShiftMapCodec c(spec_of(text));
    check_round_trip(c, 1e-12, 20000);
  }
}

TEST_CASE("shift map capacity cap") {
  CHECK_THROWS_AS(ShiftMapCodec(spec_of("shift_map:N=3,a=1025")), CapacityError);
  CHECK_NOTHROW(ShiftMapCodec(spec_of("shift_map:N=3,a=1024")));
  CHECK_THROWS_AS(parse_codec_spec("shift_map:N=3,a=1"), ParameterError);
}

TEST_CASE("shift map decoder matches a dense brute-force search") {
  for (const char* text : {"shift_map:N=3,a=2", "shift_map:N=3,a=3"}) {
    ShiftMapCodec c(spec_of(text));
    const int grid = 1000000;
    std::vector<double> table(static_cast<std::size_t>(grid) * 3);
    for (int g = 0; g < grid; ++g) {
      const double x = -0.5 + (g + 0.5) / grid;
      c.encode(x, std::span<double>(table.data() + 3 * g, 3));
    }
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
      const auto y = noisy_output(c, gen);
      double brute = std::numeric_limits<double>::infinity();
      for (int g = 0; g < grid; ++g) {
        double d = 0.0;
        for (int i = 0; i < 3; ++i) d += (y[i] - table[3 * g + i]) * (y[i] - table[3 * g + i]);
        brute = std::min(brute, d);
      }
      // The decoder works on closed segments, so its answer may be a segment
      // end; compare against the map on both sides of x.
      const double xh = dec(c, y);
      double got = std::numeric_limits<double>::infinity();
      for (double probe : {xh - 1e-12, xh, xh + 1e-12}) {
        got = std::min(got, sqdist(y, enc(c, std::clamp(probe, -0.5, 0.5 - 1e-16))));
      }
      REQUIRE(got <= brute + 1e-9);
    }
  }
}

TEST_CASE("optimal stretch rule") {
  const auto r = shiftmap_optimal_a(1e-3, 2);
  CHECK(r.a == 33);
  CHECK_FALSE(r.clamped);
  const auto big = shiftmap_optimal_a(0.2, 2);
  CHECK(big.a == 2);
  CHECK(big.clamped);
  int prev = std::numeric_limits<int>::max();
  for (int i = 0; i <= 400; ++i) {
    const double sigma = std::pow(10.0, -6.0 + 4.0 * i / 400.0);
    const int a = shiftmap_optimal_a(sigma, 3).a;
    REQUIRE(a <= prev);
    prev = a;
  }
}

TEST_CASE("spherical encode examples") {
  SphericalCodec c(spec_of("spherical:N=2,a=2"));
  auto s = enc(c, -0.5);
  CHECK(s[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s[2] == 0.0);
  CHECK(s[3] == 0.0);
  s = enc(c, 0.0);
  const double r = 1 / std::sqrt(2.0);
  CHECK(s[0] == doctest::Approx(-r));
  CHECK(s[1] == doctest::Approx(r));
  CHECK(std::fabs(s[2]) < 1e-15);
  CHECK(std::fabs(s[3]) < 1e-15);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> src(-0.5, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = enc(c, src(gen));
    double norm = 0.0;
    for (double u : v) norm += u * u;
    REQUIRE(norm == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(c.grid_size() == 1024);
  CHECK(SphericalCodec(spec_of("spherical:N=3,a=8")).grid_size() == 2048);
}

TEST_CASE("spherical round trip") {
  SphericalCodec c(spec_of("spherical:N=2,a=4"));
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> src(-0.5, 0.5);
  for (int i = 0; i < 100000; ++i) {
    const double x = src(gen);
    const double xh = dec(c, enc(c, x));
    REQUIRE(xh >= -0.5);
    REQUIRE(xh < 0.5);
    // Distance on the circle: x = -1/2 and x -> 1/2 are the same codeword.
    const double d = std::fabs(xh - x);
    REQUIRE(std::min(d, 1.0 - d) <= 1e-9);
  }
}

TEST_CASE("spherical decoder matches a denser grid") {
  for (const char* text : {"spherical:N=2,a=3", "spherical:N=3,a=2"}) {
    SphericalCodec c(spec_of(text));
    const int dense = 10 * c.grid_size();
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto y = noisy_output(c, gen);
      double brute = std::numeric_limits<double>::infinity();
      for (int g = 0; g < dense; ++g) {
        brute = std::min(brute, sqdist(y, enc(c, -0.5 + static_cast<double>(g) / dense)));
      }
      const double xh = dec(c, y);
      REQUIRE(xh >= -0.5);
      REQUIRE(xh < 0.5);
      REQUIRE(sqdist(y, enc(c, xh)) <= brute + 1e-12);
    }
  }
}

TEST_CASE("scheme1 encode examples") {
  Scheme1Codec c(spec_of("scheme1:N=2,alpha=4"));
  CHECK(enc(c, -0.5) == std::vector<double>{0.0, 0.0});
  auto s = enc(c, 1.0 / 6.0);
  CHECK(s[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(s[1] == 0.0);
  s = enc(c, 0.0);
  CHECK(s[0] == 0.25);
  CHECK(s[1] == 0.0);
  CHECK_THROWS_AS(parse_codec_spec("scheme1:N=2,alpha=2"), ParameterError);
}

TEST_CASE("scheme1 round trip") {
  for (const char* text : {"scheme1:N=2,alpha=3", "scheme1:N=3,alpha=4", "scheme1:N=4,alpha=2.5"}) {
    Scheme1Codec c(spec_of(text));
    check_round_trip(c, std::ldexp(1.0, -(c.spec().precision - c.spec().n)));
  }
}

TEST_CASE("scheme1 greedy equals exhaustive nearest point") {
  for (double alpha : {3.0, 4.0}) {
    for (int n : {2, 4}) {
      CodecSpec spec;
      spec.scheme = Scheme::scheme1;
      spec.n = n;
      spec.alpha = alpha;
      spec.precision = 12 * n;
      Scheme1Codec c(spec);
      std::vector<double> weights;
      for (int d = 1; d <= 12; ++d) weights.push_back(std::pow(alpha, -d));
      std::mt19937_64 gen(static_cast<std::uint64_t>(n * 10 + alpha));
      for (int trial = 0; trial < 10000; ++trial) {
        const auto y = noisy_output(c, gen);
        const auto words = c.decode_digits(y);
        for (int dim = 0; dim < n; ++dim) {
          REQUIRE(c.digit_decoder(dim).size() == 12);
          REQUIRE(words[dim] == brute_nearest(weights, y[dim]));
        }
      }
    }
  }
}

TEST_CASE("scheme1 digit separation") {
  // Streams first differing at depth d stay more than (alpha-2) alpha^-(d+1) apart.
  for (double alpha : {2.5, 3.0, 4.0}) {
    Scheme1Codec c(spec_of(alpha == 2.5 ? "scheme1:N=2,alpha=2.5"
                                        : (alpha == 3.0 ? "scheme1:N=2,alpha=3" : "scheme1:N=2,alpha=4")));
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> src(-0.5, 0.5);
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000000 / 3; ++trial) {
      const double x = src(gen);
      const auto bits = to_bits(x, 48);
      const int dim = static_cast<int>(gen() % 2);
      const int depth = 1 + static_cast<int>(gen() % 20);
      // Copy the prefix, flip digit `depth` of dimension `dim`, randomize the rest.
      const int flip = (depth - 1) * 2 + dim + 1;
      std::uint64_t m = bits.mantissa();
      const std::uint64_t keep = ~((std::uint64_t{1} << (48 - flip + 1)) - 1) & ((std::uint64_t{1} << 48) - 1);
      std::uint64_t other = (m & keep) | (gen() & ((std::uint64_t{1} << (48 - flip)) - 1));
      other ^= std::uint64_t{1} << (48 - flip);
      other = (other & ~(std::uint64_t{1} << (48 - flip))) |
              ((~m) & (std::uint64_t{1} << (48 - flip)));
      const double x2 = from_bits(FixedPointSample(other, 48), false);
      const double gap = std::fabs(enc(c, x)[dim] - enc(c, x2)[dim]);
      const double bound = (alpha - 2.0) * std::pow(alpha, -(depth + 1));
      worst_ratio = std::min(worst_ratio, gap / bound);
    }
    CHECK(worst_ratio > 0.99);
  }
}

TEST_CASE("scheme1 prefix survives noise inside the separation margin") {
  Scheme1Codec c(spec_of("scheme1:N=2,alpha=4,P=16"));
  const double margin = 0.999 * (4.0 - 2.0) * std::pow(4.0, -(8 + 1)) / 2.0;
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> src(-0.5, 0.5);
  for (int trial = 0; trial < 20000; ++trial) {
    const double x = src(gen);
    auto y = enc(c, x);
    for (double& v : y) v += (gen() & 1U) ? margin : -margin;
    REQUIRE(to_bits(dec(c, y), 16) == to_bits(x, 16));
  }
}

TEST_CASE("scheme2 layout example") {
  const auto groups = scheme2_layout(2, 5, GroupingVariant::standard);
  REQUIRE(groups.size() == 5);
  CHECK(groups[0].dimension == 0);
  CHECK(groups[0].source_begin == 1);
  CHECK(groups[1].dimension == 1);
  CHECK(groups[1].source_begin == 2);
  CHECK(groups[1].size == 2);
  CHECK(groups[2].source_begin == 4);
  CHECK(groups[2].digit_begin == 3);
  CHECK(groups[3].source_begin == 7);
  CHECK(groups[3].digit_begin == 4);
  CHECK(groups[4].source_begin == 11);
  CHECK(groups[4].digit_begin == 7);
  for (int n : {2, 3, 4, 6}) {
    const auto g = scheme2_layout(n, n, GroupingVariant::standard);
    int bits = 0;
    for (const auto& grp : g) bits += grp.size;
    CHECK(bits == n * (n + 1) / 2);
  }
}

TEST_CASE("scheme2 layout partitions the source bits") {
  for (auto variant : {GroupingVariant::standard, GroupingVariant::shifted}) {
    for (int n : {2, 3, 4}) {
      DigitLayout layout(n, 48, variant);
      std::vector<int> seen(49, 0);
      for (int dim = 0; dim < n; ++dim) {
        for (const auto& slot : layout.slots(dim)) seen[slot.source_bit]++;
      }
      for (int b = 1; b <= 48; ++b) REQUIRE(seen[b] == 1);
    }
  }
}

TEST_CASE("shifted grouping sizes") {
  // l' = i + k (N - 1) for group l = kN + i.
  CHECK(group_size(1, 3, GroupingVariant::shifted) == 1);
  CHECK(group_size(3, 3, GroupingVariant::shifted) == 3);
  CHECK(group_size(4, 3, GroupingVariant::shifted) == 3);
  CHECK(group_size(6, 3, GroupingVariant::shifted) == 5);
  CHECK(group_size(7, 3, GroupingVariant::shifted) == 5);
}

TEST_CASE("scheme2 encode examples") {
  Scheme2Codec c(spec_of("scheme2:N=2,P=15"));
  CHECK(enc(c, -0.5) == std::vector<double>{0.0, 0.0});
  // Only b1 set: dimension 1 gets 0.1 in binary.
  auto s = enc(c, 0.0);
  CHECK(s == std::vector<double>{0.5, 0.0});
  // b4 (2^-4 of x + 1/2) lands on digit 3 of dimension 1.
  s = enc(c, -0.5 + 0.0625);
  CHECK(s == std::vector<double>{0.125, 0.0});
  // b2 b3 land on digits 1, 2 of dimension 2.
  s = enc(c, -0.5 + 0.25 + 0.125);
  CHECK(s == std::vector<double>{0.0, 0.75});
}

TEST_CASE("scheme2 round trip") {
  for (const char* text : {"scheme2:N=2", "scheme2:N=3", "scheme2:N=4,P=62",
                           "scheme2:N=3,variant=shifted"}) {
    Scheme2Codec c(spec_of(text));
    check_round_trip(c, std::ldexp(1.0, -(c.spec().precision - 2 * c.spec().n)));
  }
}

TEST_CASE("scheme2 greedy equals exhaustive nearest point") {
  for (int n : {2, 4}) {
    CodecSpec spec;
    spec.scheme = Scheme::scheme2;
    spec.n = n;
    spec.precision = n == 2 ? 15 : 28;
    Scheme2Codec c(spec);
    std::mt19937_64 gen(static_cast<std::uint64_t>(n));
    for (int dim = 0; dim < n; ++dim) REQUIRE(c.layout().depth(dim) <= 12);
    for (int trial = 0; trial < 10000; ++trial) {
      const auto y = noisy_output(c, gen);
      const auto words = c.decode_digits(y);
      for (int dim = 0; dim < n; ++dim) {
        // Free positions from the group rule, computed independently.
        std::vector<double> weights;
        int next = 1;
        int cursor[8] = {1, 1, 1, 1, 1, 1, 1, 1};
        for (int l = 1; next <= spec.precision; ++l) {
          const int size = std::min(l, spec.precision - next + 1);
          const int d = (l - 1) % n;
          for (int j = 0; j < size; ++j) {
            if (d == dim) weights.push_back(std::ldexp(1.0, -(cursor[d] + j)));
          }
          cursor[d] += size + 1;
          next += size;
        }
        REQUIRE(words[dim] == brute_nearest(weights, y[dim]));
      }
    }
  }
}

TEST_CASE("type1 weights and example") {
  const auto w = type_weights(2);
  CHECK(w == std::vector<double>{0.75, 0.25});
  Type1Codec c(spec_of("type1:N=2,k=2"));
  auto s = enc(c, 0.3);
  CHECK(s[0] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(-0.2).epsilon(1e-12));
  std::vector<double> raw(2);
  c.encode_raw(0.3, raw);
  CHECK(raw[0] == 0.75);
  CHECK(raw[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("type1 raw range") {
  for (int n : {2, 4}) {
    for (int k = 2; k <= 8; ++k) {
      CodecSpec spec;
      spec.scheme = Scheme::type1;
      spec.n = n;
      spec.k = k;
      Type1Codec c(spec);
      std::vector<double> raw(static_cast<std::size_t>(n));
      CounterRng rng(derive_stream_key(21, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
      for (int i = 0; i < 1000000; ++i) {
        c.encode_raw(draw_uniform(rng), raw);
        for (double v : raw) {
          REQUIRE(v >= 0.0);
          REQUIRE(v < 2.0);
        }
      }
    }
  }
}

TEST_CASE("type1 round trip is exact to float precision") {
  for (const char* text : {"type1:N=2,k=2", "type1:N=3,k=4", "type1:N=4,k=3"}) {
    Type1Codec c(spec_of(text));
    check_round_trip(c, 1e-13);
  }
}

TEST_CASE("type1 decoder is the nearest point of each coordinate") {
  for (int k : {2, 3, 5, 7}) {
    CodecSpec spec;
    spec.scheme = Scheme::type1;
    spec.n = 2;
    spec.k = k;
    Type1Codec c(spec);
    const auto w = type_weights(k);
    const double width = std::ldexp(1.0, -k - 1);
    std::mt19937_64 gen(static_cast<std::uint64_t>(k));
    for (int trial = 0; trial < 5000; ++trial) {
      const auto y = noisy_output(c, gen);
      const auto yh = enc(c, dec(c, y));
      // Digital coordinate: nearest of the 2^k sums.
      double best = std::numeric_limits<double>::infinity();
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << k); ++p) {
        double v = -1.0;
        for (int i = 0; i < k; ++i) {
          if ((p >> (k - 1 - i)) & 1U) v += w[i];
        }
        best = std::min(best, std::fabs(y[0] - v));
      }
      REQUIRE(std::fabs(y[0] - yh[0]) == doctest::Approx(best).epsilon(1e-12));
      // Last coordinate: nearest of the 2^(k-1) segments.
      best = std::numeric_limits<double>::infinity();
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << (k - 1)); ++p) {
        double v = -1.0;
        for (int i = 0; i < k - 1; ++i) {
          if ((p >> (k - 2 - i)) & 1U) v += w[i];
        }
        best = std::min(best, std::max({0.0, v - y[1], y[1] - v - width}));
      }
      REQUIRE(std::fabs(y[1] - yh[1]) <= best + 1e-12);
    }
  }
}

TEST_CASE("type weights are distinct only up to k = 4") {
  // Weighted sums stay distinct for k <= 4; from k = 5 on, some patterns
  // coincide (for k = 5: w1 = w2 + w3 + w4), so those levels cannot be
  // decoded without loss even when noiseless.
  for (int k = 1; k <= 8; ++k) {
    const WeightedConstellation table(type_weights(k), k);
    int collisions = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table.value(i) == table.value(i - 1)) ++collisions;
    }
    if (k <= 4) {
      CHECK(collisions == 0);
    } else {
      CHECK(collisions > 0);
    }
  }
  const auto w = type_weights(5);
  CHECK(w[0] == w[1] + w[2] + w[3]);
}

TEST_CASE("type1 caps") {
  CHECK_THROWS_AS(parse_codec_spec("type1:N=2,k=25"), CapacityError);
  CHECK_THROWS_AS(parse_codec_spec("type1:N=4,k=13"), ParameterError);
}

TEST_CASE("type2 examples") {
  Type2Codec zero(spec_of("type2:N=2,k=1"));
  CHECK(enc(zero, -0.5) == std::vector<double>{0.0, 0.0});
  // b1 -> 0.5 on dimension 1, b3 -> 2^-2 * 0.1b on dimension 1, b4 b5 -> dimension 2.
  auto s = enc(zero, -0.5 + 0.5 + 0.125);
  CHECK(s == std::vector<double>{0.5 + 0.125, 0.0});
  s = enc(zero, -0.5 + 0.25 + 0.0625 + 0.03125);
  CHECK(s == std::vector<double>{0.0, 0.5 + 0.25 * 0.75});
  // b6 b7 b8 sit after the separator: digits 3..5 of dimension 1's residual.
  s = enc(zero, -0.5 + std::ldexp(1.0, -6));
  CHECK(s[0] == 0.25 * 0.125);
}

TEST_CASE("type2 round trip") {
  for (const char* text : {"type2:N=2,k=1", "type2:N=2,k=4", "type2:N=4,k=3,P=60"}) {
    Type2Codec c(spec_of(text));
    check_round_trip(c, std::ldexp(1.0, -(c.spec().precision - 2 * c.spec().n)));
  }
}

TEST_CASE("type2 two-stage decode equals joint nearest point") {
  Type2Codec c(spec_of("type2:N=2,k=2,P=14"));
  REQUIRE(c.residual_layout().depth(0) <= 8);
  REQUIRE(c.residual_layout().depth(1) <= 8);
  const auto w = type_weights(2);
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto y = noisy_output(c, gen);
    const auto yh = enc(c, std::min(dec(c, y), 0.5 - 1e-16));
    for (int dim = 0; dim < 2; ++dim) {
      // Joint candidates: digital pattern x residual pattern.
      std::vector<double> free;
      for (const auto& slot : c.residual_layout().slots(dim)) free.push_back(std::ldexp(1.0, -slot.digit));
      double best = std::numeric_limits<double>::infinity();
      double best_v = 0.0;
      for (int p = 0; p < 4; ++p) {
        const double digital = ((p >> 1) & 1) * w[0] + (p & 1) * w[1];
        for (std::uint64_t q = 0; q < (std::uint64_t{1} << free.size()); ++q) {
          double r = 0.0;
          for (std::size_t j = 0; j < free.size(); ++j) {
            if ((q >> (free.size() - 1 - j)) & 1U) r += free[j];
          }
          const double v = digital + 0.125 * r;
          if (std::fabs(y[dim] - v) < best) {
            best = std::fabs(y[dim] - v);
            best_v = v;
          }
        }
      }
      REQUIRE(yh[dim] == best_v);
    }
  }
}

TEST_CASE("unbounded wrapper") {
  UnboundedCodec c(spec_of("unbounded:N=2"));
  Scheme2Codec inner(spec_of("scheme2:N=2"));
  const auto s = enc(c, 2.3);
  const auto frac = split_integer(2.3).fractional_part;
  CHECK(s[0] == 2.0 + enc(inner, frac)[0] - 0.5);
  CHECK(s[1] == enc(inner, frac)[1] - 0.5);
  CHECK(c.source_kind() == SourceKind::gaussian);

  CounterRng rng(derive_stream_key(33, 0, 0));
  const double floor = std::ldexp(1.0, -(48 - 4));
  std::vector<double> power(2, 0.0);
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) {
    const double x = draw_source(SourceKind::gaussian, rng);
    const auto v = enc(c, x);
    power[0] += v[0] * v[0];
    power[1] += v[1] * v[1];
    if (i < 100000) REQUIRE(std::fabs(dec(c, v) - x) <= floor);
  }
  CHECK(power[0] / draws <= 4.0);
  CHECK(power[1] / draws <= 4.0);
}

TEST_CASE("unbounded decoder resolves the integer part under noise") {
  UnboundedCodec c(spec_of("unbounded:N=2"));
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigma = 1e-4;
  int wrong = 0;
  for (int i = 0; i < 2000; ++i) {
    const double x = 3.0 * normal(gen);
    auto y = enc(c, x);
    for (double& v : y) v += sigma * normal(gen);
    if (std::fabs(dec(c, y, sigma) - x) > 0.25) ++wrong;
  }
  CHECK(wrong == 0);
}

TEST_CASE("normalization records") {
  SUBCASE("repetition") {
    RepetitionCodec c(spec_of("repetition:N=3"));
    const auto rec = measure_normalization(c);
    for (double m : rec.mean) CHECK(std::fabs(m) < 0.002);
    CHECK(rec.power == doctest::Approx(1.0 / 12).epsilon(0.02));
  }
  SUBCASE("shift map") {
    ShiftMapCodec c(spec_of("shift_map:N=3,a=4"));
    const auto rec = measure_normalization(c);
    for (double p : rec.dimension_power) CHECK(p == doctest::Approx(1.0 / 12).epsilon(0.02));
  }
  SUBCASE("spherical") {
    SphericalCodec c(spec_of("spherical:N=2,a=3"));
    const auto rec = measure_normalization(c);
    for (double p : rec.dimension_power) CHECK(p == doctest::Approx(1.0 / 4).epsilon(0.02));
  }
  SUBCASE("too few samples") {
    RepetitionCodec c(spec_of("repetition:N=1"));
    CHECK_THROWS_AS(measure_normalization(c, 1000), ParameterError);
  }
  SUBCASE("deterministic") {
    Scheme2Codec c(spec_of("scheme2:N=2"));
    CHECK(measure_normalization(c).power == measure_normalization(c).power);
  }
}

TEST_CASE("codec spec strings round trip") {
  for (const char* text : {"shift_map:N=3,a=4", "shift_map:N=3,b=2/5", "spherical:N=2,a=auto",
                           "scheme1:N=2,alpha=3.5", "scheme2:N=4,variant=shifted,P=60",
                           "type1:N=2,k=auto", "type2:N=3,k=4", "unbounded:N=2",
                           "shift_map:N=2,a=3,labeling=wrapped"}) {
    const auto spec = parse_codec_spec(text);
    CHECK(parse_codec_spec(to_string(spec)) == spec);
  }
  CHECK_THROWS_AS(parse_codec_spec("bogus:N=2"), ParameterError);
  CHECK_THROWS_AS(parse_codec_spec("scheme2:N=1"), ParameterError);
  CHECK_THROWS_AS(parse_codec_spec("scheme2:N=2,q=1"), ParameterError);
  CHECK_THROWS_AS(make_codec(parse_codec_spec("type1:N=2,k=auto")), ParameterError);
}
