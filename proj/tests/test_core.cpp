#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "infodyn/discretise.hpp"
#include "infodyn/embedding.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/properties.hpp"
#include "infodyn/special.hpp"

using namespace infodyn;

TEST_CASE("embed builds sliding delay windows") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto e1 = embed<double>(x, 2, 1);
  CHECK(e1 == RealMatrix::from_rows({{1, 2}, {2, 3}, {3, 4}, {4, 5}}));
  const auto e2 = embed<double>(x, 2, 2);
  CHECK(e2 == RealMatrix::from_rows({{1, 3}, {2, 4}, {3, 5}}));
  const auto e3 = embed<double>(x, 1, 1);
  CHECK(e3.column_values(0) == x);
}

TEST_CASE("embed rejects series shorter than the window") {
  const std::vector<double> x{1, 2};
  CHECK_THROWS_WITH_AS(embed<double>(x, 3, 1), doctest::Contains("insufficient samples"), DataError);
  EmbeddingSpec spec;
  spec.l = 3;
  CHECK_THROWS_AS(embed<double>(x, spec, EmbedRole::source), DataError);
}

TEST_CASE("embedding offset accounts for dest history, source history and lag") {
  EmbeddingSpec s;
  CHECK(s.offset() == 1);
  s.k = 3;
  CHECK(s.offset() == 3);
  s.tau_k = 2;
  CHECK(s.offset() == 5);
  s.l = 2;
  s.tau_l = 3;
  s.u = 4;
  CHECK(s.offset() == 7);
  s.u = 0;
  CHECK_THROWS_AS(s.validate(), UsageError);
}

TEST_CASE("transfer tuples reference only past samples and the lagged source") {
  std::vector<double> src(10), dst(10);
  for (int i = 0; i < 10; ++i) {
    src[static_cast<std::size_t>(i)] = 100 + i;
    dst[static_cast<std::size_t>(i)] = i;
  }
  EmbeddingSpec spec;
  spec.k = 2;
  spec.l = 2;
  spec.u = 2;
  const auto b = transfer_tuples(RealMatrix::column(src), RealMatrix::column(dst), RealMatrix(10, 0), spec);
  REQUIRE(b.offset == 3);
  REQUIRE(b.target.rows() == 7);
  // first tuple: next x[3]; past {x1, x2}; source ending at 3-2=1: {y0, y1}
  CHECK(b.target(0, 0) == 3);
  CHECK(b.past(0, 0) == 1);
  CHECK(b.past(0, 1) == 2);
  CHECK(b.source(0, 0) == 100);
  CHECK(b.source(0, 1) == 101);
}

TEST_CASE("observation store pools trials without crossing boundaries") {
  std::mt19937_64 rng(3);
  EmbeddingSpec spec;
  spec.k = 3;
  spec.l = 2;
  const std::size_t s = spec.offset();
  ObservationStore<double> store;
  for (std::size_t len : {40u, 25u}) {
    const auto a = testutil::gaussian_noise(rng, len);
    const auto b = testutil::gaussian_noise(rng, len);
    store.add(transfer_tuples(RealMatrix::column(a), RealMatrix::column(b), RealMatrix(len, 0), spec));
  }
  store.finalize();
  CHECK(store.size() == (40 - s) + (25 - s));
  REQUIRE(store.trials().size() == 2);
  CHECK(store.trials()[1].first == 40 - s);
  CHECK_THROWS_AS(store.add(TupleBlocks<double>{}), UsageError);
}

TEST_CASE("combine_values reads rows as base-M numbers") {
  CHECK(combine_values(SymbolMatrix::from_rows({{1, 0}}), Alphabet(2)) == std::vector<std::int64_t>{2});
  CHECK(combine_values(SymbolMatrix::from_rows({{0, 0}}), Alphabet(3)) == std::vector<std::int64_t>{0});
  CHECK(combine_values(SymbolMatrix::from_rows({{1, 2}}), Alphabet(3)) == std::vector<std::int64_t>{5});
  CHECK_THROWS_WITH_AS(combine_values(SymbolMatrix::from_rows({{1, 3}}), Alphabet(3)),
                       doctest::Contains("symbol out of alphabet"), DataError);
}

TEST_CASE("combine_values is a bijection onto [0, M^d)") {
  const Alphabet m(3);
  const std::size_t d = 4;
  const auto total = m.joint_size(d);
  SymbolMatrix rows(static_cast<std::size_t>(total), d);
  for (std::int64_t v = 0; v < total; ++v) {
    std::int64_t rest = v;
    for (std::size_t c = d; c-- > 0;) {
      rows(static_cast<std::size_t>(v), c) = static_cast<int>(rest % 3);
      rest /= 3;
    }
  }
  const auto codes = combine_values(rows, m);
  std::vector<bool> seen(static_cast<std::size_t>(total), false);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    REQUIRE(codes[r] >= 0);
    REQUIRE(codes[r] < total);
    CHECK_FALSE(seen[static_cast<std::size_t>(codes[r])]);
    seen[static_cast<std::size_t>(codes[r])] = true;
    const auto back = decode_value(codes[r], m, d);
    CHECK(std::equal(back.begin(), back.end(), rows.row(r).begin()));
  }
}

TEST_CASE("Alphabet rejects fewer than two symbols") {
  CHECK_THROWS_AS(Alphabet(1), UsageError);
  CHECK(Alphabet(2).joint_size(3) == 8);
}

TEST_CASE("even binning") {
  const std::vector<double> x{0.0, 0.5, 1.0};
  // interior edge goes to the upper bin; the maximum to the top bin
  CHECK(discretise(x, 2, BinMode::even) == std::vector<int>{0, 1, 1});
  const std::vector<double> c{1, 1, 1, 1};
  CHECK(discretise(c, 2, BinMode::even) == std::vector<int>{0, 0, 0, 0});
  const std::vector<double> y{0.0, 0.24, 0.26, 0.9, 1.0};
  CHECK(discretise(y, 4, BinMode::even) == std::vector<int>{0, 0, 1, 3, 3});
}

TEST_CASE("max-entropy binning") {
  const std::vector<double> x{5, 1, 3, 2, 4, 6};
  CHECK(discretise(x, 3, BinMode::max_entropy) == std::vector<int>{2, 0, 1, 0, 1, 2});
  CHECK_THROWS_AS(discretise(x, 7, BinMode::max_entropy), DataError);
  CHECK_THROWS_AS(discretise(x, 1, BinMode::even), UsageError);
  // ties ranked by original position
  const std::vector<double> t{2, 2, 2, 2};
  CHECK(discretise(t, 2, BinMode::max_entropy) == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("max-entropy bin occupancies differ by at most one") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(trial) * 7;
    const int bins = 2 + trial % 9;
    const auto x = testutil::gaussian_noise(rng, n);
    const auto b = discretise(x, bins, BinMode::max_entropy);
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (int v : b) ++counts[static_cast<std::size_t>(v)];
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("normalise uses the N-1 standard deviation") {
  const std::vector<double> a{0, 2};
  const auto z = normalise(a);
  CHECK(z[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const std::vector<double> c{5, 5, 5};
  CHECK(normalise(c) == std::vector<double>{0, 0, 0});
  const std::vector<double> b{1, 2, 3};
  const auto w = normalise(b);
  CHECK(mean(w) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(sample_std(w) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("digamma reference values") {
  constexpr double gamma = 0.57721566490153286061;
  CHECK(std::abs(digamma(1.0) + gamma) < 1e-12);
  CHECK(std::abs(digamma(2.0) - (1.0 - gamma)) < 1e-12);
  CHECK(std::abs(digamma(0.5) - (-gamma - 2.0 * std::numbers::ln2)) < 1e-12);
  CHECK(std::abs(digamma(1.0) - (-0.57721566490)) < 1e-10);
  CHECK(std::abs(digamma(2.0) - 0.42278433510) < 1e-10);
  CHECK(std::abs(digamma(0.5) - (-1.96351002602)) < 1e-10);
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.5), std::domain_error);
}

TEST_CASE("digamma agrees with an independent implementation") {
  for (double x : {1e-6, 1e-3, 0.1, 0.3, 0.9, 1.5, 3.7, 5.99, 6.0, 7.5, 42.0, 1e3, 1e6}) {
    const double expected = boost::math::digamma(x);
    // absolute 1e-10, widened to a few ulps of |psi| where psi itself is huge
    const double tol = std::max(1e-10, 4.0 * std::abs(expected) * 2.2e-16);
    CHECK_MESSAGE(std::abs(digamma(x) - expected) < tol, "x=" << x);
  }
}

TEST_CASE("digamma recurrence psi(x+1) - psi(x) = 1/x") {
  for (double x : {0.5, 1.0, 2.0, 10.0, 100.0}) CHECK(std::abs(digamma(x + 1) - digamma(x) - 1.0 / x) < 1e-10);
}

TEST_CASE("property map rejects unknown keys and malformed values") {
  PropertyMap p;
  p.declare("k", PropertyType::integer, "1");
  p.declare("r", PropertyType::real, "0.5");
  p.declare("normalise", PropertyType::boolean, "true");
  CHECK(p.get_int("k") == 1);
  p.set("k", "4");
  CHECK(p.get_int("k") == 4);
  CHECK(p.is_set("k"));
  CHECK_FALSE(p.is_set("r"));
  p.set_assignment("r=0.25");
  CHECK(p.get_real("r") == 0.25);
  p.set("normalise", "false");
  CHECK_FALSE(p.get_bool("normalise"));
  CHECK_THROWS_WITH_AS(p.set("bogus", "1"), doctest::Contains("bogus"), UsageError);
  CHECK_THROWS_WITH_AS(p.set("k", "four"), doctest::Contains("'k'"), UsageError);
  CHECK_THROWS_AS(p.set("k", "4.5"), UsageError);
  CHECK_THROWS_AS(p.set_assignment("noequals"), UsageError);
}

TEST_CASE("result_from_locals averages and pads") {
  const auto r = result_from_locals({1.0, 2.0, 3.0}, Units::nats, 2);
  CHECK(r.average == 2.0);
  CHECK(r.n_observations == 3);
  CHECK(r.aligned_local() == std::vector<double>{0, 0, 1, 2, 3});
}

TEST_CASE("require_finite flags NaN and Inf") {
  const std::vector<double> ok{1, 2};
  CHECK_NOTHROW(require_finite(ok));
  const std::vector<double> bad{1, std::nan("")};
  CHECK_THROWS_AS(require_finite(bad), DataError);
}
