#include <cmath>
#include <vector>

#include "doctest.h"
#include "reclink/errors.hpp"
#include "reclink/simulate.hpp"

using namespace reclink;

namespace {

double mean_survival_uniform_gaps(double hazard) {
  // E[exp(-hazard * (t_b - t_a))] with t_a ~ U[0,3], t_b ~ U[3,6]:
  // numeric double integral on a fine grid is all the precision a band test needs
  const int steps = 400;
  double total = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double ta = (i + 0.5) * 3.0 / steps;
    for (int j = 0; j < steps; ++j) {
      const double tb = 3.0 + (j + 0.5) * 3.0 / steps;
      total += std::exp(-hazard * (tb - ta));
    }
  }
  return total / (static_cast<double>(steps) * steps);
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("latent weights are exponential in the category index") {
  std::vector<double> pmf = latent_pmf(2, 0.25);
  REQUIRE(pmf[0] == doctest::Approx(1.0 / (1.0 + std::exp(0.25))).epsilon(1e-12));
  REQUIRE(pmf[0] + pmf[1] == doctest::Approx(1.0));

  std::vector<double> big = latent_pmf(6, 0.25);
  double total = 0.0;
  for (size_t i = 0; i < big.size(); ++i) {
    total += big[i];
    if (i > 0) REQUIRE(big[i] > big[i - 1]);
  }
  REQUIRE(total == doctest::Approx(1.0));
  REQUIRE(latent_pmf(3, 0.0)[0] == doctest::Approx(1.0 / 3));
}

TEST_CASE("option validation catches impossible scenarios") {
  SimulateOptions opt;
  opt.n_links = 900;  // more shared records than file A has
  REQUIRE_THROWS_AS(opt.resolve(), ConfigError);

  opt = SimulateOptions();
  opt.unstable_piv = 7;
  REQUIRE_THROWS_AS(opt.resolve(), ConfigError);

  opt = SimulateOptions();
  opt.mistake_rate = 1.2;
  REQUIRE_THROWS_AS(opt.resolve(), ConfigError);

  opt = SimulateOptions();
  opt.supports = {6, 1, 8, 9, 15};
  opt.unstable_piv = 1;  // a one-category PIV cannot drift
  REQUIRE_THROWS_AS(opt.resolve(), ConfigError);

  opt = SimulateOptions();
  opt.mistake_rates = {0.1, 0.1};  // wrong length for five PIVs
  REQUIRE_THROWS_AS(opt.resolve(), ConfigError);
}

TEST_CASE("resolve fills per PIV mistake rates and zeroes the unstable one") {
  SimulateOptions opt;
  opt.resolve();
  REQUIRE(opt.mistake_rates.size() == 5);
  REQUIRE(opt.mistake_rates[0] == doctest::Approx(0.02));
  REQUIRE(opt.mistake_rates[4] == doctest::Approx(0.0));
}

TEST_CASE("generation is reproducible and structurally sound") {
  SimulateOptions opt;
  opt.n_a = 50;
  opt.n_b = 70;
  opt.n_links = 30;
  opt.supports = {4, 6};
  opt.unstable_piv = 1;
  opt.seed = 21;
  SimulatedData d1 = simulate(opt);
  SimulatedData d2 = simulate(opt);
  REQUIRE(d1.a.codes == d2.a.codes);
  REQUIRE(d1.b.codes == d2.b.codes);
  REQUIRE(d1.a.times == d2.a.times);
  REQUIRE(d1.links == d2.links);

  REQUIRE(d1.a.n == 50);
  REQUIRE(d1.b.n == 70);
  REQUIRE(d1.links.size() == 30);
  REQUIRE(d1.specs.size() == 2);
  REQUIRE(d1.specs[0].stable);
  REQUIRE_FALSE(d1.specs[1].stable);
  REQUIRE(d1.specs[1].mistake_bound == doctest::Approx(0.0));

  int prev = -1;
  for (const auto& [i, j] : d1.links) {
    REQUIRE(i > prev);  // ascending, so also unique
    prev = i;
    REQUIRE(j >= 0);
    REQUIRE(j < d1.b.n);
  }
  for (int r = 0; r < d1.a.n; ++r) {
    REQUIRE(d1.a.times[r] >= 0.0);
    REQUIRE(d1.a.times[r] < 3.0);
    for (int k = 0; k < d1.a.k; ++k) {
      REQUIRE(d1.a.at(r, k) >= 0);
      REQUIRE(d1.a.at(r, k) <= opt.supports[k]);
    }
  }
  for (int r = 0; r < d1.b.n; ++r) {
    REQUIRE(d1.b.times[r] >= 3.0);
    REQUIRE(d1.b.times[r] < 6.0);
  }
}

TEST_CASE("registered error frequencies converge to their nominal rates") {
  // big all-stable scenario with no drift: disagreement between the two
  // registered copies of a link has a closed form in the mistake rate
  SimulateOptions opt;
  opt.n_a = 5000;
  opt.n_b = 5000;
  opt.n_links = 5000;
  opt.supports = {6};
  opt.mistake_rate = 0.02;
  opt.missing_rate = 0.05;
  opt.unstable_piv = -1;
  opt.seed = 22;
  SimulatedData d = simulate(opt);

  int missing = 0, both_present = 0, disagree = 0;
  for (const auto& [i, j] : d.links) {
    const int32_t ga = d.a.at(i, 0), gb = d.b.at(j, 0);
    missing += (ga == 0) + (gb == 0);
    if (ga != 0 && gb != 0) {
      ++both_present;
      disagree += ga != gb;
    }
  }
  const double missing_rate = missing / (2.0 * d.links.size());
  // just under 4 sigma at 10^4 cells around 0.05
  REQUIRE(missing_rate == doctest::Approx(0.05).epsilon(0.008));

  // P(disagree | both present): 2 phi (1-phi) + phi^2 * (1 - 1/(n_k-1)) is the
  // exact complement of agreement = (1-phi)^2 + phi^2/(n_k-1)
  const double agree_expected = 0.98 * 0.98 + 0.02 * 0.02 / 5;
  const double agree = 1.0 - static_cast<double>(disagree) / both_present;
  REQUIRE(agree == doctest::Approx(agree_expected).epsilon(0.006));
}

TEST_CASE("unstable link agreement tracks the mean survival probability") {
  SimulateOptions opt;
  opt.n_a = 600;
  opt.n_b = 600;
  opt.n_links = 500;
  opt.supports = {4, 15};
  opt.missing_rate = 0.0;
  opt.mistake_rate = 0.0;
  opt.unstable_piv = 1;
  opt.hazard = 0.28;
  opt.seed = 23;
  SimulatedData d = simulate(opt);

  int agree = 0;
  for (const auto& [i, j] : d.links) agree += d.a.at(i, 1) == d.b.at(j, 1);
  const double expected = mean_survival_uniform_gaps(0.28);
  REQUIRE(expected == doctest::Approx(0.4577).epsilon(0.001));
  REQUIRE(static_cast<double>(agree) / d.links.size() ==
          doctest::Approx(expected).epsilon(0.045));
}

TEST_CASE("distortion level zero is a no-op and level four erases everything") {
  SimulateOptions opt;
  opt.n_a = 40;
  opt.n_b = 40;
  opt.n_links = 20;
  opt.supports = {5, 5};
  opt.unstable_piv = -1;
  opt.seed = 24;
  SimulatedData d = simulate(opt);

  RecordTable a0 = d.a, b0 = d.b;
  inject_distortion(a0, b0, d.specs, 0.0, 31);
  REQUIRE(a0.codes == d.a.codes);
  REQUIRE(b0.codes == d.b.codes);

  RecordTable a4 = d.a, b4 = d.b;
  inject_distortion(a4, b4, d.specs, 4.0, 31);
  for (int32_t c : a4.codes) REQUIRE(c == 0);
  for (int32_t c : b4.codes) REQUIRE(c == 0);

  REQUIRE_THROWS_AS(inject_distortion(a4, b4, d.specs, 4.1, 31), ConfigError);
  REQUIRE_THROWS_AS(inject_distortion(a4, b4, d.specs, -0.1, 31), ConfigError);
}

TEST_CASE("injected distortion is reproducible and monotone in the level") {
  SimulateOptions opt;
  opt.n_a = 300;
  opt.n_b = 300;
  opt.n_links = 200;
  opt.supports = {6, 7};
  opt.unstable_piv = -1;
  opt.seed = 25;
  SimulatedData d = simulate(opt);

  RecordTable a1 = d.a, b1 = d.b;
  inject_distortion(a1, b1, d.specs, 1.0, 77);
  RecordTable a2 = d.a, b2 = d.b;
  inject_distortion(a2, b2, d.specs, 1.0, 77);
  REQUIRE(a1.codes == a2.codes);
  REQUIRE(b1.codes == b2.codes);

  const double base = distortion_level(d.a, d.b, d.links);
  const double bumped = distortion_level(a1, b1, d.links);
  REQUIRE(bumped > base);
}

TEST_CASE("the distortion summary is medians of disagreement plus missing") {
  // three PIVs over four links with hand-set disagreement and missing patterns
  RecordTable a, b;
  a.n = 4;
  a.k = 3;
  b.n = 4;
  b.k = 3;
  // per-PIV disagreement rates (both present): 0, 0.25, 0.5
  // per-PIV missing rates (either absent):      0, 0,    0.25? -> choose 0,0,0.5
  a.codes = {1, 1, 1, /**/ 1, 1, 1, /**/ 1, 2, 1, /**/ 1, 2, 0};
  b.codes = {1, 1, 1, /**/ 1, 1, 2, /**/ 1, 1, 1, /**/ 1, 2, 0};
  std::vector<std::pair<int, int>> links = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  // PIV1: agree,agree,agree,agree; missing 0 -> disagree rate 0
  // PIV2: agree,agree,disagree,agree -> 0.25; missing 0
  // PIV3: agree,disagree among present; links 3 has both missing -> missing 0.25,
  //       present pairs 3 with 1 disagreement -> 1/3
  const double expected = 0.25 + 0.0;  // medians: disagree {0, .25, 1/3}, missing {0,0,.25}
  REQUIRE(distortion_level(a, b, links) == doctest::Approx(expected));
}

TEST_CASE("an error-free generator yields a zero distortion summary") {
  SimulateOptions opt;
  opt.n_a = 100;
  opt.n_b = 100;
  opt.n_links = 80;
  opt.supports = {5, 6, 7};
  opt.mistake_rate = 0.0;
  opt.missing_rate = 0.0;
  opt.unstable_piv = -1;
  opt.seed = 26;
  SimulatedData d = simulate(opt);
  REQUIRE(distortion_level(d.a, d.b, d.links) == doctest::Approx(0.0));
}

}  // TEST_SUITE
