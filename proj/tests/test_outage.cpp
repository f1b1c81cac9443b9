#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "deadline_bcast/outage.hpp"

using namespace dbc;

namespace {

ErasureProbs default_eps() { return ErasureProbs(0.1, 0.2, 0.2, 0.5); }

}  // namespace

TEST_CASE("exact outage: single-slot and frozen values") {
  const ErasureProbs eps = default_eps();
  CHECK(exact_outage(DeadlineConfig(0.0, 0.0, 3, 3), eps).value <= 1e-12);

  // one slot, one packet for user 1: outage iff user 1 erased
  CHECK(exact_outage(DeadlineConfig(1.0, 0.0, 1, 1), eps).value == doctest::Approx(0.3));

  // brute-force oracle value, frozen: T1 = T2 = 4, lambda = (1, 1)
  CHECK(std::abs(exact_outage(DeadlineConfig(1.0, 1.0, 4, 4), eps).value - 0.0181) <= 1e-12);
  // and T1 = T2 = 6 (used as the Monte Carlo reference)
  CHECK(std::abs(exact_outage(DeadlineConfig(1.0, 1.0, 6, 6), eps).value - 0.001487) <= 1e-12);
}

TEST_CASE("exact outage: saturation is exact at the frame capacity") {
  const ErasureProbs eps = default_eps();
  CHECK(exact_outage(DeadlineConfig(6.25, 6.0, 12, 12), eps).value == 1.0);
  CHECK(exact_outage(DeadlineConfig(6.0, 6.5, 12, 12), eps).value == 1.0);
  CHECK(exact_outage(DeadlineConfig(6.0, 6.0, 12, 12), eps).value < 1.0);
}

TEST_CASE("exact outage: guards") {
  const ErasureProbs eps = default_eps();
  CHECK_THROWS_AS(exact_outage(DeadlineConfig(1, 1, 13, 13), eps), guard_error);
  CHECK_THROWS_AS(exact_outage(DeadlineConfig(1, 1, 2, 8), eps), guard_error);  // N = 4
  CHECK_THROWS_AS(brute_force_outage(DeadlineConfig(1, 1, 11, 11), eps), guard_error);
}

TEST_CASE("exact outage agrees with the pattern-level oracle") {
  const ErasureProbs eps = default_eps();
  for (int t1 = 1; t1 <= 3; ++t1) {
    for (int n = 1; n <= 2; ++n) {
      const int frame = t1 * n;
      for (int i1 = 0; i1 <= frame * 2; ++i1) {
        for (int i2 = 0; i2 <= frame * 2; ++i2) {
          const DeadlineConfig config(0.5 * i1, 0.5 * i2, t1, frame);
          const double exact = exact_outage(config, eps).value;
          const double brute = brute_force_outage(config, eps).value;
          CHECK(std::abs(exact - brute) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("exact outage: three-block frames match the oracle, any worker count") {
  const ErasureProbs eps = default_eps();
  for (const auto& [t1, frame] : std::vector<std::pair<int, int>>{{2, 6}, {3, 9}}) {
    for (int i1 = 0; i1 <= frame * 2; ++i1) {
      for (int i2 = 0; i2 <= frame * 2; ++i2) {
        const DeadlineConfig config(0.5 * i1, 0.5 * i2, t1, frame);
        const double brute = brute_force_outage(config, eps).value;
        setenv("DEADLINE_BCAST_THREADS", "1", 1);
        const double serial = exact_outage(config, eps).value;
        setenv("DEADLINE_BCAST_THREADS", "4", 1);
        const double threaded = exact_outage(config, eps).value;
        unsetenv("DEADLINE_BCAST_THREADS");
        CHECK(std::abs(serial - brute) <= 1e-12);
        CHECK(threaded == serial);  // chunk-ordered merge is schedule-independent
      }
    }
  }
}

TEST_CASE("brute force strict mode: greedy outcomes equal feasibility") {
  const ErasureProbs eps = default_eps();
  for (int i1 = 0; i1 <= 8; ++i1) {
    for (int i2 = 0; i2 <= 8; ++i2) {
      const DeadlineConfig config(0.5 * i1, 0.5 * i2, 2, 4);
      const OutageResult strict = brute_force_outage(config, eps, BruteForceMode::GreedyStrict);
      const OutageResult plain = brute_force_outage(config, eps);
      CHECK(strict.value == plain.value);
    }
  }
}

TEST_CASE("outage under degenerate channels") {
  CHECK(brute_force_outage(DeadlineConfig(0.5, 0, 2, 2), ErasureProbs(1, 0, 0, 0)).value == 1.0);
  CHECK(brute_force_outage(DeadlineConfig(1, 1, 3, 3), ErasureProbs(0, 0, 0, 1)).value == 0.0);
  CHECK(exact_outage(DeadlineConfig(1, 2, 3, 3), ErasureProbs(0, 0, 0, 1)).value == 0.0);
}

TEST_CASE("equal-deadline outage: conventions and consistency") {
  const ErasureProbs eps = default_eps();
  CHECK(equal_deadline_outage(0, 0, 0, eps) == 0.0);
  CHECK(equal_deadline_outage(2, 1, 0, eps) == 1.0);
  CHECK(equal_deadline_outage(1, 0, 1, eps) == doctest::Approx(0.3));
  for (int t = 1; t <= 8; ++t) {
    CHECK(std::abs(equal_deadline_outage(1.0, 1.0, t, eps) -
                   exact_outage(DeadlineConfig(1, 1, t, t), eps).value) <= 1e-12);
  }
  // fractional rates follow the same step function as the full sum
  CHECK(std::abs(equal_deadline_outage(0.5, 1.5, 4, eps) -
                 exact_outage(DeadlineConfig(0.5, 1.5, 4, 4), eps).value) <= 1e-12);
  // horizons beyond the enumeration guard of exact_outage still work
  CHECK(equal_deadline_outage(1.0, 1.0, 24, eps) < 1e-4);
  CHECK_THROWS_AS(equal_deadline_outage(1, 1, 129, eps), guard_error);
}

TEST_CASE("cost table: frozen entries, monotonicity, clamping") {
  const ErasureProbs eps = default_eps();
  const CostToGoTable table = build_cost_table(8, 3, 3, eps);

  for (int t = 0; t <= 8; ++t) CHECK(table.at(0, 0, t) == 0.0);
  CHECK(table.at(1, 0, 1) == doctest::Approx(0.3));
  CHECK(std::abs(table.at(1, 1, 2) - 0.27) <= 1e-12);  // brute-force frozen
  CHECK(table.at(2, 1, 0) == 1.0);

  for (int l1 = 0; l1 <= 3; ++l1) {
    for (int l2 = 0; l2 <= 3; ++l2) {
      for (int t = 0; t <= 8; ++t) {
        if (t > 0) CHECK(table.at(l1, l2, t) <= table.at(l1, l2, t - 1) + 1e-12);
        if (l1 > 0) CHECK(table.at(l1, l2, t) >= table.at(l1 - 1, l2, t) - 1e-12);
        if (l2 > 0) CHECK(table.at(l1, l2, t) >= table.at(l1, l2 - 1, t) - 1e-12);
      }
    }
  }

  CHECK(table.at(-1, -2, 3) == table.at(0, 0, 3));  // negative residuals clamp
  CHECK_THROWS_AS(table.at(4, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(table.at(0, 0, 9), std::out_of_range);
}

TEST_CASE("Monte Carlo: determinism, exact channels, statistical agreement") {
  const ErasureProbs eps = default_eps();
  const DeadlineConfig config(1.0, 1.0, 6, 6);

  const OutageResult a = monte_carlo_outage(PolicyId::GreedyFull, config, eps, 50000, 7);
  const OutageResult b = monte_carlo_outage(PolicyId::GreedyFull, config, eps, 50000, 7);
  CHECK(a.value == b.value);
  CHECK(a.stderr_est == doctest::Approx(std::sqrt(a.value * (1 - a.value) / 50000)));

  // worker count must not change the estimate
  setenv("DEADLINE_BCAST_THREADS", "1", 1);
  const OutageResult single = monte_carlo_outage(PolicyId::GreedyFull, config, eps, 50000, 7);
  setenv("DEADLINE_BCAST_THREADS", "3", 1);
  const OutageResult triple = monte_carlo_outage(PolicyId::GreedyFull, config, eps, 50000, 7);
  unsetenv("DEADLINE_BCAST_THREADS");
  CHECK(single.value == a.value);
  CHECK(triple.value == a.value);

  CHECK(monte_carlo_outage(PolicyId::GreedyFull, DeadlineConfig(1, 2, 3, 3),
                           ErasureProbs(0, 0, 0, 1), 1000, 3)
            .value == 0.0);

  const double exact = exact_outage(config, eps).value;
  const OutageResult mc = monte_carlo_outage(PolicyId::GreedyFull, config, eps, 100000, 20240901);
  CHECK(std::abs(mc.value - exact) <= 4.0 * mc.stderr_est);

  CHECK_THROWS_AS(monte_carlo_outage(PolicyId::GreedyFull, config, eps, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_outage(PolicyId::CurrentCsi, DeadlineConfig(1, 1, 2, 4), eps, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("rate solver on the lambda1 = lambda2 ray, T1 = T2 = 4") {
  const ErasureProbs eps = default_eps();
  // step function: P(0.5) = 0.0161, P(1) = 0.0181, P(1.5) = 0.1739,
  // P(2) = 0.3919, P(2.5) = 1 (frozen by the brute-force oracle)
  const RateSolution at_p1 = rate_solver(eps, 4, 4, 0.1, 1.0);
  CHECK(at_p1.lambda2 == doctest::Approx(1.0));
  CHECK(at_p1.lambda1 == doctest::Approx(1.0));
  CHECK(std::abs(at_p1.pout - 0.0181) <= 1e-12);
  CHECK(!at_p1.zero_rate);

  CHECK(rate_solver(eps, 4, 4, 0.0161, 1.0).lambda2 == doctest::Approx(0.5));
  CHECK(rate_solver(eps, 4, 4, 0.017, 1.0).lambda2 == doctest::Approx(0.5));
  CHECK(rate_solver(eps, 4, 4, 0.5, 1.0).lambda2 == doctest::Approx(2.0));
  CHECK(rate_solver(eps, 4, 4, 0.99, 1.0).lambda2 == doctest::Approx(2.0));

  const RateSolution too_strict = rate_solver(eps, 4, 4, 0.01, 1.0);
  CHECK(too_strict.lambda2 == 0.0);
  CHECK(too_strict.zero_rate);

  // single-user ray: P_out(lambda2 = k) = Pr[Binomial(4, 0.7) < k]
  const RateSolution single = rate_solver(eps, 4, 4, 0.3, 0.0);
  CHECK(single.lambda1 == 0.0);
  CHECK(single.lambda2 == doctest::Approx(2.0));
  CHECK(std::abs(single.pout - 0.0837) <= 1e-12);

  CHECK_THROWS_AS(rate_solver(eps, 4, 4, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rate_solver(eps, 4, 4, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("outage result serializes to the documented JSON shape") {
  const ErasureProbs eps = default_eps();
  const DeadlineConfig config(1.0, 0.0, 1, 1);

  const auto exact = nlohmann::json::parse(outage_to_json(exact_outage(config, eps), config, eps));
  CHECK(exact["value"].get<double>() == doctest::Approx(0.3));
  CHECK(exact["method"] == "exact");
  CHECK(!exact.contains("trials"));
  CHECK(!exact.contains("generator"));
  CHECK(exact["config"]["t1"] == 1);
  CHECK(exact["eps"]["eps11"].get<double>() == doctest::Approx(0.5));

  const OutageResult mc = monte_carlo_outage(PolicyId::GreedyFull, config, eps, 1000, 42);
  const auto j = nlohmann::json::parse(outage_to_json(mc, config, eps));
  CHECK(j["method"] == "mc");
  CHECK(j["trials"] == 1000);
  CHECK(j["seed"] == 42);
  CHECK(j["generator"] == "mt19937_64");
  CHECK(j.contains("stderr"));
}
