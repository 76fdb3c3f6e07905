#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "core/problem.hpp"
#include "support.hpp"

using namespace hegrad;
using hegrad_tests::dec;

TEST_CASE("partition assigns shared coefficients to the lowest index") {
  // Two agents share c2; agent 1 takes it, leaving agent 2 with nothing.
  std::vector<std::set<ParticipantId>> holders = {{1}, {1, 2}, {1}};
  auto partition = build_partition(holders);
  CHECK(partition.owner == std::vector<ParticipantId>{1, 1, 1});

  std::vector<std::set<ParticipantId>> single = {{2}, {1}, {kSystemOperator}};
  CHECK(build_partition(single).owner ==
        std::vector<ParticipantId>{2, 1, kSystemOperator});

  // The operator keeps everything it holds.
  std::vector<std::set<ParticipantId>> shared_so = {{kSystemOperator, 3}};
  CHECK(build_partition(shared_so).owner == std::vector<ParticipantId>{kSystemOperator});

  std::vector<std::set<ParticipantId>> unowned = {{}};
  CHECK_THROWS_AS(build_partition(unowned), Error);
}

TEST_CASE("projection clamps coordinatewise") {
  auto box = FeasibleSet::box({dec("0")}, {dec("5")});
  CHECK(box.project({dec("3.2")}) == std::vector<ScaledDecimal>{dec("3.2")});
  CHECK(box.project({dec("-1")}) == std::vector<ScaledDecimal>{dec("0")});
  CHECK(box.project({dec("9")}) == std::vector<ScaledDecimal>{dec("5")});

  auto all = FeasibleSet::all_reals(1);
  CHECK(all.project({dec("13.425213")}) == std::vector<ScaledDecimal>{dec("13.425213")});

  auto orthant = FeasibleSet::non_negative(2);
  CHECK(orthant.project({dec("-1.5"), dec("2")}) ==
        std::vector<ScaledDecimal>{dec("0"), dec("2")});

  CHECK_THROWS_AS(box.project({dec("1"), dec("2")}), Error);
  CHECK_THROWS_AS(FeasibleSet::box({dec("2")}, {dec("1")}), Error);
}

TEST_CASE("projection is idempotent and nonexpansive on random pairs") {
  SeededRandom rng(321);
  auto box = FeasibleSet::box({dec("-2"), dec("0.5")}, {dec("3"), dec("4.25")});
  auto orthant = FeasibleSet::non_negative(2);
  for (const auto& set : {box, orthant}) {
    for (int i = 0; i < 200; ++i) {
      std::vector<ScaledDecimal> z = {hegrad_tests::random_decimal(rng, 8),
                                      hegrad_tests::random_decimal(rng, 8)};
      std::vector<ScaledDecimal> w = {hegrad_tests::random_decimal(rng, 8),
                                      hegrad_tests::random_decimal(rng, 8)};
      auto pz = set.project(z), pw = set.project(w);
      CHECK(set.project(pz) == pz);
      mpq_class lhs = 0, rhs = 0;
      for (int c = 0; c < 2; ++c) {
        mpq_class dp = pz[c].to_rational() - pw[c].to_rational();
        mpq_class dz = z[c].to_rational() - w[c].to_rational();
        lhs += dp * dp;
        rhs += dz * dz;
      }
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("gradient step reproduces both reference updates") {
  auto all = FeasibleSet::all_reals(1);
  CHECK(gradient_update({dec("0.76")}, dec("1"), {dec("-12.665213")}, all) ==
        std::vector<ScaledDecimal>{dec("13.425213")});
  CHECK(gradient_update({dec("1.36")}, dec("1"), {dec("12.8546")}, all) ==
        std::vector<ScaledDecimal>{dec("-11.4946")});
  CHECK(gradient_update({dec("2.5")}, dec("0.1"), {dec("0")}, all) ==
        std::vector<ScaledDecimal>{dec("2.5")});
  CHECK_THROWS_AS(gradient_update({dec("1")}, dec("0"), {dec("1")}, all), Error);
}

TEST_CASE("problem json roundtrips byte-stably") {
  Problem p = hegrad_tests::random_polynomial_problem(7);
  std::string once = p.to_json();
  Problem reloaded = Problem::from_json(once);
  CHECK(reloaded.to_json() == once);
  CHECK(reloaded.total_dim() == p.total_dim());
  CHECK(reloaded.partition.owner == p.partition.owner);

  auto x = p.initial_state();
  CHECK(reloaded.eval_gradients(x) == p.eval_gradients(x));
}

TEST_CASE("validation rejects malformed instances") {
  Problem p = hegrad_tests::random_polynomial_problem(11);
  Problem bad = p;
  bad.agents[0].x0[0] = dec("0.123");  // finer than sigma = 2
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = p;
  bad.coefficients[0] = dec("1.234");
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = p;
  bad.agents[0].x0[0] = dec("99");  // outside the box
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = p;
  bad.partition.owner[p.coefficients.size() - 1] = 99;
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = p;
  bad.gamma = StepSchedule::constant(dec("-0.1"));
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("interval bounds dominate sampled gradients") {
  SeededRandom rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Problem p = hegrad_tests::random_polynomial_problem(1000 + trial);
    auto bounds = p.worst_case_gradient_bounds();
    REQUIRE(bounds.has_value());
    for (int s = 0; s < 20; ++s) {
      std::vector<ScaledDecimal> x;
      for (std::size_t i = 0; i < p.total_dim(); ++i) {
        x.push_back(hegrad_tests::random_decimal(rng, 10));
      }
      auto phi = p.eval_gradients(x);
      for (std::size_t i = 0; i < phi.size(); ++i) {
        CHECK(phi[i].abs() <= (*bounds)[i]);
      }
    }
  }
}

TEST_CASE("step schedules cover their horizon") {
  auto table = StepSchedule::table({dec("0.1"), dec("0.05")});
  CHECK(table.at(0) == dec("0.1"));
  CHECK(table.at(1) == dec("0.05"));
  CHECK(!table.covers(3));
  CHECK_THROWS_AS(table.at(2), Error);
  CHECK(StepSchedule::constant(dec("1")).covers(1000));
}
