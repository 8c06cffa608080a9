#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "boundpair/bethe.hpp"
#include "boundpair/errors.hpp"
#include "boundpair/experiments.hpp"

using namespace boundpair;

TEST_CASE("run output lookup") {
  RunOutput out;
  out.set("a", 1.0);
  out.set("a", 2.0);
  CHECK(out.summary.size() == 1u);
  CHECK(out.value("a") == 2.0);
  CHECK(out.has("a"));
  CHECK_FALSE(out.has("b"));
  CHECK_THROWS_AS(out.value("b"), std::out_of_range);
  CHECK_THROWS_AS(out.table("none"), std::out_of_range);
}

TEST_CASE("band scan") {
  const RunOutput out = band_scan(LatticeParams(101, 1.0, 2.0), 2);
  const Table& t = out.table("band");
  CHECK(t.rows.size() == 101u);
  CHECK(t.columns == std::vector<std::string>{"k", "eps_num", "eps_ana", "lambda", "cont_lo", "cont_hi"});
  CHECK(out.value("max_band_deviation") < 1e-6);
  for (const auto& row : t.rows) {
    CHECK(std::abs(row[1] - row[2]) < 1e-6);
    CHECK(row[3] >= 0.0);
    CHECK(row[4] <= row[5]);
  }
  for (const char* key : {"k0", "v_g", "lambda_k0", "eta"}) CHECK(out.has(key));

  CHECK(band_scan(LatticeParams(101, 1.0, 10.0)).value("lambda_k0") == doctest::Approx(0.2).epsilon(0.05));
  CHECK(band_scan(LatticeParams(101, 1.0, 0.2)).value("lambda_k0") == doctest::Approx(3.1).epsilon(0.05));
  CHECK_THROWS_AS(band_scan(LatticeParams(101, 1.0, 0.0)), DomainError);
}

TEST_CASE("packet evolution") {
  const LatticeParams p(151, 1.0, 5.0);
  const PacketSpec spec{linear_point(p).k0, 76.0, 2.0 / 15.0};

  SUBCASE("travels at the group velocity without spreading") {
    const RunOutput out = packet_evolution(p, spec, 15.0);
    CHECK(std::abs(out.value("displacement") - out.value("predicted_displacement")) < 0.5);
    CHECK(out.value("width_growth") < 0.05);
    CHECK(out.value("norm_drift") < 1e-9);
    CHECK(std::abs(out.value("leakage")) < 1e-10);
    CHECK(out.value("momentum_drift") < 1e-8);
    CHECK(out.table("profile_t000").rows.size() == 151u);
    CHECK(out.table("profile_t001").rows.size() == 151u);
  }
  SUBCASE("zero time") {
    const RunOutput out = packet_evolution(p, spec, 0.0);
    CHECK(out.value("displacement") == 0.0);
    CHECK(out.value("width_tau") == out.value("width_0"));
  }
  SUBCASE("long runs unwrap around the ring") {
    // over ~1.5 turns the cubic distortion costs a couple of sites; a lost
    // turn would cost 61
    const LatticeParams q(61, 1.0, 1.0);
    const PacketSpec s{linear_point(q).k0, 30.0, 0.25};
    const RunOutput out = packet_evolution(q, s, 60.0);
    CHECK(std::abs(out.value("predicted_displacement")) > 61.0);
    CHECK(std::abs(out.value("displacement") - out.value("predicted_displacement")) < 3.0);
  }
}

TEST_CASE("fidelity scan") {
  const double alpha = 2.0 / 15.0;
  auto run = [&](double u, double ell_max, int samples) {
    const LatticeParams p(301, 1.0, u);
    const BandDescriptor d = linear_point(p);
    std::vector<double> times;
    for (int i = 0; i < samples; ++i) times.push_back(ell_max / std::abs(d.v_g) * i / (samples - 1));
    return fidelity_scan(p, {d.k0, 151.0, alpha}, times);
  };

  const RunOutput a = run(0.5, 30.0, 31);
  const RunOutput b = run(5.0, 30.0, 31);
  const Table& ta = a.table("fidelity");
  const Table& tb = b.table("fidelity");
  CHECK(ta.rows.front()[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ta.rows.front()[3] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i < ta.rows.size(); ++i) {
    CHECK(ta.rows[i][1] == doctest::Approx(tb.rows[i][1]));
    CHECK(std::abs(ta.rows[i][3] - tb.rows[i][3]) < 1e-3);
    CHECK(std::abs(ta.rows[i][2] - ta.rows[i][3]) < 1e-2);
    CHECK(std::abs(tb.rows[i][2] - tb.rows[i][3]) < 1e-2);
  }

  SUBCASE("exact echo decreases over its first lobe") {
    const RunOutput long_run = run(1.0, 600.0, 601);
    const Table& t = long_run.table("fidelity");
    std::size_t i = 1;
    while (i < t.rows.size() && t.rows[i][2] <= t.rows[i - 1][2]) ++i;
    CHECK(i > 30);
  }
}

TEST_CASE("scattering with a kappa swap shifts the pair by one site") {
  const LatticeParams p(201, 1.0, 20.0);
  const PacketSpec sp{kPi / 2, 30.0, 2.0 / 15.0};
  const PacketSpec bp{0.0, 101.0, 2.0 / 15.0};
  const RunOutput one = scattering_run(p, sp, bp, 1.0);
  CHECK(std::abs(std::abs(one.value("shift")) - 1.0) < 0.05);
  CHECK(one.value("transmission") > 0.99);
  CHECK(one.value("sp_speed_change") < 0.02);
  CHECK(one.value("norm_drift") < 1e-9);
  CHECK(one.value("momentum_drift") < 1e-8);
  for (const char* key : {"shift", "transmission", "reflection", "bp_center_before", "bp_center_after"}) {
    CHECK(one.has(key));
  }
  CHECK(one.table("snapshots").rows.size() >= 11u);
  CHECK(one.table("profile_t000").rows.size() == 201u);

  const RunOutput root2 = scattering_run(p, sp, bp, std::sqrt(2.0));
  CHECK(root2.value("reflection") > one.value("reflection"));
}

TEST_CASE("scattering approaches a full one-site shift when the pair is static") {
  const RunOutput out = scattering_run(LatticeParams(201, 1.0, 1000.0), {kPi / 2, 30.0, 2.0 / 15.0},
                                       {0.0, 101.0, 2.0 / 15.0}, 1.0);
  CHECK(std::abs(out.value("shift") + 1.0) < 0.01);
  CHECK(out.value("transmission") > 0.9999);
}

TEST_CASE("without the swap term the single particle bounces off the pair") {
  const RunOutput out = scattering_run(LatticeParams(201, 1.0, 20.0), {kPi / 2, 30.0, 2.0 / 15.0},
                                       {0.0, 101.0, 2.0 / 15.0}, 0.0);
  CHECK(out.value("transmission") < 1e-3);
}

TEST_CASE("scattering preconditions") {
  const LatticeParams p(201, 1.0, 20.0);
  CHECK_THROWS_AS(scattering_run(p, {kPi / 2, 30.0, 2.0 / 15.0}, {0.0, 70.0, 2.0 / 15.0}, 1.0), PreconditionError);
  CHECK_THROWS_AS(scattering_run(LatticeParams(55, 1.0, 20.0), {kPi / 2, 5.0, 0.4}, {0.0, 27.0, 0.4}, 1.0),
                  PreconditionError);
  CHECK_THROWS_AS(scattering_run(p, {0.0, 30.0, 2.0 / 15.0}, {0.0, 101.0, 2.0 / 15.0}, 1.0), PreconditionError);
  CHECK_THROWS_AS(scattering_run(LatticeParams(201, 1.0, 0.0), {kPi / 2, 30.0, 2.0 / 15.0},
                                 {0.0, 101.0, 2.0 / 15.0}, 1.0),
                  DomainError);
}

TEST_CASE("switch protocol with a strongly confined qubit") {
  const SwitchConfig cfg(161, 79, 1.0, 1e5, 1e3);
  const PacketSpec sp{kPi / 2, 40.0, 2.0 / 15.0};

  const RunOutput right = switch_run(cfg, QubitState::R(), 2, sp);
  CHECK(right.value("transmission_1") > 0.95);
  CHECK(right.value("transmission_2") < 0.05);
  CHECK(right.value("p_left") > 0.95);
  CHECK(right.value("norm_drift") < 1e-9);
  CHECK(right.table("packets").rows.size() == 2u);

  const RunOutput one = switch_run(cfg, QubitState::R(), 1, sp);
  CHECK(one.value("transmission") > 0.95);
  CHECK(one.value("p_left") > 0.95);

  const RunOutput left = switch_run(cfg, QubitState::L(), 1, sp);
  CHECK(left.value("reflection") > 0.95);
  CHECK(left.value("p_left") > 0.95);
  CHECK(left.value("reflected_k") < 0.0);
}

TEST_CASE("switch summaries are invariant under energy rescaling") {
  const PacketSpec sp{kPi / 2, 40.0, 2.0 / 15.0};
  const QubitState q = QubitState::superposition({0.6, 0.0}, {0.0, 0.8});
  const RunOutput base = switch_run(SwitchConfig(161, 79, 1.0, 100.0, 2.0, 0.5), q, 2, sp);
  const double x = 2.5;
  const RunOutput scaled = switch_run(SwitchConfig(161, 79, x, 100.0 * x, 2.0 * x, 0.5 * x), q, 2, sp);
  CHECK(scaled.value("t_stop") == doctest::Approx(base.value("t_stop") / x).epsilon(1e-14));
  for (const auto& [key, value] : base.summary) {
    if (key == "t_stop") continue;
    CHECK_MESSAGE(std::abs(scaled.value(key) - value) < 1e-8, key);
  }
}

TEST_CASE("switch preconditions") {
  const PacketSpec sp{kPi / 2, 40.0, 2.0 / 15.0};
  CHECK_THROWS_AS(switch_run(SwitchConfig(101, 49, 1.0, 100.0, 1.0), QubitState::R(), 1, sp), PreconditionError);
  CHECK_THROWS_AS(switch_run(SwitchConfig(161, 79, 1.0, 100.0, 1.0), QubitState::R(), 1, {-kPi / 2, 40.0, 0.2}),
                  PreconditionError);
  CHECK_THROWS_AS(switch_run(SwitchConfig(161, 79, 1.0, 100.0, 1.0), QubitState::R(), 0, sp), DomainError);
}

TEST_CASE("runs are deterministic") {
  const LatticeParams p(101, 1.0, 20.0);
  const PacketSpec sp{kPi / 2, 15.0, 0.25};
  const PacketSpec bp{0.0, 51.0, 0.25};
  const RunOutput a = scattering_run(p, sp, bp, 1.0);
  const RunOutput b = scattering_run(p, sp, bp, 1.0);
  REQUIRE(a.summary.size() == b.summary.size());
  for (std::size_t i = 0; i < a.summary.size(); ++i) CHECK(a.summary[i] == b.summary[i]);
}
