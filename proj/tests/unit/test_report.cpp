#include "doctest.h"
#include "opmean/report.hpp"
#include "support.hpp"

using namespace opmean;

TEST_SUITE("report") {

TEST_CASE("matrices round trip exactly") {
  Rng rng(71);
  for (int k = 0; k < 50; ++k) {
    const SymMatrix a = testing::random_symmetric(1 + k % 4, rng, 1e-3 + k);
    CHECK(symmat_from_json(Json::parse(to_json(a).dump())) == a);
  }
  const Json j = to_json(SymMatrix{{0.1}});
  CHECK(j[0][0].get<std::string>() == "0.10000000000000001");
  CHECK_THROWS_AS(symmat_from_json(Json::parse(R"([["1", "x"], ["0", "1"]])")), ConfigError);
  CHECK_THROWS_AS(symmat_from_json(Json::parse(R"([["1", "0"], ["1"]])")), ConfigError);
}

TEST_CASE("maps round trip") {
  Rng rng(72);
  const std::vector<MapDescriptor> maps{
      MapDescriptor::identity(3), MapDescriptor::normalized_trace(3), MapDescriptor::scale(3, 0.5),
      MapDescriptor::parse("pinch:1", 3), MapDescriptor::parse("compress:2", 3),
      MapDescriptor::parse("mix:0.25", 3), unitalize(MapDescriptor::scale(3, 2.0))};
  const SymMatrix a = testing::random_gram(3, rng);
  for (const auto& phi : maps) {
    const MapDescriptor back = map_from_json(Json::parse(to_json(phi).dump()));
    CHECK(back.kind() == phi.kind());
    CHECK(back.name() == phi.name());
    CHECK(distance(back.apply(a), phi.apply(a)) <= 1e-15 * (1.0 + a.frobenius()));
  }
  CHECK_THROWS_AS(map_from_json(Json{{"kind", "rotate"}}), ConfigError);
}

TEST_CASE("configs round trip") {
  StatementConfig cfg = default_config("t22-b", 3, SpectralBand{0.4, 3.0});
  cfg.f = ScalarFunction::parse("scaled-power:2:0.5");
  cfg.g = ScalarFunction::exp_minus_one();
  cfg.sigma = parse_mean("harmonic:0.3");
  cfg.tau = parse_mean("arithmetic");
  cfg.phi = MapDescriptor::parse("mix:0.6", 3);
  cfg.p = 0.75;
  cfg.n_matrices = 4;
  cfg.skip_band_check = true;
  const Json j = to_json(cfg);
  const StatementConfig back = config_from_json(Json::parse(j.dump()));
  CHECK(to_json(back) == j);
  CHECK(back.band == cfg.band);
  CHECK(back.sigma.h(2.0) == cfg.sigma.h(2.0));
}

TEST_CASE("witnesses and run reports round trip") {
  StatementConfig cfg = default_config("q2", 2, SpectralBand{0.4, 3.0});
  cfg.p = 2.0;
  cfg.allow_broken_hypotheses = true;
  const FalsifyReport r = run_falsifier(cfg, 100, 3);
  REQUIRE(r.witness.has_value());
  const Json wj = to_json(*r.witness);
  const Witness w = witness_from_json(Json::parse(wj.dump()));
  CHECK(w.matrices == r.witness->matrices);
  CHECK(w.gap_min_eig == r.witness->gap_min_eig);
  CHECK(recheck(w).gap_min_eig == r.witness->gap_min_eig);

  RunReport run;
  run.command = {"falsify", "q2", "--p", "2"};
  run.statement_id = "q2";
  run.config = to_json(cfg);
  run.result = to_json(r);
  const std::string text = dump(to_json(run));
  CHECK(text.back() == '\n');
  const RunReport back = run_report_from_json(Json::parse(text));
  CHECK(dump(to_json(back)) == text);
  CHECK_FALSE(back.wall_time_ms.has_value());

  run.wall_time_ms = 12.5;
  CHECK(run_report_from_json(to_json(run)).wall_time_ms == 12.5);
}

TEST_CASE("reports are byte-identical across runs") {
  StatementConfig cfg = default_config("hoa", 3);
  const std::string a = dump(to_json(run_trials(cfg, 100, 8)));
  const std::string b = dump(to_json(run_trials(cfg, 100, 8, TrialOptions{3, 5})));
  CHECK(a == b);
}

TEST_CASE("reproduction report") {
  const Json j = to_json(reference::reproduce());
  CHECK(j["all_pass"].get<bool>());
  CHECK(j["rows"].size() == 6);
  CHECK_FALSE(j["bands"][0]["pass"].get<bool>());
  CHECK_FALSE(j["bands"][1]["pass"].get<bool>());
}

}  // TEST_SUITE
