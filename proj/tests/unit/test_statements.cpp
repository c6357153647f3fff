#include <cmath>
#include <set>

#include "doctest.h"
#include "opmean/reference.hpp"
#include "opmean/statements.hpp"
#include "support.hpp"

using namespace opmean;

TEST_SUITE("statements") {

TEST_CASE("catalog") {
  std::set<std::string_view> ids;
  for (const auto& s : catalog()) ids.insert(s.id);
  CHECK(ids.size() == catalog().size());
  CHECK(ids.size() == 22);
  CHECK(ids.count("ando") == 1);
  CHECK(find_statement("q2sq").id == "q2");
  CHECK_FALSE(find_statement("Q").theorem);
  CHECK_THROWS_AS(find_statement("nope"), ConfigError);
  CHECK(default_config("q2sq", 2).p == 2.0);
  CHECK(default_config("q2", 2).p == 1.0);
}

TEST_CASE("every id resolves to a builder") {
  Rng rng(61);
  for (const auto& info : catalog()) {
    StatementConfig cfg = default_config(info.id, 3);
    cfg.n_matrices = 3;
    const auto x = draw_instance(cfg, rng);
    CHECK(x.size() == (info.arity == Arity::pair ? 2u : 3u));
    CHECK_NOTHROW(check(cfg, x));
  }
}

TEST_CASE("published counterexamples") {
  const auto xy = reference::squared_means_pair();
  StatementConfig q = default_config("Q", 2, xy.band);
  q.skip_band_check = true;
  const SymMatrix first[] = {xy.first, xy.second};
  const Verdict vq = check(q, first);
  CHECK_FALSE(vq.holds);
  CHECK(vq.gap_det < 0.0);
  CHECK(std::abs(vq.gap_det - (-0.0014)) <= 2e-3);
  CHECK(vq.coefficient == 1.125);

  const auto ab = reference::power_means_pair();
  StatementConfig q2 = default_config("q2sq", 2, ab.band);
  q2.skip_band_check = true;
  const SymMatrix second[] = {ab.first, ab.second};
  const Verdict v2 = check(q2, second);
  CHECK_FALSE(v2.holds);
  CHECK(std::abs(v2.gap_det - (-0.4111)) <= 5e-3);
  CHECK_FALSE(v2.hypotheses.ok);  // p = 2 is outside [0, 1]

  // Independent recomputation of the first determinant.
  const SymMatrix g = geometric_mean(xy.first, xy.second);
  const SymMatrix a = 0.5 * (xy.first + xy.second);
  const Matrix gg = g.to_matrix() * g.to_matrix(), aa = a.to_matrix() * a.to_matrix();
  const Matrix gap = 1.125 * gg - aa;
  CHECK(std::abs(gap(0, 0) * gap(1, 1) - gap(0, 1) * gap(1, 0) - vq.gap_det) < 1e-12);

  q.skip_band_check = false;
  CHECK_THROWS_AS(check(q, first), BandViolation);
}

TEST_CASE("trivial ando instance") {
  StatementConfig cfg = default_config("ando", 2);
  cfg.sigma = parse_mean("arithmetic");
  const SymMatrix x[] = {SymMatrix::identity(2), SymMatrix::identity(2)};
  const Verdict v = check(cfg, x);
  CHECK(v.holds);
  CHECK(v.gap_min_eig == 0.0);
}

TEST_CASE("verdicts agree with loewner_leq on the materialized sides") {
  Rng rng(62);
  for (const auto& info : catalog()) {
    StatementConfig cfg = default_config(info.id, 3);
    for (int k = 0; k < 5; ++k) {
      const auto x = draw_instance(cfg, rng);
      const Verdict v = check(cfg, x);
      const OrderVerdict o = loewner_leq(v.lhs, v.rhs, v.tol);
      CHECK(o.holds == v.holds);
      CHECK(o.gap_min_eig == v.gap_min_eig);
    }
  }
}

TEST_CASE("mond2 alpha equals the weighted Kantorovich constant") {
  Rng rng(63);
  for (double eps : {0.1, 0.3, 0.5, 0.8}) {
    StatementConfig cfg = default_config("mond2", 2, SpectralBand{0.5, 3.0});
    cfg.sigma = make_mean(RepresentingFunction::weighted_geometric(eps));
    const Verdict v = check(cfg, draw_instance(cfg, rng));
    REQUIRE(v.mp.has_value());
    CHECK(std::abs(v.mp->alpha - weighted_kantorovich(0.5 / 3.0, 3.0 / 0.5, eps)) <= 1e-8);
    CHECK(v.holds);
  }
}

TEST_CASE("unital maps are enforced") {
  StatementConfig cfg = default_config("t22-a", 2);
  cfg.phi = MapDescriptor::scale(2, 2.0);
  Rng rng(64);
  const auto x = draw_instance(cfg, rng);
  CHECK_THROWS_AS(check(cfg, x), HypothesisError);
  cfg.allow_broken_hypotheses = true;
  const Verdict v = check(cfg, x);
  CHECK_FALSE(v.hypotheses.ok);
  CHECK_FALSE(v.hypotheses.unitality_ok);

  StatementConfig ando = default_config("ando", 2);
  ando.phi = MapDescriptor::scale(2, 2.0);
  CHECK_NOTHROW(check(ando, x));
}

TEST_CASE("hypothesis checks") {
  auto failures = [](StatementConfig cfg) { return check_hypotheses(cfg).failures.size(); };
  StatementConfig cfg = default_config("t210", 2);
  CHECK(failures(cfg) == 0);
  cfg.sigma = parse_mean("geometric:0.2");
  CHECK(failures(cfg) == 1);
  cfg.f = ScalarFunction::exp_minus_one();
  CHECK(failures(cfg) == 2);

  cfg = default_config("aahh", 2);
  cfg.f = ScalarFunction::power(2.0);
  CHECK(failures(cfg) == 1);
  cfg.f = ScalarFunction::power(0.5);
  cfg.sigma = parse_mean("harmonic:0.3");
  CHECK(failures(cfg) == 1);

  cfg = default_config("mp-gamma", 2);
  cfg.g = ScalarFunction::power(2.0);
  CHECK(failures(cfg) == 1);

  cfg = default_config("c-multi", 2);
  cfg.g = ScalarFunction::exp_minus_one();
  CHECK(failures(cfg) == 1);

  cfg = default_config("q2", 2);
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    cfg.p = p;
    CHECK(failures(cfg) == 0);
  }
  cfg.p = 2.0;
  CHECK(failures(cfg) == 1);

  cfg = default_config("c27", 3);
  cfg.psi = MapDescriptor::parse("compress:2", 3);
  CHECK_THROWS_AS(check_hypotheses(cfg), ConfigError);
}

TEST_CASE("input validation") {
  StatementConfig cfg = default_config("ando", 2);
  const SymMatrix one[] = {SymMatrix::identity(2)};
  CHECK_THROWS_AS(check(cfg, one), ConfigError);
  const SymMatrix wrong[] = {SymMatrix::identity(3), SymMatrix::identity(3)};
  CHECK_THROWS_AS(check(cfg, wrong), DimensionError);
  StatementConfig multi = default_config("ragm", 2);
  CHECK_THROWS_AS(check(multi, one), ConfigError);
}

TEST_CASE("trials are deterministic and thread independent") {
  StatementConfig cfg = default_config("hoa", 3);
  cfg.sigma = parse_mean("harmonic");
  cfg.phi = MapDescriptor::parse("mix:0.5", 3);
  const TrialReport a = run_trials(cfg, 200, 99);
  const TrialReport b = run_trials(cfg, 200, 99, TrialOptions{4, 5});
  CHECK(a.violations == 0);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.violations == b.violations);
  const TrialReport c = run_trials(cfg, 200, 100);
  CHECK(c.worst_margin != a.worst_margin);
}

TEST_CASE("trials sample inside the band, pinned about half the time") {
  StatementConfig cfg = default_config("ando", 3, SpectralBand{1.0, 4.0});
  int pinned = 0, total = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = trial_stream(5, i);
    for (const auto& a : draw_instance(cfg, rng)) {
      const auto ev = eigenvalues(a);
      CHECK(ev.front() >= 1.0 - 1e-10);
      CHECK(ev.back() <= 4.0 + 1e-10);
      pinned += std::abs(ev.front() - 1.0) < 1e-12 && std::abs(ev.back() - 4.0) < 1e-12;
      ++total;
    }
  }
  CHECK(pinned > total / 3);
  CHECK(pinned < 2 * total / 3);
}

TEST_CASE("broken hypotheses reject every trial") {
  StatementConfig cfg = default_config("aahh", 2);
  cfg.f = ScalarFunction::power(3.0);
  const TrialReport r = run_trials(cfg, 300, 1);
  CHECK(r.rejected == 300);
  CHECK(r.violations == 0);
  CHECK(r.rejected_violations > 0);
  CHECK_FALSE(r.hypotheses.ok);
}

TEST_CASE("theorem statements hold on seeded trials") {
  for (const char* id : {"ando", "ps-1.1", "t22-a", "t22-d", "c23-b", "c27", "mond2", "mp-gamma", "hoa",
                         "t210", "aahh", "add-reverse"}) {
    for (std::size_t dim = 2; dim <= 4; ++dim) {
      StatementConfig cfg = default_config(id, dim, SpectralBand{0.5, 3.0});
      cfg.sigma = parse_mean("harmonic");
      const TrialReport r = run_trials(cfg, 50, dim);
      CHECK_MESSAGE(r.violations == 0, id << " dim " << dim);
      CHECK(r.rejected == 0);
    }
  }
  StatementConfig cfg = default_config("yamazaki", 2);
  cfg.n_matrices = 3;
  CHECK(run_trials(cfg, 30, 3).violations == 0);
}

}  // TEST_SUITE
