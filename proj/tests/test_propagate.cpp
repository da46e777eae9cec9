#include <doctest.h>

#include <cmath>

#include "lzbec/formula.hpp"
#include "lzbec/model.hpp"
#include "lzbec/propagate.hpp"

using namespace lzbec;

TEST_CASE("sweep_window honors the separation invariant") {
  auto p = ModelParams::with_g(0.2, -1.0, 10, 0.1);
  auto w = sweep_window(p, 40.0, 101);
  CHECK(w.t_start == doctest::Approx(-400.0));
  CHECK(w.t_end == doctest::Approx(400.0));
  CHECK_NOTHROW(validate_window(p, w, 40.0));

  SweepWindow bad{-10.0, 10.0, 101};
  CHECK_THROWS_AS(validate_window(p, bad, 40.0), std::invalid_argument);
  SweepWindow shape{10.0, 400.0, 101};
  CHECK_THROWS_AS(validate_window(p, shape, 0.0), std::invalid_argument);
}

TEST_CASE("zero coupling is fully diabatic") {
  // |psi1| is conserved exactly at v=0; the tight tolerance keeps the
  // stepper's modulus drift below the 1e-9 budget over the window
  auto p = ModelParams::with_g(0.0, -1.0, 1, 0.5);
  IntegratorConfig cfg;
  cfg.rel_tol = cfg.abs_tol = 1e-13;
  auto rec = integrate_meanfield(p, sweep_window(p, 40.0, 51), cfg);
  CHECK(std::fabs(rec.p_lz - 1.0) < 1e-9);

  // the many-body interaction picture is exactly stationary at v=0
  auto q = ModelParams::with_g(0.0, -1.0, 7, 0.1);
  auto mb = integrate_manybody(q, sweep_window(q, 40.0, 51));
  CHECK(std::fabs(mb.p_lz - 1.0) < 1e-12);
}

TEST_CASE("meanfield linear limit reproduces exp(-pi v^2/alpha)") {
  auto p = ModelParams::with_g(0.2, 0.0, 1, 0.1);
  auto rec = integrate_meanfield(p, sweep_window(p, 40.0, 101));
  CHECK(rec.p_lz == doctest::Approx(0.2846095433).epsilon(1e-4));
  // norm series stays pinned
  CHECK((rec.norm.array() - 1.0).abs().maxCoeff() < 1e-6);
  CHECK(rec.times.size() == 101);
  CHECK(rec.n1.minCoeff() >= 0.0);
  CHECK(rec.n1.maxCoeff() <= 1.0 + 1e-9);
}

TEST_CASE("meanfield keeps a finite transfer in the near-adiabatic regime") {
  // supercritical attraction: the probability plateaus near x_c instead of
  // collapsing to zero as alpha -> 0
  auto p = ModelParams::with_g(0.2, -1.0, 1, 0.005);
  auto rec = integrate_meanfield(p, sweep_window(p, 40.0, 51));
  CHECK(rec.p_lz > 0.25);
  CHECK(rec.p_lz < 0.6);
}

TEST_CASE("manybody: N=1 equals the exact linear value") {
  auto p = ModelParams::with_gbar(0.2, -0.3, 1, 0.1);  // gbar inert at N=1
  auto rec = integrate_manybody(p, sweep_window(p, 40.0, 101));
  CHECK(rec.p_lz == doctest::Approx(0.2846095433).epsilon(1e-4));
  CHECK((rec.norm.array() - 1.0).abs().maxCoeff() < 1e-6);
}

TEST_CASE("manybody: noninteracting bosons reproduce the single-particle value") {
  auto p1 = ModelParams::with_gbar(0.2, 0.0, 1, 0.1);
  auto p12 = ModelParams::with_gbar(0.2, 0.0, 12, 0.1);
  const double single = integrate_manybody(p1, sweep_window(p1, 40.0, 51)).p_lz;
  const double many = integrate_manybody(p12, sweep_window(p12, 40.0, 51)).p_lz;
  CHECK(std::fabs(many - single) < 1e-6);
  CHECK(single == doctest::Approx(plz_linear(0.2, 0.1)).epsilon(1e-4));
}

TEST_CASE("manybody population stays within [0, N]") {
  auto p = ModelParams::with_g(0.2, -1.0, 20, 0.1);
  auto rec = integrate_manybody(p, sweep_window(p, 40.0, 101));
  CHECK(rec.n1.minCoeff() >= 0.0);
  CHECK(rec.n1.maxCoeff() <= 20.0 + 1e-9);
  CHECK(rec.final_state.size() == 21);
  // lab-frame final state norm
  CHECK(rec.final_state.squaredNorm() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("doubling the window factor moves p_lz by less than 1e-3") {
  auto p = ModelParams::with_g(0.2, -1.0, 1, 0.1);
  const double p40 = integrate_meanfield(p, sweep_window(p, 40.0, 51)).p_lz;
  const double p80 = integrate_meanfield(p, sweep_window(p, 80.0, 51)).p_lz;
  CHECK(std::fabs(p80 - p40) < 1e-3);

  auto q = ModelParams::with_g(0.2, -1.0, 8, 0.1);
  const double q40 = integrate_manybody(q, sweep_window(q, 40.0, 51)).p_lz;
  const double q80 = integrate_manybody(q, sweep_window(q, 80.0, 51)).p_lz;
  CHECK(std::fabs(q80 - q40) < 1e-3);
}

TEST_CASE("adaptive and fixed-step integrators agree on the reference case") {
  // g=-1, v=0.2, N=20, alpha=0.05; the fixed step must resolve the fastest
  // interaction-picture phase rate 2*alpha*t_edge = 80 rad per unit time
  auto p = ModelParams::with_g(0.2, -1.0, 20, 0.05);
  auto w = sweep_window(p, 40.0, 51);
  IntegratorConfig adaptive;
  const double p45 = integrate_manybody(p, w, adaptive).p_lz;
  IntegratorConfig fixed;
  fixed.method = StepperMethod::FixedRK4;
  fixed.max_step = 2.5e-4;
  const double p4 = integrate_manybody(p, w, fixed).p_lz;
  CHECK(std::fabs(p45 - p4) < 1e-4);
}

TEST_CASE("bare asymptotics reproduce the literal endpoint ratio") {
  auto p = ModelParams::with_g(0.2, 0.0, 1, 0.1);
  IntegratorConfig cfg;
  cfg.asymptotics = AsymptoticHandling::Bare;
  auto rec = integrate_meanfield(p, sweep_window(p, 40.0, 51), cfg);
  // raw endpoint carries the O(v/(2 eps_edge)) interference residue
  CHECK(rec.p_lz == doctest::Approx(plz_linear(0.2, 0.1)).epsilon(0.05));
  CHECK(rec.p_lz == doctest::Approx(std::norm(rec.final_state[0])).epsilon(1e-12));
}

TEST_CASE("step-size underflow is reported with the failure time") {
  auto p = ModelParams::with_g(0.2, -1.0, 1, 0.1);
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-300;
  cfg.abs_tol = 1e-300;
  CHECK_THROWS_AS(integrate_meanfield(p, sweep_window(p, 40.0, 11), cfg),
                  IntegrationError);
}

TEST_CASE("norm drift beyond 1e-6 rejects the integration") {
  auto p = ModelParams::with_g(0.2, -1.0, 5, 0.1);
  IntegratorConfig cfg;
  cfg.method = StepperMethod::FixedRK4;
  cfg.max_step = 2.0;  // far too coarse for the edge phases
  CHECK_THROWS_AS(integrate_manybody(p, sweep_window(p, 40.0, 51), cfg),
                  IntegrationError);
}

TEST_CASE("expectation_n1") {
  ManyBodyState s;
  s.coeffs = Eigen::VectorXcd::Zero(6);
  s.coeffs[5] = 1.0;
  CHECK(expectation_n1(s) == doctest::Approx(5.0));

  s.coeffs.setZero();
  s.coeffs[0] = s.coeffs[5] = 1.0 / std::sqrt(2.0);
  CHECK(expectation_n1(s) == doctest::Approx(2.5));

  // binomial amplitudes of a coherent 50/50 split average to N/2
  const int n = 12;
  s.coeffs = Eigen::VectorXcd::Zero(n + 1);
  double binom = 1.0;  // C(n, 0)
  for (int k = 0; k <= n; ++k) {
    s.coeffs[k] = std::sqrt(binom / std::pow(2.0, n));
    binom *= double(n - k) / (k + 1);
  }
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation_n1(s) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("run_sweep_grid") {
  auto base = ModelParams::with_g(0.2, 0.0, 4, 0.1);

  SUBCASE("a single-element grid equals direct calls") {
    auto grid = run_sweep_grid(base, SweepAxis::Alpha, {0.1}, 40.0, 51, {}, 1);
    REQUIRE(grid.size() == 1);
    CHECK(grid[0].ok());
    auto w = sweep_window(base, 40.0, 51);
    CHECK(grid[0].p_lz_meanfield ==
          doctest::Approx(integrate_meanfield(base, w).p_lz).epsilon(1e-12));
    CHECK(grid[0].p_lz_manybody ==
          doctest::Approx(integrate_manybody(base, w).p_lz).epsilon(1e-12));
  }

  SUBCASE("points are ordered by input and computed concurrently") {
    std::vector<double> alphas{0.5, 0.25, 0.125, 0.4, 0.2};
    auto grid = run_sweep_grid(base, SweepAxis::Alpha, alphas, 40.0, 21, {}, 4);
    REQUIRE(grid.size() == alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      CHECK(grid[i].value == alphas[i]);
      CHECK(grid[i].ok());
      CHECK(grid[i].p_lz_meanfield ==
            doctest::Approx(plz_linear(0.2, alphas[i])).epsilon(2e-3));
    }
  }

  SUBCASE("a failing point is marked, others survive") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-300;  // forces step underflow on every point
    cfg.abs_tol = 1e-300;
    auto grid = run_sweep_grid(base, SweepAxis::Alpha, {0.5}, 40.0, 11, cfg, 1);
    REQUIRE(grid.size() == 1);
    CHECK_FALSE(grid[0].ok());
    CHECK(std::isnan(grid[0].p_lz_meanfield));

    auto mixed = run_sweep_grid(base, SweepAxis::N, {2.0, 2.5, 3.0}, 40.0, 11, {}, 2);
    CHECK(mixed[0].ok());
    CHECK_FALSE(mixed[1].ok());  // non-integer particle number
    CHECK(mixed[2].ok());
  }
}
