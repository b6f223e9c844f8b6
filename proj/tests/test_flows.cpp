#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "specsplit/cutoff.hpp"
#include "specsplit/diagnostics.hpp"
#include "specsplit/errors.hpp"
#include "specsplit/flows.hpp"

using namespace specsplit;

namespace {

CVector grid_values(const State& s) {
  const auto g = from_eigenbasis(s);
  return CVector(g.values().begin(), g.values().end());
}

CVector coeffs(const State& s) {
  const auto e = to_eigenbasis(s);
  CVector c(e.values().begin(), e.values().end());
  c.resize(s.hamiltonian()->size());
  return c;
}

double l2_diff(const Grid1D& g, const CVector& a, const CVector& b) {
  CVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return oracle::l2(g.spacing(), d);
}

CVector gaussian(const Grid1D& g, double x0, double width, double amp = 1.0) {
  CVector u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = (g.node(i) - x0) / width;
    u[i] = amp * std::exp(-0.5 * x * x);
  }
  return u;
}

HamiltonianPtr free_box(std::size_t n, double L) {
  return DiscretizedHamiltonian::build(Grid1D(n, L), TabulatedPotential{RVector(n, 0.0)});
}

}  // namespace

TEST_SUITE("flows") {
  TEST_CASE("nonlinear flow: identity at tau = 0 and constant-state closed form") {
    const auto h = oracle::harmonic(64, 6.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.5, -1.0});
    std::mt19937_64 rng(2);
    const auto u = State::on_grid(h, oracle::random_vector(64, rng));
    const auto same = nonlinear_flow(u, 0.0, pb);
    for (std::size_t i = 0; i < 64; ++i) CHECK(same.values()[i] == u.values()[i]);

    const double A = 1.7, tau = 0.3;
    const auto c = nonlinear_flow(State::on_grid(h, CVector(64, A)), tau, pb);
    const cplx expect = A * std::polar(1.0, -tau * (-1.0) * std::pow(A, 3.0));
    for (const auto& z : c.values()) CHECK(std::abs(z - expect) < 1e-14);
  }

  TEST_CASE("nonlinear flow: modulus, zero nodes and the semigroup law") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, GaussianPerturbation{0.8, 1.3}, {0.7, 1.0});
    std::mt19937_64 rng(8);
    auto v = oracle::random_vector(128, rng);
    v[10] = 0.0;
    const auto u = State::on_grid(h, v);
    const auto a = nonlinear_flow(nonlinear_flow(u, 0.2, pb), 0.45, pb);
    const auto b = nonlinear_flow(u, 0.65, pb);
    for (std::size_t i = 0; i < 128; ++i) {
      CHECK(std::abs(std::abs(b.values()[i]) - std::abs(v[i])) <= 1e-14 * std::abs(v[i]));
      CHECK(std::abs(a.values()[i] - b.values()[i]) <= 1e-12 * std::abs(v[i]));
    }
    CHECK(b.values()[10] == 0.0);
  }

  TEST_CASE("Lie step: zero stays zero, huge lambda is plain Lie") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, GaussianPerturbation{}, {1.0, 1.0});
    const auto p = CutoffProfile::exp_bump();
    const auto z = lie_step_cutoff(State::on_grid(h, CVector(128)), pb, 0.1, 10.0, p);
    for (const auto& v : z.values()) CHECK(v == 0.0);
    const auto u = State::on_grid(h, gaussian(h->grid(), 0.5, 1.0));
    const auto a = coeffs(lie_step_cutoff(u, pb, 0.1, 1e12, p));
    const auto b = coeffs(plain_lie_step(u, pb, 0.1));
    for (std::size_t j = 0; j < 128; ++j) CHECK(a[j] == b[j]);
  }

  TEST_CASE("Lie step on the ground state equals the hand-composed operators") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 1.0});
    const auto p = CutoffProfile::exp_bump();
    const double tau = 0.05, lambda = 20.0;
    const auto& phi = h->eigenvectors();
    const double dx = h->grid().spacing();
    // N(tau) Phi_0 pointwise, then Phi^T (dx *), then chi^2(mu/lambda) e^{-i tau mu}.
    Eigen::VectorXcd g(128);
    for (std::size_t i = 0; i < 128; ++i) g[i] = phi(i, 0) * std::polar(1.0, -tau * phi(i, 0) * phi(i, 0));
    const Eigen::VectorXcd c = dx * (phi.transpose().cast<cplx>() * g);
    const auto got = coeffs(lie_step_cutoff(State::from_coefficients(h, {1.0}), pb, tau, lambda, p));
    for (std::size_t j = 0; j < 128; ++j) {
      const double w = std::pow(chi(p, h->eigenvalues()[j] / lambda), 2);
      const cplx expect = w * std::polar(1.0, -tau * h->eigenvalues()[j]) * c[j];
      CHECK(std::abs(got[j] - expect) < 1e-12);
    }
  }

  TEST_CASE("run_scheme: first snapshot is the cut-off datum") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, GaussianPerturbation{}, {1.0, 1.0});
    std::mt19937_64 rng(6);
    const auto u0 = State::on_grid(h, oracle::random_vector(128, rng));
    SchemeConfig cfg;
    cfg.tau = 1.0 / 8.0;
    cfg.final_time = 1.0 / 8.0;
    const auto traj = run_scheme(u0, pb, cfg);
    REQUIRE(traj.snapshots.size() == 2);
    const auto cut = grid_values(apply_cutoff(u0, 8.0, cfg.profile));
    CHECK(l2_diff(h->grid(), grid_values(traj.snapshots[0].state), cut) < 1e-13);
    CHECK(traj.snapshots[0].time == 0.0);
    CHECK(traj.lambda == 8.0);
  }

  TEST_CASE("run_scheme: linear problem is the diagonal evolution") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 0.0});
    std::mt19937_64 rng(10);
    const auto u0 = State::on_grid(h, oracle::random_vector(128, rng));
    SchemeConfig cfg;
    cfg.tau = 1.0 / 32.0;
    cfg.stride = 8;
    const auto traj = run_scheme(u0, pb, cfg);
    const auto c0 = coeffs(u0);
    const auto cN = coeffs(traj.snapshots.back().state);
    const auto& mu = h->eigenvalues();
    for (std::size_t j = 0; j < 128; ++j) {
      const double w = std::pow(chi(cfg.profile, mu[j] * cfg.tau), 2);
      const cplx expect = std::pow(w, 33) * std::polar(1.0, -mu[j]) * c0[j];
      CHECK(std::abs(cN[j] - expect) < 1e-10);
    }
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
      CHECK(traj.snapshots[k].time == doctest::Approx(traj.snapshots[k].step * cfg.tau));
    CHECK(traj.snapshots.size() == 5);
  }

  TEST_CASE("mass never increases along the cutoff scheme") {
    const auto h = oracle::harmonic(256, 10.0);
    const auto pb = Problem::make(h, GaussianPerturbation{}, {1.0, 1.0});
    const auto u0 = State::on_grid(h, gaussian(h->grid(), 0.0, 1.0, 1.5));
    SchemeConfig cfg;
    cfg.tau = 1.0 / 64.0;
    const auto traj = run_scheme(u0, pb, cfg);
    REQUIRE(traj.mass.size() == 65);
    for (std::size_t n = 1; n < traj.mass.size(); ++n) CHECK(traj.mass[n] <= traj.mass[n - 1] * (1.0 + 1e-14));
    // Mass lost beyond the initial cutoff stays small next to the datum's mass above lambda.
    const auto c0 = coeffs(u0);
    double tail = 0.0;
    for (std::size_t j = 0; j < 256; ++j)
      if (h->eigenvalues()[j] > 64.0) tail += std::norm(c0[j]);
    CHECK(mass(u0) - traj.mass.back() <= tail + 1e-6 * mass(u0));
  }

  TEST_CASE("mass is exactly conserved when every mode sits on the plateau") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 0.0});
    // lambda = 16 keeps mu_0..mu_6 = 2..14 on the plateau.
    CVector c(7);
    for (std::size_t j = 0; j < 7; ++j) c[j] = cplx(1.0 / (j + 1.0), 0.1 * j);
    SchemeConfig cfg;
    cfg.tau = 1.0 / 16.0;
    const auto traj = run_scheme(State::from_coefficients(h, c), pb, cfg);
    for (double m : traj.mass) CHECK(m == doctest::Approx(traj.mass.front()).epsilon(1e-13));
  }

  TEST_CASE("Fourier splitting: free plane wave and identity") {
    const auto h = free_box(64, std::numbers::pi);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 0.0});
    const auto& g = h->grid();
    const double k = 5.0, tau = 0.013;
    CVector u(64);
    for (std::size_t i = 0; i < 64; ++i) u[i] = std::polar(1.0, k * g.node(i));
    const auto out = fourier_splitting_step(State::on_grid(h, u), pb, tau);
    // Gauged V = 1 contributes e^{-i tau}.
    for (std::size_t i = 0; i < 64; ++i)
      CHECK(std::abs(out.values()[i] - u[i] * std::polar(1.0, -tau * (k * k + h->gauge_shift()))) < 1e-13);
    const auto same = fourier_splitting_step(State::on_grid(h, u), pb, 0.0);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(same.values()[i] - u[i]) < 1e-14);
  }

  TEST_CASE("plain Lie reproduces the nonlinear plane wave") {
    const auto h = free_box(64, std::numbers::pi);
    const double A = 0.8, k = 3.0, tau = 0.01;
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 1.0});
    const auto& g = h->grid();
    CVector u(64);
    for (std::size_t i = 0; i < 64; ++i) u[i] = A * std::polar(1.0, k * g.node(i));
    SchemeConfig cfg;
    cfg.stepper = StepperKind::plain_lie;
    cfg.tau = tau;
    cfg.final_time = 0.5;
    const auto traj = run_scheme(State::on_grid(h, u), pb, cfg);
    for (const auto& s : traj.snapshots) {
      const double t = s.time;
      const cplx phase = std::polar(1.0, -t * (k * k + A * A + h->gauge_shift()));
      double worst = 0.0;
      for (std::size_t i = 0; i < 64; ++i) worst = std::max(worst, std::abs(s.state.values()[i] - u[i] * phase));
      CHECK(worst < 1e-10 * (1.0 + s.step));
    }
  }

  TEST_CASE("Fourier and cutoff Lie agree with each other on smooth data") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, GaussianPerturbation{}, {1.0, 1.0});
    const auto u0 = State::on_grid(h, gaussian(h->grid(), 0.0, 1.0));
    SchemeConfig cfg;
    cfg.final_time = 0.5;
    cfg.tau = 1.0 / 64.0;
    cfg.stepper = StepperKind::fourier_lie;
    const auto f = run_scheme(u0, pb, cfg);
    cfg.stepper = StepperKind::cutoff_lie;
    const auto c = run_scheme(u0, pb, cfg);
    const auto ref = strang_evolve(u0, pb, 0.5, 1.0 / 4096.0).final_state;
    const auto& g = h->grid();
    const double ef = l2_diff(g, grid_values(f.snapshots.back().state), grid_values(ref));
    const double ec = l2_diff(g, grid_values(c.snapshots.back().state), grid_values(ref));
    CHECK(ef < 5.0 * ec);
    CHECK(ec < 5.0 * ef);
    CHECK(ef < cfg.tau * 2.0);
  }

  TEST_CASE("Strang: linear exactness and T = 0") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 0.0});
    std::mt19937_64 rng(14);
    const auto u0 = State::on_grid(h, oracle::random_vector(128, rng));
    const auto s = strang_evolve(u0, pb, 1.0, 1.0 / 64.0).final_state;
    const auto exact = propagate(u0, 1.0);
    CHECK(l2_diff(h->grid(), grid_values(s), grid_values(exact)) <= 1e-10 * norm_sobolev(u0, SobolevNorm::L2));
    const auto zero = strang_evolve(u0, pb, 0.0, 1.0 / 64.0).final_state;
    CHECK(l2_diff(h->grid(), grid_values(zero), grid_values(u0)) == 0.0);
  }

  TEST_CASE("Strang reference: conservation and self-check") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {1.0, 1.0});
    const auto u0 = State::on_grid(h, gaussian(h->grid(), 0.3, 1.0));
    const auto ref = strang_reference(u0, pb, 1.0, 1.0 / 8192.0, 1.0 / 16.0);
    CHECK(ref.snapshots.size() == 17);
    CHECK(ref.self_check <= 1e-8);
    CHECK(ref.mass_drift <= 1e-10);
    CHECK(ref.energy_drift <= 1e-6);
    CHECK_THROWS_AS(strang_reference(u0, pb, 1.0, 1.0 / 16.0, 0.0), ReferenceUnreliable);
  }

  TEST_CASE("Strang reference is time reversible") {
    const auto h = oracle::harmonic(128, 8.0);
    const auto pb = Problem::make(h, GaussianPerturbation{}, {1.0, 1.0});
    const auto u0 = State::on_grid(h, gaussian(h->grid(), -0.4, 0.9));
    const double tau = 1.0 / 512.0;
    const auto fwd = strang_evolve(u0, pb, 1.0, tau).final_state;
    const auto back = strang_evolve(fwd, pb, -1.0, -tau).final_state;
    CHECK(l2_diff(h->grid(), grid_values(back), grid_values(u0)) <= 10.0 * 1e-8);
  }

  TEST_CASE("gauge test: V + c changes only a global phase") {
    Grid1D g(128, 8.0);
    const auto a = DiscretizedHamiltonian::build(g, HarmonicPotential{1.0, 1.0});
    const auto b = DiscretizedHamiltonian::build(g, HarmonicPotential{1.0, 3.5});
    REQUIRE(a->gauge_shift() == 0.0);
    REQUIRE(b->gauge_shift() == 0.0);
    const NonlinearitySpec nl{1.0, 1.0};
    const auto pa = Problem::make(a, GaussianPerturbation{}, nl), pbb = Problem::make(b, GaussianPerturbation{}, nl);
    const auto u0 = gaussian(g, 0.2, 1.1);
    SchemeConfig cfg;
    cfg.stepper = StepperKind::plain_lie;
    cfg.tau = 1.0 / 32.0;
    cfg.stride = 4;
    const auto ta = run_scheme(State::on_grid(a, u0), pa, cfg);
    const auto tb = run_scheme(State::on_grid(b, u0), pbb, cfg);
    REQUIRE(ta.snapshots.size() == tb.snapshots.size());
    for (std::size_t k = 0; k < ta.snapshots.size(); ++k) {
      const cplx phase = std::polar(1.0, -2.5 * ta.snapshots[k].time);
      for (std::size_t i = 0; i < 128; ++i) {
        const cplx x = ta.snapshots[k].state.values()[i], y = tb.snapshots[k].state.values()[i];
        CHECK(std::abs(std::abs(x) - std::abs(y)) < 1e-10);
        CHECK(std::abs(x * phase - y) < 1e-10);
      }
    }
  }

  TEST_CASE("focusing quintic data trips the blow-up guard") {
    const auto h = oracle::harmonic(256, 10.0);
    const auto pb = Problem::make(h, NoPerturbation{}, {2.0, -1.0});
    const auto u0 = State::on_grid(h, gaussian(h->grid(), 0.0, 0.5, 3.0));
    SchemeConfig cfg;
    cfg.stepper = StepperKind::plain_lie;
    cfg.tau = 1.0 / 256.0;
    cfg.blowup_factor = 4.0;
    try {
      run_scheme(u0, pb, cfg);
      FAIL("expected BlowupSuspected");
    } catch (const BlowupSuspected& e) {
      CHECK(e.step() > 0);
      CHECK(e.step() <= 256);
    }
  }

  TEST_CASE("scheme configuration checks") {
    SchemeConfig cfg;
    cfg.tau = 0.3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // T / tau not integral
    cfg.tau = 1.0 / 8.0;
    cfg.lambda_rule = LambdaRule{0.5, 1.0};
    CHECK_NOTHROW(cfg.validate());  // scaled rules may go below lambda tau = 1
    CHECK(cfg.lambda() == 4.0);
    cfg.stepper = StepperKind::plain_lie;
    CHECK(std::isinf(cfg.lambda()));
    CHECK(step_count(1.0, 1.0 / 1024.0) == 1024);
    CHECK(parse_stepper("fourier_lie") == StepperKind::fourier_lie);
    CHECK_THROWS_AS(parse_stepper("rk4"), ConfigError);
    CHECK(LambdaRule::parse("scaled:2:0.5") == LambdaRule{2.0, 0.5});
    CHECK(LambdaRule::parse(LambdaRule{2.0, 0.5}.name()) == LambdaRule{2.0, 0.5});
    CHECK_THROWS_AS(LambdaRule::parse("scaled:2"), ConfigError);
  }
}
