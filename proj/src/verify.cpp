#include "tanhsim/verify.hpp"

#include <random>

#include "tanhsim/presets.hpp"
#include "tanhsim/scan.hpp"

namespace tanhsim {
namespace {

// Oracle tolerances: two orders below the tightest bar.
constexpr double kOracleTol = 1e-12;
constexpr double kRabiOracleTol = 1e-13;

struct Job {
  std::string name;
  ModelParams params;
  double t0;
  double t1;
  int points;
  CompareModel model;
  double bar;
};

std::vector<Job> corpus(bool quick, std::uint64_t seed) {
  std::vector<Job> jobs;
  for (const char* name : {"fig2a1", "fig2a2", "fig3b1", "fig3b2", "fig4c1", "fig4c2", "fig7a", "fig8a"}) {
    const Preset& p = *find_preset(name);
    jobs.push_back({p.name, p.params, p.t0, p.t1, p.points, p.model, p.bar});
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const int random_cases = quick ? 4 : 24;
  for (int k = 0; k < random_cases; ++k) {
    ModelParams p;
    p.P = draw(0.5, 10.0);
    p.alpha = draw(0.5, 2.0);
    p.beta = draw(-2.0, 2.0);
    p.kappa = draw(0.0, 6.0);
    p.delta = draw(0.0, 1.0);
    const double half = 3.0 / p.alpha;
    jobs.push_back({"random" + std::to_string(k), p, -half, half, quick ? 50 : 100, CompareModel::Tanh, 1e-6});
  }
  return jobs;
}

}  // namespace

VerifyReport run_verify(bool quick, std::uint64_t seed, int workers) {
  const std::vector<Job> jobs = corpus(quick, seed);
  std::vector<CompareReport> reports(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t k) {
    const Job& j = jobs[k];
    SolverSettings s;
    s.solver = Solver::Both;
    s.rel_tol = s.abs_tol = j.model == CompareModel::Rabi ? kRabiOracleTol : kOracleTol;
    reports[k] = run_compare(j.params, j.t0, j.t1, j.points, j.model, s, j.bar);
  });
  VerifyReport out;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const CompareReport& r = reports[k];
    out.cases.push_back({jobs[k].name, r.max_deviation, r.bar, r.pass});
    for (const auto& w : r.warnings) out.warnings.push_back(jobs[k].name + ": " + w);
    out.pass = out.pass && r.pass;
  }
  return out;
}

}  // namespace tanhsim
