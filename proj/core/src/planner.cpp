#include <landflow/planner.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace landflow {

SeededStream::SeededStream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (auto id : ids) {
    words.push_back(static_cast<std::uint32_t>(id));
    words.push_back(static_cast<std::uint32_t>(id >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double SeededStream::uniform() {
  // 53 random bits; std::uniform_real_distribution is not portable bit-for-bit.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace {

double config_diameter(const std::vector<double>& a, const std::vector<double>& b, std::size_t d) {
  std::vector<double> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return std::max(LandmarkConfig::from_flat(d, all, -1.0).diameter(), 1e-12);
}

double max_landmark_error(const std::vector<double>& r, std::size_t d) {
  double worst = 0.0;
  for (std::size_t off = 0; off < r.size(); off += d) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += r[off + j] * r[off + j];
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

ControlSchedule schedule_from(std::size_t d, const Eigen::VectorXd& theta) {
  ControlSchedule s(d);
  for (Eigen::Index k = 0; k < theta.size(); ++k) s.push_back(k % 2 == 0 ? Generator::x : Generator::y, theta[k]);
  return s;
}

// One shooting problem: steer `start` onto `goal` with a fixed number of legs.
// Weight of the pairwise-distance residuals relative to the goal diameter.
constexpr double kSpreadWeight = 0.3;

double distance(const std::vector<double>& s, std::size_t a, std::size_t b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < d; ++j) acc += (s[a * d + j] - s[b * d + j]) * (s[a * d + j] - s[b * d + j]);
  return std::sqrt(acc);
}

class Stage {
 public:
  Stage(const FlowEngine& engine, std::vector<double> start, std::vector<double> goal, double penalty,
        std::size_t workers)
      : engine_(engine), start_(std::move(start)), goal_(std::move(goal)), penalty_(penalty), workers_(workers) {
    const std::size_t d = engine_.dim();
    const std::size_t n = goal_.size() / d;
    double diam = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        spread_.push_back(distance(goal_, a, b, d));
        diam = std::max(diam, spread_.back());
      }
    }
    spread_weight_ = kSpreadWeight * diam;
  }

  struct Eval {
    Eigen::VectorXd r;
    bool ok;
    std::vector<double> state;
  };

  Eval evaluate(const Eigen::VectorXd& theta) const {
    const FlowResult fr = engine_.run(schedule_from(engine_.dim(), theta), start_);
    const std::size_t m = goal_.size();
    Eval e{Eigen::VectorXd(static_cast<Eigen::Index>(m + spread_.size())), fr.ok(), fr.final_state};
    for (std::size_t i = 0; i < m; ++i) {
      e.r[static_cast<Eigen::Index>(i)] = fr.ok() ? fr.final_state[i] - goal_[i] : penalty_;
    }
    // Log-ratios of pairwise distances to the goal's; zero at any exact
    // solution, unbounded when the flow squeezes landmarks together.
    const std::size_t d = engine_.dim();
    const std::size_t n = m / d;
    std::size_t q = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b, ++q) {
        double v = penalty_;
        if (fr.ok()) {
          const double dist = distance(fr.final_state, a, b, d);
          v = dist > 0 ? spread_weight_ * std::log(dist / spread_[q]) : penalty_;
          if (!std::isfinite(v) || std::abs(v) > penalty_) v = penalty_;
        }
        e.r[static_cast<Eigen::Index>(m + q)] = v;
      }
    }
    return e;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& theta) const {
    const Eigen::Index p = theta.size();
    Eigen::MatrixXd J(static_cast<Eigen::Index>(goal_.size() + spread_.size()), p);
    auto column = [&](Eigen::Index k) {
      const double h = 1e-6 * std::max(1.0, std::abs(theta[k]));
      Eigen::VectorXd tp = theta, tm = theta;
      tp[k] += h;
      tm[k] -= h;
      const Eval ep = evaluate(tp);
      const Eval em = evaluate(tm);
      if (ep.ok && em.ok) {
        J.col(k) = (ep.r - em.r) / (2 * h);
      } else {
        J.col(k).setZero();
      }
    };
    const std::size_t workers = std::min<std::size_t>(std::max<std::size_t>(workers_, 1), static_cast<std::size_t>(p));
    if (workers <= 1) {
      for (Eigen::Index k = 0; k < p; ++k) column(k);
    } else {
      // Columns are independent, so the split does not affect the values.
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (auto k = static_cast<Eigen::Index>(w); k < p; k += static_cast<Eigen::Index>(workers)) column(k);
        });
      }
      for (auto& t : pool) t.join();
    }
    return J;
  }

  std::size_t dim() const { return engine_.dim(); }
  std::size_t goal_size() const { return goal_.size(); }

 private:
  const FlowEngine& engine_;
  std::vector<double> start_;
  std::vector<double> goal_;
  std::vector<double> spread_;
  double spread_weight_ = 0.0;
  double penalty_;
  std::size_t workers_;
};

struct RunResult {
  Eigen::VectorXd theta;
  double error = std::numeric_limits<double>::infinity();
  std::vector<double> state;
  std::size_t iterations = 0;
  std::vector<double> costs;
};

// Levenberg-Marquardt with Marquardt's diagonal scaling and Nielsen's damping update.
RunResult levenberg_marquardt(const Stage& stage, Eigen::VectorXd theta, double tol, std::size_t max_iterations) {
  RunResult out;
  Stage::Eval cur = stage.evaluate(theta);
  double cost = 0.5 * cur.r.squaredNorm();
  auto error_of = [&](const Stage::Eval& e) {
    return e.ok ? max_landmark_error(std::vector<double>(e.r.data(), e.r.data() + stage.goal_size()), stage.dim())
                : std::numeric_limits<double>::infinity();
  };
  out.theta = theta;
  out.error = error_of(cur);
  out.state = cur.state;
  out.costs.push_back(cost);

  double lambda = 1e-3;
  double nu = 2.0;
  std::size_t stalled = 0;
  for (std::size_t it = 0; it < max_iterations && out.error >= tol; ++it) {
    ++out.iterations;
    const Eigen::MatrixXd J = stage.jacobian(theta);
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * cur.r;
    if (!g.allFinite() || g.norm() == 0.0) break;
    Eigen::VectorXd diag = A.diagonal().cwiseMax(1e-12 * std::max(1.0, A.diagonal().maxCoeff()));

    bool accepted = false;
    while (!accepted && lambda < 1e14) {
      Eigen::MatrixXd M = A;
      M.diagonal() += lambda * diag;
      const Eigen::VectorXd step = M.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= nu;
        nu *= 2;
        continue;
      }
      const Eigen::VectorXd trial = theta + step;
      const Stage::Eval next = stage.evaluate(trial);
      const double next_cost = 0.5 * next.r.squaredNorm();
      const double predicted = -(step.dot(g) + 0.5 * step.dot(A * step));
      const double rho = predicted > 0 ? (cost - next_cost) / predicted : -1.0;
      if (next.ok && next_cost < cost && rho > 0) {
        const double rel = (cost - next_cost) / cost;
        stalled = rel < 1e-10 ? stalled + 1 : 0;
        theta = trial;
        cur = next;
        cost = next_cost;
        lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2 * rho - 1, 3));
        nu = 2.0;
        accepted = true;
      } else {
        lambda *= nu;
        nu *= 2;
      }
    }
    if (!accepted || stalled >= 5) break;
    out.costs.push_back(cost);
    const double err = error_of(cur);
    if (err < out.error) {
      out.error = err;
      out.theta = theta;
      out.state = cur.state;
    }
  }
  return out;
}

Eigen::VectorXd random_durations(SeededStream& rng, std::size_t pairs, double rx, double ry) {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(2 * pairs));
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    const double r = k % 2 == 0 ? rx : ry;
    theta[k] = rng.uniform(-r, r);
  }
  return theta;
}

// Straight-line waypoints (1 - tau) x + tau y, nudged off collisions.
std::vector<std::vector<double>> waypoints(const SteeringProblem& prob, std::size_t kappa, double diam,
                                           bool& ok) {
  const std::size_t d = prob.source.dim();
  const auto& x = prob.source.flat();
  const auto& y = prob.target.flat();
  std::vector<std::vector<double>> out;
  ok = true;
  for (std::size_t k = 1; k <= kappa; ++k) {
    const double tau = static_cast<double>(k) / static_cast<double>(kappa);
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = (1 - tau) * x[i] + tau * y[i];
    if (k < kappa) {
      bool distinct = true;
      try {
        LandmarkConfig::from_flat(d, w, prob.flow.min_separation);
      } catch (const std::invalid_argument&) {
        distinct = false;
      }
      if (!distinct) {
        // Orthogonal jitter: shift each landmark along a coordinate it does not share.
        for (std::size_t i = 0; i < w.size() / d; ++i) {
          w[i * d + (d > 1 ? (i % (d - 1)) + 1 : 0)] += 1e-3 * diam * static_cast<double>(i + 1);
        }
        try {
          LandmarkConfig::from_flat(d, w, prob.flow.min_separation);
        } catch (const std::invalid_argument&) {
          ok = false;
        }
        if (d == 1 && ok) {
          const LandmarkConfig wc = LandmarkConfig::from_flat(1, w);
          if (!same_order_component(prob.source, wc)) ok = false;
        }
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

ResidualEval residual(const ControlSchedule& sched, const SteeringProblem& prob) {
  const std::size_t d = prob.source.dim();
  if (sched.dim() != d || prob.target.dim() != d) throw std::invalid_argument("residual: dimensions differ");
  if (prob.source.size() != prob.target.size()) throw std::invalid_argument("residual: landmark counts differ");
  FlowOptions fo = prob.flow;
  fo.bound = prob.bound;
  fo.record_trajectory = false;
  const FlowResult fr = FlowEngine(d, fo).run(sched, prob.source.flat());
  ResidualEval out;
  out.status = fr.status;
  out.final_state = fr.final_state;
  const auto& y = prob.target.flat();
  out.r.resize(y.size());
  if (fr.ok()) {
    for (std::size_t i = 0; i < y.size(); ++i) out.r[i] = fr.final_state[i] - y[i];
    out.max_error = max_landmark_error(out.r, d);
  } else {
    const double penalty = 1e3 * config_diameter(prob.source.flat(), y, d);
    std::fill(out.r.begin(), out.r.end(), penalty);
    out.max_error = std::numeric_limits<double>::infinity();
  }
  return out;
}

SteeringSolution solve(const SteeringProblem& prob) {
  const std::size_t d = prob.source.dim();
  const std::size_t n = prob.source.size();
  if (prob.target.dim() != d) throw std::invalid_argument("solve: source and target dimensions differ");
  if (prob.target.size() != n) throw std::invalid_argument("solve: source and target landmark counts differ");
  if (!(prob.tol > 0)) throw std::invalid_argument("solve: tolerance must be positive");

  SteeringSolution sol{ControlSchedule(d), 0.0, false, false, {}, 0, 0, 0, 1, {}, {}};
  if (d == 1 && !same_order_component(prob.source, prob.target)) {
    sol.rejected = true;
    sol.residual = std::numeric_limits<double>::infinity();
    sol.message =
        "rejected: in one dimension flows preserve the order of landmarks, and the target order differs from the "
        "source order";
    return sol;
  }

  auto finish = [&](ControlSchedule s) {
    const ResidualEval check = residual(s, prob);
    sol.schedule = std::move(s);
    sol.residual = check.max_error;
    sol.final_state = check.final_state;
    sol.converged = check.status == FlowStatus::ok && check.max_error < prob.tol;
  };

  // Trivial cases: nothing to do, or a pure translation along the first axis.
  finish(ControlSchedule(d));
  if (sol.converged) {
    sol.message = "source already matches target";
    return sol;
  }
  {
    ControlSchedule shift(d);
    shift.push_back(Generator::x, prob.target.flat()[0] - prob.source.flat()[0]);
    const ResidualEval check = residual(shift, prob);
    if (check.status == FlowStatus::ok && check.max_error < prob.tol) {
      finish(shift);
      sol.legs = 1;
      sol.message = "single translation leg";
      return sol;
    }
  }

  FlowOptions fo = prob.flow;
  fo.bound = prob.bound;
  fo.record_trajectory = false;
  const FlowEngine engine(d, fo);

  const double diam = config_diameter(prob.source.flat(), prob.target.flat(), d);
  const double penalty = 1e3 * diam;
  // Duration scales: translations of the order of the diameter; cubic legs
  // short enough that the typical radius r moves by a fraction of itself.
  double radius = 0.0;
  for (double v : prob.source.flat()) radius = std::max(radius, std::abs(v));
  for (double v : prob.target.flat()) radius = std::max(radius, std::abs(v));
  radius = std::max(radius + diam, 1e-6);
  const double rx = diam;
  const double ry = 0.25 / (radius * radius);

  const std::size_t base_pairs = prob.legs > 0 ? prob.legs : 2 * n * d;
  const std::vector<std::size_t> kappas = prob.continuation ? std::vector<std::size_t>{1, 2, 4, 8}
                                                            : std::vector<std::size_t>{1};

  ControlSchedule best(d);
  double best_error = std::numeric_limits<double>::infinity();
  std::vector<double> best_costs;
  std::size_t total_iterations = 0;
  std::size_t total_restarts = 0;

  for (const std::size_t kappa : kappas) {
    bool path_ok = true;
    const auto goals = waypoints(prob, kappa, diam, path_ok);
    if (!path_ok) continue;
    for (std::size_t pairs = base_pairs;; pairs *= 2) {
      ControlSchedule chain(d);
      std::vector<double> at = prob.source.flat();
      std::vector<double> chain_costs;
      bool chain_ok = true;
      for (std::size_t w = 0; w < goals.size() && chain_ok; ++w) {
        const bool last = w + 1 == goals.size();
        const double stage_tol = last ? prob.tol : std::max(prob.tol, 1e-3 * diam);
        const Stage stage(engine, at, goals[w], penalty, prob.workers);
        RunResult winner;
        for (std::size_t restart = 0; restart < prob.max_restarts; ++restart) {
          if (restart > 0 || w > 0 || pairs != base_pairs || kappa != 1) ++total_restarts;
          SeededStream rng(prob.seed, {kappa, pairs, w, restart});
          RunResult run = levenberg_marquardt(stage, random_durations(rng, pairs, rx, ry), stage_tol,
                                              prob.max_iterations);
          total_iterations += run.iterations;
          // Ties go to the earlier restart, so the outcome is order-independent.
          if (run.error < winner.error) winner = std::move(run);
          if (winner.error < stage_tol) break;
        }
        if (!std::isfinite(winner.error)) {
          chain_ok = false;
          break;
        }
        const ControlSchedule part = schedule_from(d, winner.theta);
        for (const auto& leg : part.legs()) chain.push_back(leg.generator, leg.duration);
        at = winner.state;
        chain_costs = winner.costs;
        if (winner.error >= stage_tol) chain_ok = false;
      }
      if (chain.size() > 0) {
        const ResidualEval check = residual(chain, prob);
        if (check.max_error < best_error) {
          best_error = check.max_error;
          best = chain;
          best_costs = chain_costs;
          sol.legs = pairs;
          sol.waypoints = kappa;
        }
        if (chain_ok && check.status == FlowStatus::ok && check.max_error < prob.tol) {
          finish(chain);
          sol.iterations = total_iterations;
          sol.restarts = total_restarts;
          sol.legs = pairs;
          sol.waypoints = kappa;
          sol.cost_history = std::move(chain_costs);
          sol.message = "converged";
          return sol;
        }
      }
      if (!prob.grow_legs || pairs * 2 > kMaxLegPairs) break;
    }
  }

  finish(best);
  sol.converged = false;
  sol.iterations = total_iterations;
  sol.restarts = total_restarts;
  sol.cost_history = std::move(best_costs);
  sol.message = "did not converge within the restart, leg and continuation budget";
  return sol;
}

}  // namespace landflow
