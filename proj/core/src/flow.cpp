#include <landflow/flow.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace landflow {

const char* generator_name(Generator g) { return g == Generator::x ? "X" : "Y"; }

Generator parse_generator(std::string_view name) {
  if (name == "X") return Generator::x;
  if (name == "Y") return Generator::y;
  throw std::invalid_argument("unknown generator '" + std::string(name) + "' (expected X or Y)");
}

const char* status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::ok: return "ok";
    case FlowStatus::escaped: return "escaped";
    case FlowStatus::step_failure: return "step_failure";
  }
  return "unknown";
}

// ----------------------------------------------------------- ControlSchedule

ControlSchedule::ControlSchedule(std::size_t d, std::vector<ScheduleLeg> legs) : d_(d), legs_(std::move(legs)) {
  if (d == 0) throw std::invalid_argument("ControlSchedule: d must be positive");
  for (const auto& leg : legs_) {
    if (!std::isfinite(leg.duration)) throw std::invalid_argument("ControlSchedule: non-finite duration");
  }
}

void ControlSchedule::push_back(Generator g, double duration) {
  if (!std::isfinite(duration)) throw std::invalid_argument("ControlSchedule: non-finite duration");
  legs_.push_back({g, duration});
}

ControlSchedule ControlSchedule::reverse_and_negate() const {
  std::vector<ScheduleLeg> out(legs_.rbegin(), legs_.rend());
  for (auto& leg : out) leg.duration = -leg.duration;
  return ControlSchedule(d_, std::move(out));
}

// ------------------------------------------------------------ CompiledField

CompiledField::CompiledField(const PolyVectorField& field) : d_(field.dim()) {
  bool constant = true;
  for (std::size_t k = 0; k < d_; ++k) {
    for (const auto& [m, c] : field.component(k).terms()) {
      Term t{k, c.get_d(), {}};
      for (std::size_t j = 0; j < d_; ++j) {
        if (m.exponent(j) > 0) t.factors.emplace_back(j, m.exponent(j));
      }
      if (!m.is_constant()) constant = false;
      terms_.push_back(std::move(t));
    }
  }
  if (constant) {
    shape_ = Shape::constant;
    constant_.assign(d_, 0.0);
    for (const auto& t : terms_) constant_[t.component] = t.coefficient;
  } else if (d_ == 1 && terms_.size() == 1 && terms_[0].factors.size() == 1 && terms_[0].factors[0].second == 3) {
    shape_ = Shape::cubic_line;
    cubic_ = terms_[0].coefficient;
  }
}

void CompiledField::evaluate(const double* x, double* out) const {
  std::fill(out, out + d_, 0.0);
  for (const auto& t : terms_) {
    double v = t.coefficient;
    for (const auto& [j, e] : t.factors) {
      const double base = x[j];
      for (std::uint32_t r = 0; r < e; ++r) v *= base;
    }
    out[t.component] += v;
  }
}

// -------------------------------------------------------------- FlowResult

LandmarkConfig FlowResult::final_config() const {
  if (!ok()) throw std::logic_error("FlowResult::final_config: run did not complete");
  return LandmarkConfig::from_flat(dim, final_state, 0.0);
}

// --------------------------------------------------------------- FlowEngine

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

void lifted_rhs(const CompiledField& f, std::size_t d, const std::vector<double>& y, std::vector<double>& out) {
  for (std::size_t off = 0; off < y.size(); off += d) f.evaluate(y.data() + off, out.data() + off);
}

// Index of the first landmark with a coordinate outside the bound (or non-finite).
std::optional<std::size_t> out_of_bounds(const std::vector<double>& y, std::size_t d, double bound) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i]) || std::abs(y[i]) > bound) return i / d;
  }
  return std::nullopt;
}

}  // namespace

FlowEngine::FlowEngine(std::size_t d, FlowOptions opts)
    : d_(d), opts_(opts), x_(generator_pair(d).x), y_(generator_pair(d).y) {
  if (!(opts_.rtol > 0) || !(opts_.atol > 0)) throw std::invalid_argument("FlowOptions: tolerances must be positive");
  if (!(opts_.bound > 0)) throw std::invalid_argument("FlowOptions: bound must be positive");
}

FlowStatus FlowEngine::advance(const CompiledField& f, double t, std::vector<double>& state,
                               std::vector<TrajectorySample>* samples, std::size_t& steps,
                               std::optional<std::size_t>& failed_landmark) const {
  if (f.dim() == 0 || state.size() % f.dim() != 0) throw std::invalid_argument("flow: state size does not match field");
  if (auto bad = out_of_bounds(state, f.dim(), opts_.bound)) {
    failed_landmark = bad;
    return FlowStatus::escaped;
  }
  if (samples) samples->push_back({0.0, state});
  if (t == 0.0) return FlowStatus::ok;
  if (opts_.use_closed_forms && f.shape() != CompiledField::Shape::general) {
    return closed_form(f, t, state, samples, failed_landmark);
  }
  return integrate(f, t, state, samples, steps, failed_landmark);
}

FlowStatus FlowEngine::closed_form(const CompiledField& f, double t, std::vector<double>& state,
                                   std::vector<TrajectorySample>* samples,
                                   std::optional<std::size_t>& failed_landmark) const {
  const std::size_t d = f.dim();
  const std::vector<double> start = state;
  auto at = [&](double s, std::vector<double>& out) -> FlowStatus {
    for (std::size_t i = 0; i < start.size(); ++i) {
      if (f.shape() == CompiledField::Shape::constant) {
        out[i] = start[i] + s * f.constant_value()[i % d];
      } else {
        // dx/dt = c x^3  =>  x(t) = x0 / sqrt(1 - 2 c x0^2 t).
        const double x0 = start[i];
        const double denom = 1.0 - 2.0 * f.cubic_coefficient() * x0 * x0 * s;
        if (denom <= 0.0) {
          failed_landmark = i / d;
          return FlowStatus::escaped;
        }
        out[i] = x0 / std::sqrt(denom);
      }
    }
    if (auto bad = out_of_bounds(out, d, opts_.bound)) {
      failed_landmark = bad;
      return FlowStatus::escaped;
    }
    return FlowStatus::ok;
  };

  std::vector<double> buf(start.size());
  if (samples) {
    const std::size_t extra = opts_.closed_form_samples;
    for (std::size_t k = 1; k <= extra; ++k) {
      const double s = t * static_cast<double>(k) / static_cast<double>(extra + 1);
      const FlowStatus st = at(s, buf);
      if (st != FlowStatus::ok) {
        state = buf;
        return st;
      }
      samples->push_back({s, buf});
    }
  }
  const FlowStatus st = at(t, buf);
  state = buf;
  if (st == FlowStatus::ok && samples) samples->push_back({t, state});
  return st;
}

FlowStatus FlowEngine::integrate(const CompiledField& f, double t_end, std::vector<double>& y,
                                 std::vector<TrajectorySample>* samples, std::size_t& steps,
                                 std::optional<std::size_t>& failed_landmark) const {
  const std::size_t d = f.dim();
  const std::size_t m = y.size();
  const double dir = t_end > 0 ? 1.0 : -1.0;
  const double span = std::abs(t_end);
  const double rtol = opts_.rtol;
  const double atol = opts_.atol;

  std::vector<double> k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), tmp(m), ynew(m);
  auto rms = [&](const std::vector<double>& v, const std::vector<double>& ref) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double sc = atol + rtol * std::abs(ref[i]);
      s += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(m));
  };

  lifted_rhs(f, d, y, k1);

  // Initial step size, following Hairer, Norsett and Wanner.
  double h;
  {
    const double d0 = rms(y, y);
    const double d1 = rms(k1, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + dir * h0 * k1[i];
    lifted_rhs(f, d, tmp, k2);
    for (std::size_t i = 0; i < m; ++i) k3[i] = k2[i] - k1[i];
    const double d2 = rms(k3, y) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
    h = std::min({100 * h0, h1, span});
  }

  double t = 0.0;
  std::size_t local_steps = 0;
  while (t < span) {
    if (local_steps++ >= opts_.max_steps) return FlowStatus::step_failure;
    if (h < 1e-14 * std::max(1.0, t)) return FlowStatus::step_failure;
    if (t + h > span) h = span - t;
    const double hs = dir * h;

    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    lifted_rhs(f, d, tmp, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    lifted_rhs(f, d, tmp, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    lifted_rhs(f, d, tmp, k4);
    for (std::size_t i = 0; i < m; ++i) {
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    lifted_rhs(f, d, tmp, k5);
    for (std::size_t i = 0; i < m; ++i) {
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    lifted_rhs(f, d, tmp, k6);
    for (std::size_t i = 0; i < m; ++i) {
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    lifted_rhs(f, d, ynew, k7);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
      if (!std::isfinite(ynew[i]) || !std::isfinite(k7[i])) finite = false;
    }
    err = std::sqrt(err / static_cast<double>(m));

    if (!finite || !std::isfinite(err)) {
      // Blow-up inside the step: shrink and retry; the bound check catches real escapes.
      if (auto bad = out_of_bounds(ynew, d, opts_.bound); bad && finite) {
        failed_landmark = bad;
        return FlowStatus::escaped;
      }
      h *= 0.2;
      continue;
    }

    if (err <= 1.0) {
      t = (span - t - h <= 1e-15 * span) ? span : t + h;
      y.swap(ynew);
      k1.swap(k7);
      ++steps;
      if (auto bad = out_of_bounds(y, d, opts_.bound)) {
        failed_landmark = bad;
        return FlowStatus::escaped;
      }
      if (samples) samples->push_back({dir * t, y});
      const double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h *= fac;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return FlowStatus::ok;
}

FlowResult FlowEngine::run(const ControlSchedule& sched, std::span<const double> state) const {
  if (sched.dim() != d_) throw std::invalid_argument("flow: schedule dimension differs from engine");
  if (state.size() % d_ != 0) throw std::invalid_argument("flow: state size is not a multiple of d");
  FlowResult r;
  r.dim = d_;
  r.final_state.assign(state.begin(), state.end());
  for (std::size_t li = 0; li < sched.size(); ++li) {
    const ScheduleLeg& leg = sched.legs()[li];
    std::vector<TrajectorySample>* samples = nullptr;
    if (opts_.record_trajectory) {
      r.legs.push_back({li, leg.generator, leg.duration, {}});
      samples = &r.legs.back().samples;
    }
    std::optional<std::size_t> bad;
    const FlowStatus st = advance(field(leg.generator), leg.duration, r.final_state, samples, r.steps, bad);
    if (st != FlowStatus::ok) {
      r.status = st;
      r.failed_leg = li;
      r.failed_landmark = bad;
      r.message = std::string(status_name(st)) + " in leg " + std::to_string(li);
      if (bad) r.message += " at landmark " + std::to_string(*bad);
      return r;
    }
  }
  // Flows are diffeomorphisms; merged landmarks indicate lost precision.
  const std::size_t n = r.final_state.size() / d_;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < d_; ++j) {
        const double diff = r.final_state[a * d_ + j] - r.final_state[b * d_ + j];
        s += diff * diff;
      }
      if (std::sqrt(s) <= opts_.min_separation) {
        r.status = FlowStatus::step_failure;
        r.failed_landmark = b;
        r.message = "landmarks " + std::to_string(a) + " and " + std::to_string(b) + " merged numerically";
        return r;
      }
    }
  }
  return r;
}

// ------------------------------------------------------------ free functions

PointFlow flow_point(const PolyVectorField& field, double t, std::span<const double> p, const FlowOptions& opts) {
  if (p.size() != field.dim()) throw std::invalid_argument("flow_point: point dimension differs from field");
  if (!std::isfinite(t)) throw std::invalid_argument("flow_point: non-finite time");
  FlowOptions o = opts;
  o.record_trajectory = false;
  const FlowEngine engine(field.dim(), o);
  const CompiledField f(field);
  PointFlow out;
  out.point.assign(p.begin(), p.end());
  std::optional<std::size_t> bad;
  out.status = engine.advance(f, t, out.point, nullptr, out.steps, bad);
  return out;
}

FlowResult flow_config(const ControlSchedule& sched, const LandmarkConfig& cfg, const FlowOptions& opts) {
  if (sched.dim() != cfg.dim()) throw std::invalid_argument("flow_config: schedule and configuration dimensions differ");
  return FlowEngine(cfg.dim(), opts).run(sched, cfg.flat());
}

bool order_preserved(const LandmarkConfig& before, const FlowResult& result) {
  if (before.dim() != 1 || result.dim != 1) throw std::invalid_argument("order_preserved: requires d = 1");
  if (!result.ok()) throw std::invalid_argument("order_preserved: flow did not complete");
  const auto& a = before.flat();
  const auto& b = result.final_state;
  if (a.size() != b.size()) throw std::invalid_argument("order_preserved: landmark counts differ");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] < a[j]) != (b[i] < b[j])) return false;
    }
  }
  return true;
}

}  // namespace landflow
