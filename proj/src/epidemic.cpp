#include "distancing/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "distancing/errors.hpp"

namespace distancing::epidemic {

namespace {

constexpr double kNegativeTolerance = -1e-9;

State advance(const State& s, const Derivative& d, double h) {
  return {s.susceptible + h * d.ds, s.infected + h * d.di, s.recovered + h * d.dr, s.t + h};
}

}  // namespace

Awareness parse_awareness(std::string_view name) {
  if (name == "none") return Awareness::None;
  if (name == "long-term" || name == "long_term" || name == "long") return Awareness::LongTerm;
  if (name == "short-term" || name == "short_term" || name == "short") return Awareness::ShortTerm;
  throw ParameterError("unknown awareness mode '" + std::string(name) +
                       "' (expected none, long-term, short-term)");
}

std::string_view to_string(Awareness awareness) {
  switch (awareness) {
    case Awareness::None:
      return "none";
    case Awareness::LongTerm:
      return "long-term";
    case Awareness::ShortTerm:
      return "short-term";
  }
  return "none";
}

void validate(const Params& params) {
  if (!(params.beta > 0.0) || !(params.delta > 0.0) || !(params.population > 0.0) ||
      !(params.k >= 0.0)) {
    throw ParameterError("epidemic: require beta > 0, delta > 0, N > 0, k >= 0");
  }
}

double awareness(const State& state, const Params& params) {
  double base = 1.0;
  switch (params.awareness) {
    case Awareness::None:
      return 1.0;
    case Awareness::LongTerm:
      base = 1.0 - (state.infected + state.recovered) / params.population;
      break;
    case Awareness::ShortTerm:
      base = 1.0 - state.infected / params.population;
      break;
  }
  return std::pow(std::clamp(base, 0.0, 1.0), params.k);
}

Derivative derivative(const State& state, const Params& params) {
  const double a = awareness(state, params);
  const double prevalence = state.infected / params.population;
  const double leaving_s = params.beta * state.susceptible * prevalence * a;
  const double entering_i =
      params.literal_infection_term ? params.beta * state.infected * prevalence * a : leaving_s;
  const double recovery = params.delta * state.infected;

  Derivative d;
  d.ds = -leaving_s;
  d.di = entering_i - recovery;
  d.dr = recovery;
  return d;
}

std::vector<State> integrate(const State& initial, const Params& params, double dt,
                             std::size_t steps) {
  if (!(dt > 0.0) || steps < 1) {
    throw ParameterError("integrate: require dt > 0 and steps >= 1");
  }

  std::vector<State> trajectory;
  trajectory.reserve(steps + 1);
  trajectory.push_back(initial);

  State s = initial;
  for (std::size_t i = 0; i < steps; ++i) {
    const Derivative k1 = derivative(s, params);
    const Derivative k2 = derivative(advance(s, k1, dt / 2.0), params);
    const Derivative k3 = derivative(advance(s, k2, dt / 2.0), params);
    const Derivative k4 = derivative(advance(s, k3, dt), params);

    s.susceptible += dt / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
    s.infected += dt / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di);
    s.recovered += dt / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    s.t = initial.t + static_cast<double>(i + 1) * dt;

    if (s.susceptible < kNegativeTolerance || s.infected < kNegativeTolerance ||
        s.recovered < kNegativeTolerance) {
      std::ostringstream msg;
      msg << "integrate: state left the non-negative orthant at t=" << s.t
          << "; reduce dt (currently " << dt << ")";
      throw IntegrationError(msg.str());
    }
    trajectory.push_back(s);
  }
  return trajectory;
}

Peak peak_infected(std::span<const State> trajectory) {
  if (trajectory.empty()) {
    throw ContractError("peak_infected: trajectory is empty");
  }
  Peak peak{trajectory[0].infected, trajectory[0].t, 0};
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    if (trajectory[i].infected > peak.infected) {
      peak = {trajectory[i].infected, trajectory[i].t, i};
    }
  }
  return peak;
}

double max_conservation_error(std::span<const State> trajectory, double population) {
  double worst = 0.0;
  for (const State& s : trajectory) {
    worst = std::max(worst, std::abs(s.total() - population) / population);
  }
  return worst;
}

}  // namespace distancing::epidemic
