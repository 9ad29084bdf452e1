#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace distancing::epidemic {

struct State {
  double susceptible = 0.0;
  double infected = 0.0;
  double recovered = 0.0;
  double t = 0.0;

  double total() const { return susceptible + infected + recovered; }
};

enum class Awareness {
  None,
  /// a = (1 - (I + R) / N)^k: reacts to everyone ever affected.
  LongTerm,
  /// a = (1 - I / N)^k: reacts to current prevalence only.
  ShortTerm,
};

Awareness parse_awareness(std::string_view name);
std::string_view to_string(Awareness awareness);

struct Params {
  double beta = 0.3;
  double delta = 0.1;
  double population = 1e4;
  double k = 0.0;
  Awareness awareness = Awareness::None;
  /// Use I instead of S in the infection term of dI/dt. This form does not
  /// conserve S + I + R and exists only to reproduce the uncorrected form.
  bool literal_infection_term = false;
};

/// Throws ParameterError on beta <= 0, delta <= 0, population <= 0, or k < 0.
void validate(const Params& params);

struct Derivative {
  double ds = 0.0;
  double di = 0.0;
  double dr = 0.0;
};

/// Distancing factor in [0, 1]; always 1 for Awareness::None.
double awareness(const State& state, const Params& params);

/// SIR right-hand side with the infection rate scaled by the awareness factor.
Derivative derivative(const State& state, const Params& params);

/// Fixed-step RK4 trajectory of `steps + 1` states starting at `initial`.
///
/// Throws IntegrationError if a compartment drops below -1e-9, which means the
/// step is too large for the dynamics.
std::vector<State> integrate(const State& initial, const Params& params, double dt,
                             std::size_t steps);

struct Peak {
  double infected = 0.0;
  double t = 0.0;
  std::size_t index = 0;
};

/// Largest I and the first time it is attained. Throws ContractError if empty.
Peak peak_infected(std::span<const State> trajectory);

/// max |S + I + R - N| / N over the trajectory.
double max_conservation_error(std::span<const State> trajectory, double population);

}  // namespace distancing::epidemic
