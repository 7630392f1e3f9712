#pragma once

// Thin C++ conveniences over the C interface: owning handles and
// status-to-exception conversion.

#include <memory>
#include <stdexcept>
#include <string>

#include "stein_shrink.h"

namespace ssk {

/// A non-OK status from the library, with its reason.
class Error : public std::runtime_error {
public:
  Error(ssk_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  ssk_status status() const noexcept { return status_; }

private:
  ssk_status status_;
};

inline void check(ssk_status status) {
  if (status != SSK_OK)
    throw Error(status, ssk_last_error());
}

struct EstimatorDeleter {
  void operator()(ssk_estimator* e) const { ssk_estimator_destroy(e); }
};
struct SimulatorDeleter {
  void operator()(ssk_simulator* s) const { ssk_simulator_destroy(s); }
};

using Estimator = std::unique_ptr<ssk_estimator, EstimatorDeleter>;
using Simulator = std::unique_ptr<ssk_simulator, SimulatorDeleter>;

inline Estimator parse_estimator(const std::string& text) {
  ssk_estimator* raw = nullptr;
  check(ssk_estimator_parse(text.c_str(), &raw));
  return Estimator(raw);
}

inline Estimator make_estimator(ssk_estimator_kind kind, double c = 0.0, double a = 0.0) {
  ssk_estimator* raw = nullptr;
  check(ssk_estimator_create(kind, c, a, &raw));
  return Estimator(raw);
}

inline Simulator make_simulator(int p, double theta, std::uint64_t seed, unsigned threads = 0,
                                ssk_sampling_path path = SSK_PATH_REDUCED) {
  ssk_simulator* raw = nullptr;
  check(ssk_simulator_create(p, theta, seed, &raw));
  Simulator sim(raw);
  check(ssk_simulator_set_threads(sim.get(), threads));
  check(ssk_simulator_set_path(sim.get(), path));
  return sim;
}

/// Calls a C function of the form f(args..., double* out) and returns out.
template <class Fn, class... Args>
double value(Fn fn, Args... args) {
  double out = 0.0;
  check(fn(args..., &out));
  return out;
}

template <class Fn, class... Args>
ssk_risk_estimate estimate(Fn fn, Args... args) {
  ssk_risk_estimate out{};
  check(fn(args..., &out));
  return out;
}

} // namespace ssk
