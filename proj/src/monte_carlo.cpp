#include "monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "errors.hpp"
#include "special_functions.hpp"

namespace stein {

namespace {

// Running mean and centred second moment; merged pairwise (Chan et al.).
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0)
      return;
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * (o.count / total);
    m2 += o.m2 + d * d * (count * o.count / total);
    count = total;
  }
};

unsigned resolve_threads(unsigned requested, std::size_t chunks) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(chunks, 1)));
}

// Runs body(chunk_index, begin, end) for every chunk across the worker pool.
template <class Body>
void for_each_chunk(std::size_t n, unsigned threads, Body&& body) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  const unsigned workers = resolve_threads(threads, chunks);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= chunks)
        return;
      try {
        body(i, i * kChunkSize, std::min(n, (i + 1) * kChunkSize));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure)
          failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work);
  }
  if (failure)
    std::rethrow_exception(failure);
}

// One replicate of the model, in whichever coordinates the path uses.
class Sampler {
public:
  Sampler(const ProblemConfig& config, SamplingPath path)
      : p_(config.p), theta_(config.theta_norm), path_(path) {
    if (path_ == SamplingPath::Full) {
      const double u = 1.0 / std::sqrt(static_cast<double>(p_));
      direction_.assign(p_, u);
      theta_vec_.assign(p_, theta_ * u);
      x_.resize(p_);
    }
  }

  // Draws and returns the reduced point; the full vector is kept in x() on the Full path.
  ZPoint draw(RngStream& rng) {
    if (path_ == SamplingPath::Reduced) {
      const double x1 = theta_ + rng.standard_normal();
      const double r = std::sqrt(rng.chi_squared(p_ - 1.0));
      return {x1, r};
    }
    for (int i = 0; i < p_; ++i)
      x_[i] = theta_vec_[i] + rng.standard_normal();
    if (p_ < 2)
      return {x_[0] * direction_[0], 0.0};
    return z_reduce(x_, direction_);
  }

  bool full() const { return path_ == SamplingPath::Full; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& theta_vec() const { return theta_vec_; }
  double theta() const { return theta_; }
  int p() const { return p_; }

private:
  int p_;
  double theta_;
  SamplingPath path_;
  std::vector<double> direction_;
  std::vector<double> theta_vec_;
  std::vector<double> x_;
};

template <class Statistic>
Moments accumulate(const ProblemConfig& config, std::size_t n, const McOptions& opts,
                   Statistic stat) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Moments> partial(chunks);
  for_each_chunk(n, opts.threads, [&](std::size_t idx, std::size_t begin, std::size_t end) {
    RngStream rng(config.seed, idx);
    Sampler sampler(config, opts.path);
    Moments m;
    for (std::size_t k = begin; k < end; ++k)
      m.push(stat(sampler, sampler.draw(rng)));
    partial[idx] = m;
  });
  Moments total;
  for (const auto& m : partial)
    total.merge(m);
  return total;
}

RiskEstimate to_estimate(const Moments& m) {
  RiskEstimate e;
  e.n = static_cast<long>(m.count);
  e.mean = m.mean;
  e.std_error = m.count > 1.0 ? std::sqrt(m.m2 / (m.count - 1.0) / m.count) : 0.0;
  return e;
}

void check_sampling(const ProblemConfig& config, std::size_t n, int min_p, std::size_t min_n) {
  config.validate();
  if (config.p < min_p)
    throw DomainError("simulation requires p >= " + std::to_string(min_p));
  if (n < min_n)
    throw InvalidArgument("replication count must be >= " + std::to_string(min_n));
}

double loss(const Sampler& s, ZPoint z, const EstimatorSpec& spec) {
  if (s.full()) {
    const auto est = apply(spec, s.x(), s.p());
    return squared_error(est, s.theta_vec());
  }
  return squared_error_z(apply(spec, z, s.p()), s.theta());
}

} // namespace

CloudSample simulate_cloud(const ProblemConfig& config, std::size_t n, const McOptions& opts) {
  check_sampling(config, n, 2, 1);
  CloudSample out;
  out.config = config;
  out.points.resize(n);
  for_each_chunk(n, opts.threads, [&](std::size_t idx, std::size_t begin, std::size_t end) {
    RngStream rng(config.seed, idx);
    Sampler sampler(config, opts.path);
    for (std::size_t k = begin; k < end; ++k)
      out.points[k] = sampler.draw(rng);
  });
  return out;
}

RiskEstimate estimate_risk_mc(const ProblemConfig& config, const EstimatorSpec& spec,
                              std::size_t n, const McOptions& opts) {
  check_sampling(config, n, 2, 2);
  return to_estimate(accumulate(config, n, opts, [&](const Sampler& s, ZPoint z) {
    return loss(s, z, spec);
  }));
}

RiskEstimate estimate_delta_mc(const ProblemConfig& config, const EstimatorSpec& spec,
                               std::size_t n, const McOptions& opts) {
  check_sampling(config, n, 2, 2);
  const auto usual = EstimatorSpec::identity();
  return to_estimate(accumulate(config, n, opts, [&](const Sampler& s, ZPoint z) {
    return loss(s, z, usual) - loss(s, z, spec);
  }));
}

RiskEstimate estimate_delta_mc(const ProblemConfig& config, double c, std::size_t n,
                               const McOptions& opts) {
  return estimate_delta_mc(config, EstimatorSpec::shrink(c), n, opts);
}

RiskEstimate estimate_exceedance_prob(const ProblemConfig& config, std::size_t n,
                                      const McOptions& opts) {
  check_sampling(config, n, 1, 2);
  const Moments m = accumulate(config, n, opts, [](const Sampler& s, ZPoint z) {
    if (s.full()) {
      double nsq = 0.0;
      for (double v : s.x())
        nsq += v * v;
      return nsq >= s.theta() * s.theta() ? 1.0 : 0.0;
    }
    // |X|^2 - theta^2 = e (2 theta + e) + R^2 with e = X1 - theta, exact for large theta.
    const double e = z.x1 - s.theta();
    return e * (2.0 * s.theta() + e) + z.r * z.r >= 0.0 ? 1.0 : 0.0;
  });
  RiskEstimate out;
  out.n = static_cast<long>(m.count);
  out.mean = m.mean;
  out.std_error = std::sqrt(m.mean * (1.0 - m.mean) / m.count);
  return out;
}

RiskEstimate estimate_norm_sq_mc(const ProblemConfig& config, std::size_t n,
                                 const McOptions& opts) {
  check_sampling(config, n, 1, 2);
  return to_estimate(accumulate(config, n, opts, [](const Sampler& s, ZPoint z) {
    if (s.full()) {
      double nsq = 0.0;
      for (double v : s.x())
        nsq += v * v;
      return nsq;
    }
    return z.x1 * z.x1 + z.r * z.r;
  }));
}

} // namespace stein
