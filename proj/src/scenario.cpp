#include "distancing/scenario.hpp"

#include <cmath>
#include <random>

#include "distancing/errors.hpp"

namespace distancing {

namespace {

struct Walker {
  double cx, cy, vx, vy, w, h;
  Descriptor identity;
};

// Fold a coordinate back into [lo, hi], flipping the velocity on each bounce.
void reflect(double& pos, double& vel, double lo, double hi) {
  while (pos < lo || pos > hi) {
    if (pos < lo) {
      pos = 2.0 * lo - pos;
      vel = -vel;
    } else {
      pos = 2.0 * hi - pos;
      vel = -vel;
    }
  }
}

Descriptor random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Descriptor d(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : d) {
      x = n01(rng);
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double norm = std::sqrt(norm2);
  for (double& x : d) x /= norm;
  return d;
}

Descriptor perturb(const Descriptor& base, double sigma, std::mt19937_64& rng) {
  if (sigma <= 0.0) return base;
  std::normal_distribution<double> noise(0.0, sigma);
  Descriptor d = base;
  double norm2 = 0.0;
  for (double& x : d) {
    x += noise(rng);
    norm2 += x * x;
  }
  const double norm = std::sqrt(norm2);
  for (double& x : d) x /= norm;
  return d;
}

}  // namespace

void validate(const ScenarioConfig& c) {
  if (!(c.frame_width > 0.0) || !(c.frame_height > 0.0)) {
    throw ParameterError("scenario: frame dimensions must be positive");
  }
  if (!(c.min_height > 0.0) || c.max_height < c.min_height || c.max_height >= c.frame_height) {
    throw ParameterError("scenario: need 0 < min_height <= max_height < frame_height");
  }
  if (!(c.aspect > 0.0) || c.aspect * c.max_height >= c.frame_width) {
    throw ParameterError("scenario: boxes must fit inside the frame width");
  }
  if (c.min_speed < 0.0 || c.max_speed < c.min_speed) {
    throw ParameterError("scenario: need 0 <= min_speed <= max_speed");
  }
  if (c.noise_std < 0.0 || c.descriptor_noise < 0.0) {
    throw ParameterError("scenario: noise levels must be non-negative");
  }
  if (!(c.miss_rate >= 0.0 && c.miss_rate < 1.0)) {
    throw ParameterError("scenario: miss_rate must be in [0, 1)");
  }
  if (c.false_positive_rate < 0.0) {
    throw ParameterError("scenario: false_positive_rate must be non-negative");
  }
  if (c.descriptor_dim == 1) {
    throw ParameterError("scenario: descriptor_dim must be 0 or at least 2");
  }
  if (c.frame_interval_ms < 0) {
    throw ParameterError("scenario: frame_interval_ms must be non-negative");
  }
}

Scenario generate_scenario(const ScenarioConfig& c) {
  validate(c);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double kTwoPi = 6.283185307179586;

  std::vector<Walker> walkers;
  walkers.reserve(c.person_count);
  for (std::size_t i = 0; i < c.person_count; ++i) {
    Walker p{};
    p.h = c.min_height + (c.max_height - c.min_height) * unit(rng);
    p.w = c.aspect * p.h;
    p.cx = p.w / 2.0 + (c.frame_width - p.w) * unit(rng);
    p.cy = p.h / 2.0 + (c.frame_height - p.h) * unit(rng);
    const double speed = c.min_speed + (c.max_speed - c.min_speed) * unit(rng);
    const double heading = kTwoPi * unit(rng);
    p.vx = speed * std::cos(heading);
    p.vy = speed * std::sin(heading);
    if (c.descriptor_dim > 0) p.identity = random_unit(rng, c.descriptor_dim);
    walkers.push_back(std::move(p));
  }

  Scenario out;
  std::normal_distribution<double> box_noise(0.0, c.noise_std > 0.0 ? c.noise_std : 1.0);
  std::poisson_distribution<int> fp_count(c.false_positive_rate > 0.0 ? c.false_positive_rate : 1.0);

  for (std::size_t f = 0; f < c.frame_count; ++f) {
    const auto frame_id = static_cast<FrameId>(f);
    const TimestampMs ts = frame_id * c.frame_interval_ms;

    for (std::size_t i = 0; i < walkers.size(); ++i) {
      Walker& p = walkers[i];
      if (f > 0) {
        p.cx += p.vx;
        p.cy += p.vy;
        reflect(p.cx, p.vx, p.w / 2.0, c.frame_width - p.w / 2.0);
        reflect(p.cy, p.vy, p.h / 2.0, c.frame_height - p.h / 2.0);
      }
      const BoundingBox truth{p.cx - p.w / 2.0, p.cy - p.h / 2.0, p.w, p.h};
      out.ground_truth.push_back(
          {frame_id, ts, truth, 1.0, std::nullopt, static_cast<std::int64_t>(i)});

      if (c.miss_rate > 0.0 && unit(rng) < c.miss_rate) {
        ++out.missed;
        continue;
      }
      BoundingBox seen = truth;
      if (c.noise_std > 0.0) {
        seen.x += box_noise(rng);
        seen.y += box_noise(rng);
        seen.w = std::max(1.0, seen.w + box_noise(rng));
        seen.h = std::max(1.0, seen.h + box_noise(rng));
      }
      DetectionRecord det{frame_id, ts, seen, 0.6 + 0.4 * unit(rng), std::nullopt, std::nullopt};
      if (c.descriptor_dim > 0) det.descriptor = perturb(p.identity, c.descriptor_noise, rng);
      out.detections.push_back(std::move(det));
    }

    const int n_fp = c.false_positive_rate > 0.0 ? fp_count(rng) : 0;
    for (int k = 0; k < n_fp; ++k) {
      const double h = c.min_height + (c.max_height - c.min_height) * unit(rng);
      const double w = c.aspect * h;
      const BoundingBox box{(c.frame_width - w) * unit(rng), (c.frame_height - h) * unit(rng), w, h};
      DetectionRecord det{frame_id, ts, box, 0.3 + 0.6 * unit(rng), std::nullopt, std::nullopt};
      if (c.descriptor_dim > 0) det.descriptor = random_unit(rng, c.descriptor_dim);
      out.detections.push_back(std::move(det));
      ++out.false_positives;
    }
  }
  return out;
}

}  // namespace distancing
