#include "tailorder/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tailorder {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(RngStream s, std::uint64_t row) {
  std::uint64_t key = s.seed ^ (0xA3EC647659359ACDULL * (s.stream + 1));
  key = splitmix64(key) ^ (0x9E3779B97F4A7C15ULL * (row + 1));
  std::uint64_t sm = key;
  for (auto& w : s_) w = splitmix64(sm);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x1ULL;
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  // 53-bit mantissa shifted by half an ulp keeps the value in (0,1)
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("Rng::gamma: requires shape > 0");
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::positive_stable(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("Rng::positive_stable: requires alpha in (0,1)");
  // Kanter's form of the Chambers-Mallows-Stuck transform
  const double v = uniform();
  const double e = exponential();
  const double pv = std::numbers::pi * v;
  const double ln_s = std::log(std::sin(alpha * pv)) +
                      ((1.0 - alpha) / alpha) * std::log(std::sin((1.0 - alpha) * pv)) -
                      (1.0 / alpha) * std::log(std::sin(pv)) -
                      ((1.0 - alpha) / alpha) * std::log(e);
  return std::exp(ln_s);
}

}  // namespace tailorder
