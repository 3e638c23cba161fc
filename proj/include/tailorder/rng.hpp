#pragma once

#include <cstdint>

namespace tailorder {

// Identifies a reproducible random stream. The pair (seed, stream) plus a
// row index fully determines every draw, independent of thread count.
struct RngStream {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
};

// xoshiro256** engine whose state is derived from (seed, stream, row) via
// SplitMix64. One instance per sampled row keeps rejection samplers
// deterministic under OpenMP.
class Rng {
 public:
  Rng(RngStream s, std::uint64_t row);

  std::uint64_t next_u64();
  double uniform();      // strictly inside (0, 1)
  double exponential();  // unit rate
  double normal();       // standard normal (polar method, cached spare)
  double gamma(double shape);  // unit scale; Marsaglia-Tsang, boost for shape<1
  double positive_stable(double alpha);  // Laplace transform exp(-s^alpha)

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tailorder
