#pragma once

#include <cstdint>
#include <random>

namespace rda {

// Seeded generator with deterministic per-worker substreams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  // Derive a worker stream; identical (seed, worker) pairs give identical
  // streams regardless of thread scheduling.
  static Rng substream(std::uint64_t seed, std::uint64_t worker) {
    return Rng(mix(seed) ^ mix(worker * 0x9e3779b97f4a7c15ULL + 0x1234567ULL));
  }

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  double uniform_open() {
    double u;
    do { u = uniform(); } while (u <= 0.0 || u >= 1.0);
    return u;
  }
  double exponential() {
    return -std::log(uniform_open());
  }
  double gamma(double shape) {
    std::gamma_distribution<double> g(shape, 1.0);
    double v;
    do { v = g(engine_); } while (v <= 0.0);
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace rda
