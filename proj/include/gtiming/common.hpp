#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gtiming {

// =============================================================================
// Errors
// =============================================================================

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct SeparationError : Error { using Error::Error; };
struct SingularDesignError : Error { using Error::Error; };
struct NoEventsError : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct MissingFieldError : Error { using Error::Error; };
struct PositivityError : Error { using Error::Error; };
struct NoConsistentSubjectsError : Error { using Error::Error; };
struct BootstrapDegenerateError : Error { using Error::Error; };

// =============================================================================
// Numerics
// =============================================================================

/// Logistic function, safe against overflow for large |x|.
inline double expit(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log(1 + exp(x)) without overflow.
inline double log1pexp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// =============================================================================
// RNG
// =============================================================================

/// Deterministic counter-based stream built on the splitmix64 finalizer.
///
/// Substreams are derived, not split sequentially: stream k of master seed s
/// starts at state mix64(s + GOLDEN * (k + 1)). Consumers that draw one
/// stream per subject / per replicate therefore produce output independent
/// of iteration order and thread scheduling.
class RngStream {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit RngStream(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + kGolden * (stream + 1));
  }

  static RngStream derive(std::uint64_t seed, std::uint64_t stream) {
    return RngStream(derive_seed(seed, stream));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform draw strictly inside (0, 1); exponential() stays positive.
  double next_u01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_u01() < p; }

  double exponential(double rate) { return -std::log1p(-next_u01()) / rate; }

  /// Uniform index in [0, n) via the 128-bit multiply trick.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// =============================================================================
// Threading
// =============================================================================

/// Default worker count: GTIMING_THREADS env var, else hardware concurrency.
unsigned default_threads();

/// Runs fn(i) for i in [0, n) on `threads` workers. Work items must write to
/// disjoint slots; the first exception thrown by any item is rethrown after
/// all workers join, so results stay deterministic regardless of scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace gtiming
