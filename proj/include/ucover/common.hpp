#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ucover {

// Shared numeric tolerances. Probabilities and costs are plain doubles;
// comparisons are absolute unless noted otherwise.
inline constexpr double kTol = 1e-9;       // general comparisons
inline constexpr double kFeasTol = 1e-8;   // LP feasibility slack
inline constexpr double kCutTol = 1e-7;    // separation violation threshold
inline constexpr double kValueTol = 1e-6;  // primal/dual agreement (relative)

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// No feasible solution exists (uncoverable element, missing assignment, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class UnboundedError : public Error {
 public:
  using Error::Error;
};

// Numerical failure or iteration cap inside a solver.
class SolveError : public Error {
 public:
  using Error::Error;
};

// Requested an exact evaluation on a black-box sampler distribution.
class NotEvaluableError : public Error {
 public:
  using Error::Error;
};

// Enumeration size cap exceeded.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

// splitmix64 finalizer.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives the seed of a named random stream. All randomness flows from one
// root seed through these labels, so no two components share generator state.
inline uint64_t derive_seed(uint64_t root, std::string_view stream) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the label
  for (unsigned char ch : stream) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return mix64(root ^ mix64(h));
}

inline uint64_t derive_seed(uint64_t root, std::string_view stream, uint64_t index) {
  return mix64(derive_seed(root, stream) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Uniform double in [0,1) with 53 random bits. Hand-rolled so results do not
// depend on the implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline int uniform_below(std::mt19937_64& gen, int n) {
  return static_cast<int>(gen() % static_cast<uint64_t>(n));
}

// n-th harmonic number, the greedy multicover guarantee.
inline double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

}  // namespace ucover
