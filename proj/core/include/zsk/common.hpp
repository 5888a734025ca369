#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace zsk {

enum class ErrorCode {
  AsymmetricMatrix,
  NegativeEntry,
  TriangleViolation,
  TooSmall,
  NotSquare,
  BadParams,
  DisconnectedGraph,
  NotNegativeType,
  NonInjectiveMap,
  DimensionMismatch,
  RhoBelowOne,
  ModerationViolated,
  MinDistanceViolated,
  QuasisymmetryViolated,
  BetaTooLarge,
  ConclusionViolated,
  TauExceedsDiameter,
  EmptySupport,
  IterationCapExceeded,
  RejectionCapExceeded,
  PairTooClose,
  InfiniteIndex,
  EmptyZeroSet,
  SolverStalled,
  CapExceeded,
  UsageError,
};

const char* error_name(ErrorCode c);

// Validation-type failures map to CLI exit 2, solver/cap failures to exit 3.
bool is_validation_error(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_name(c)) + ": " + msg), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using PointSet = std::vector<int>;  // sorted point indices

// Ball-membership comparison d <= r, shared by every ball and separation test.
inline bool within(double d, double r) { return d <= r + 1e-12 * (r > 1 ? r : 1); }
using Rng = std::mt19937_64;

// Deterministic substream derivation: identical (seed, labels) give identical engines.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive(std::uint64_t seed, std::uint64_t label);
std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b);
std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t label_of(const char* name);
Rng make_rng(std::uint64_t stream);

double uniform01(Rng& g);
double gaussian(Rng& g);
std::vector<double> gaussian_vector(Rng& g, int dim);

// Worker count from ZEROSETKIT_THREADS (default: hardware concurrency, at least 1).
int thread_count();

// Runs body(i) for i in [0, n) across thread_count() workers. Body must only
// write to per-index storage.
template <class F>
void parallel_for(int n, F&& body);

}  // namespace zsk

#include "zsk/parallel_impl.hpp"
