#include "zsk/common.hpp"

#include <cstdlib>
#include <cstring>
#include <thread>

namespace zsk {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NotNegativeType: return "NotNegativeType";
    case ErrorCode::NonInjectiveMap: return "NonInjectiveMap";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RhoBelowOne: return "RhoBelowOne";
    case ErrorCode::ModerationViolated: return "ModerationViolated";
    case ErrorCode::MinDistanceViolated: return "MinDistanceViolated";
    case ErrorCode::QuasisymmetryViolated: return "QuasisymmetryViolated";
    case ErrorCode::BetaTooLarge: return "BetaTooLarge";
    case ErrorCode::ConclusionViolated: return "ConclusionViolated";
    case ErrorCode::TauExceedsDiameter: return "TauExceedsDiameter";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::RejectionCapExceeded: return "RejectionCapExceeded";
    case ErrorCode::PairTooClose: return "PairTooClose";
    case ErrorCode::InfiniteIndex: return "InfiniteIndex";
    case ErrorCode::EmptyZeroSet: return "EmptyZeroSet";
    case ErrorCode::SolverStalled: return "SolverStalled";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::IterationCapExceeded:
    case ErrorCode::RejectionCapExceeded:
    case ErrorCode::SolverStalled:
    case ErrorCode::CapExceeded:
    case ErrorCode::ConclusionViolated:
      return false;
    default:
      return true;
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t label) { return mix64(mix64(seed) ^ (label * 0xd6e8feb86659fd93ULL + 1)); }

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) { return derive(derive(seed, a), b); }

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return derive(derive(derive(seed, a), b), c);
}

std::uint64_t label_of(const char* name) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (const char* p = name; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ULL;
  }
  return h;
}

Rng make_rng(std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

double uniform01(Rng& g) { return std::uniform_real_distribution<double>(0.0, 1.0)(g); }

double gaussian(Rng& g) { return std::normal_distribution<double>(0.0, 1.0)(g); }

std::vector<double> gaussian_vector(Rng& g, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(dim);
  for (auto& x : v) x = n(g);
  return v;
}

int thread_count() {
  if (const char* e = std::getenv("ZEROSETKIT_THREADS")) {
    int v = std::atoi(e);
    if (v >= 1) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

}  // namespace zsk
