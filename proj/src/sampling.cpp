#include "dualdefect/sampling.hpp"

namespace dualdefect {

namespace {
// splitmix64 finalizer, mixes seed and salt into one engine seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

CoefficientSampler::CoefficientSampler(std::uint64_t seed, std::uint64_t salt, long bound)
    : rng_(mix(seed ^ mix(salt))), dist_(-bound, bound) {}

IntVector CoefficientSampler::next(std::size_t len) {
  IntVector v(len);
  for (auto& x : v) x = dist_(rng_);
  return v;
}

std::vector<IntVector> CoefficientSampler::batch(std::size_t count, std::size_t len) {
  std::vector<IntVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next(len));
  return out;
}

IntVector combine_rows(const IntMatrix& basis, const IntVector& coeffs) {
  IntVector v(basis.cols());
  for (std::size_t k = 0; k < basis.rows(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t j = 0; j < basis.cols(); ++j) v[j] += coeffs[k] * basis(k, j);
  }
  return v;
}

RatVector combine_rows(const RatMatrix& basis, const IntVector& coeffs) {
  RatVector v(basis.cols());
  for (std::size_t k = 0; k < basis.rows(); ++k) {
    if (coeffs[k] == 0) continue;
    const Rat c(coeffs[k]);
    for (std::size_t j = 0; j < basis.cols(); ++j) v[j] += c * basis(k, j);
  }
  return v;
}

}  // namespace dualdefect
