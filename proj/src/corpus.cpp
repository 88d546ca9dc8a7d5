#include "dualdefect/corpus.hpp"

#include <set>

#include "dualdefect/cayley.hpp"
#include "dualdefect/errors.hpp"
#include "dualdefect/tangency.hpp"

namespace dualdefect {

namespace {

constexpr int kMaxAttempts = 1000;

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// A non-defective configuration in Z^d with a nonzero tangency space.
PointConfig nondefective_factor(std::size_t d, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::size_t pts = d + 2 + static_cast<std::size_t>(uniform(rng, 0, 1));
    PointConfig f = random_config(d, pts, 2, rng);
    const DefectResult res = defect_oracle(TangencyProblem::make(f));
    if (!res.empty_dual() && res.delta == 0) return f;
  }
  throw InputError("could not generate a non-defective factor");
}

}  // namespace

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  for (std::size_t step = 0; step < 3 * n; ++step) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    if (i == j) {
      if (uniform(rng, 0, 1)) {
        for (std::size_t k = 0; k < n; ++k) u(i, k) = -u(i, k);
      }
      continue;
    }
    const long m = uniform(rng, -2, 2);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += m * u(j, k);
  }
  return u;
}

GroupHom random_twist(std::size_t n, std::mt19937_64& rng, long shift) {
  IntMatrix u = random_unimodular(n, rng);
  IntVector t(n);
  for (auto& x : t) x = uniform(rng, -shift, shift);
  return GroupHom(std::move(u), std::move(t));
}

PointConfig random_config(std::size_t n, std::size_t points, long range, std::mt19937_64& rng) {
  if (points < n + 1) throw InputError("a full-dimensional configuration in Z^" + std::to_string(n) +
                                       " needs at least " + std::to_string(n + 1) + " points");
  long side = 2 * range + 1;
  long cells = 1;
  for (std::size_t i = 0; i < n && cells < static_cast<long>(points); ++i) cells *= side;
  if (cells < static_cast<long>(points)) throw InputError("too many points for the coordinate range");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::set<IntVector> seen;
    while (seen.size() < points) {
      IntVector p(n);
      for (auto& x : p) x = uniform(rng, -range, range);
      seen.insert(std::move(p));
    }
    PointConfig a(n, {seen.begin(), seen.end()});
    if (rank(difference_matrix(a)) != n) continue;
    return normalize(a).config;
  }
  throw InputError("could not generate a full-dimensional configuration");
}

std::vector<GeneratedConfig> generate_corpus(const CorpusParams& params) {
  if (params.count == 0 || params.count > 100000) throw InputError("count must be in [1, 100000]");
  if (params.range < 1 || params.range > 1000) throw InputError("range must be in [1, 1000]");
  std::mt19937_64 rng(params.seed);
  std::vector<GeneratedConfig> out;
  switch (params.kind) {
    case CorpusKind::Random: {
      if (params.dim > kMaxCorpusDim) throw InputError("dim must be at most " + std::to_string(kMaxCorpusDim));
      if (params.points > kMaxCorpusPoints)
        throw InputError("points must be at most " + std::to_string(kMaxCorpusPoints));
      for (std::size_t i = 0; i < params.count; ++i) {
        PointConfig a = random_config(params.dim, params.points, params.range, rng);
        a.set_name("random_" + std::to_string(i));
        out.push_back({std::move(a), std::nullopt});
      }
      break;
    }
    case CorpusKind::CayleyJoinType: {
      if (params.max_fiber_dim < 1) throw InputError("max fiber dim must be at least 1");
      if (params.r + (params.r + 1) > kMaxCorpusDim) throw InputError("r too large for n <= 8");
      while (out.size() < params.count) {
        // Fiber dimensions, shrunk until the ambient rank fits.
        std::vector<std::size_t> dims(params.r + 1);
        for (auto& d : dims) d = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(params.max_fiber_dim)));
        auto total = [&] {
          std::size_t s = params.r;
          for (auto d : dims) s += d;
          return s;
        };
        for (std::size_t k = 0; total() > kMaxCorpusDim; k = (k + 1) % dims.size())
          if (dims[k] > 1) --dims[k];
        std::size_t d_sum = 0;
        for (auto d : dims) d_sum += d;

        std::vector<PointConfig> fibers;
        std::size_t offset = 0;
        for (std::size_t d : dims) {
          const PointConfig f = nondefective_factor(d, rng);
          std::vector<IntVector> pts;
          for (const auto& u : f.points()) {
            IntVector p(d_sum);
            for (std::size_t k = 0; k < d; ++k) p[offset + k] = u[k];
            pts.push_back(std::move(p));
          }
          fibers.emplace_back(d_sum, std::move(pts));
          offset += d;
        }
        PointConfig a = cayley_sum(fibers);
        if (a.size() > kMaxCorpusPoints) continue;
        a = apply_affine(a, random_twist(a.dim(), rng));
        a.set_name("join_" + std::to_string(out.size()));
        out.push_back({std::move(a), static_cast<long>(params.r)});
      }
      break;
    }
    case CorpusKind::UnimodularTwist: {
      if (!params.base) throw InputError("unimodular_twist needs a base configuration");
      const PointConfig base = normalize(*params.base).config;
      const DefectResult d = defect_oracle(TangencyProblem::make(base));
      const std::optional<long> expected =
          d.empty_dual() ? std::nullopt : std::optional<long>(static_cast<long>(d.delta));
      for (std::size_t i = 0; i < params.count; ++i) {
        PointConfig a = apply_affine(base, random_twist(base.dim(), rng));
        a.set_name(params.base->name() + "_twist_" + std::to_string(i));
        out.push_back({std::move(a), expected});
      }
      break;
    }
  }
  return out;
}

}  // namespace dualdefect
