// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relclust/types.hpp"

namespace relclust {

// Controls ground-truth-driven constraint sampling. r is the fraction of all
// unordered pairs that receive a value; p is the chance a true same-cluster
// pair is reported as May, q the chance a true different-cluster pair is
// reported as MayNot. q < 0 means "use p".
struct NoiseSpec {
  double r = 0.0;
  double p = 1.0;
  double q = -1.0;
  std::uint64_t seed = 0;

  double effective_q() const { return q < 0.0 ? p : q; }
  void validate() const;
};

// Samples floor(r * n(n-1)/2) distinct unordered pairs uniformly by seed and
// labels each from the noise model. With one seed, the pair sets for two
// rates r1 < r2 are nested, and the flip decisions for a pair coincide
// across p values (flip iff u >= p for the same u).
SideInfo sample_constraints(std::span<const int> labels, const NoiseSpec& spec);

enum class Pattern { Blobs, Moons, Circles, Elongated, Spirals, Aggregation };

Pattern pattern_from_string(const std::string& name);
std::string pattern_name(Pattern p);

struct LabeledData {
  DataMatrix data;
  std::vector<int> labels;
};

// Seeded 2D benchmark shapes with ground-truth labels. Parametric forms
// (u ~ U[0,1) per point, eps ~ N(0, noise_sd^2) i.i.d. per coordinate):
//   blobs:       two spherical clusters at (-2,0) and (2,0), point = c + eps
//   moons:       t = pi*u; upper (cos t, sin t), lower (1 - cos t, 0.5 - sin t), + eps
//   circles:     t = 2pi*u; radius 1.0 or 0.5, (r cos t, r sin t) + eps
//   elongated:   x = 4u - 2, y = +/-0.75, + eps (two parallel bars)
//   spirals:     t = pi/4 + 11pi/4 * u, rad = 0.12 t; arm 0 (rad cos t, rad sin t),
//                arm 1 mirrored through the origin, + eps
//   aggregation: five spherical clusters of uneven sizes, sd 0.45, + eps
LabeledData gen_pattern(Pattern pattern, int n, double noise_sd,
                        std::uint64_t seed);

}  // namespace relclust
