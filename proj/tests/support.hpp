// SPDX-License-Identifier: Apache-2.0
// Shared fixtures for the test binaries: corpus environments and seeded
// random elements.
#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>

#include "chowkit/corpus.hpp"
#include "chowkit/ring.hpp"
#include "chowkit/scene.hpp"

namespace chowkit::testing {

struct LoadedCase {
  scene::Environment env;
  scene::Report report;
};

// Each corpus case is evaluated once per process.
inline const LoadedCase& corpus_case(const std::string& name) {
  static std::map<std::string, std::unique_ptr<LoadedCase>> cache;
  auto& slot = cache[name];
  if (!slot) {
    slot = std::make_unique<LoadedCase>();
    const auto c = corpus::load_case(name);
    slot->report = scene::eval_scene(scene::parse_scene(std::string(c.scene), name + ".chow"), slot->env);
  }
  return *slot;
}

inline const scene::Environment& corpus_env(const std::string& name) { return corpus_case(name).env; }

inline RingPtr corpus_ring(const std::string& c, const std::string& ring) {
  return corpus_env(c).ring(ring);
}

class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  Rational coefficient() {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Rational q(num(rng_), den(rng_));
    q.canonicalize();
    return q;
  }

  // Roughly half the basis coordinates are populated.
  Element element(const RingPtr& r) {
    Element x = r->zero();
    std::bernoulli_distribution keep(0.5);
    for (int d = 0; d <= r->top_degree(); ++d) {
      for (std::size_t i = 0; i < r->dim(d); ++i) {
        if (keep(rng_)) x += coefficient() * r->basis_element(d, i);
      }
    }
    return x;
  }

  Element homogeneous(const RingPtr& r, int d) {
    Element x = r->zero();
    for (std::size_t i = 0; i < r->dim(d); ++i) x += coefficient() * r->basis_element(d, i);
    return x;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace chowkit::testing
