#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rateless {

using Rng = std::mt19937_64;

// Stream tags for seed derivation; each simulation stage draws from its own stream.
enum class Stream : std::uint64_t {
  Geometry = 1,
  Fading = 2,
  Bootstrap = 3,
};

// Counter-based seed derivation: mixes (master, stream, indices...) through
// splitmix64 so every (realization, fading draw) gets an independent,
// order-free seed. Results do not depend on the order trials are executed in.
std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                          std::initializer_list<std::uint64_t> indices);

inline Rng make_rng(std::uint64_t master, Stream stream,
                    std::initializer_list<std::uint64_t> indices) {
  return Rng(derive_seed(master, stream, indices));
}

}  // namespace rateless
