#pragma once

#include <cstdint>

namespace sfast {

/// One step of the splitmix64 finalizer; used to key independent streams by
/// (seed, trial, vertex) without carrying generator state around.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

/// Maps a 64-bit word to [0, bound) by the high half of a 128-bit product.
/// The bias is below 2^-40 for the bounds used here.
constexpr std::uint64_t scale_to(std::uint64_t word, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(word) * bound) >> 64);
}

/// Exactly uniform draw in [0, bound) from a 64-bit engine (Lemire's method).
/// std::uniform_int_distribution is avoided so streams match across
/// standard libraries.
template <typename Engine>
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace sfast
