#pragma once

#include <cstdint>

namespace navsim {

/// SplitMix64 mix step. Used to derive independent, reproducible seed
/// streams from one base seed without correlated low bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace navsim
