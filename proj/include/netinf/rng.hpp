#pragma once

#include <cstdint>
#include <random>

namespace netinf {

using RngStream = std::mt19937_64;

/// splitmix64 finalizer; used to whiten seed material.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream keyed by (master seed, up to three indices). Identical
/// keys give identical streams, so per-task results do not depend on
/// scheduling order.
inline RngStream derive_stream(std::uint64_t master, std::uint64_t a = 0,
                               std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ mix64(a + 0x1000000000000001ULL));
  s = mix64(s ^ mix64(b + 0x2000000000000003ULL));
  s = mix64(s ^ mix64(c + 0x3000000000000005ULL));
  return RngStream(s);
}

}  // namespace netinf
