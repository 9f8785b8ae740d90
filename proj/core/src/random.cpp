#include "cmjtree/random.hpp"

#include <cmath>

namespace cmjtree {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

Rng derive_stream(std::uint64_t master_seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(master_seed) ^ splitmix64(~trial)));
}

}  // namespace cmjtree
