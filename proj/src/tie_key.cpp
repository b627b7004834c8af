#include "localmax/tie_key.hpp"

namespace localmax {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t round_seed(std::uint64_t seed, std::uint32_t round, bool rerandomize) {
  const std::uint32_t r = rerandomize ? round : 0;
  return mix64(mix64(seed) ^ (std::uint64_t{r} * 0xd1b54a32d192ed03ULL));
}

TieKey tie_key(EdgeId edge_id, double weight, std::uint64_t rseed) {
  return TieKey{weight, mix64(rseed ^ mix64(edge_id)), edge_id};
}

double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace localmax
