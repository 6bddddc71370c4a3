#include "ofdmcr/rng.hpp"

#include <cmath>

namespace ofdmcr {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t combine(std::uint64_t key, std::uint64_t id) {
  return splitmix64(key ^ splitmix64(id + 0x632be59bd9b4e019ULL));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(SeedSpec seed) { seed_from(combine(splitmix64(seed.master_seed), seed.stream_id)); }

Rng::Rng(SeedSpec seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = combine(splitmix64(seed.master_seed), seed.stream_id);
  for (std::uint64_t id : path) key = combine(key, id);
  seed_from(key);
}

void Rng::seed_from(std::uint64_t key) {
  for (auto& word : s_) {
    key += 0x9e3779b97f4a7c15ULL;
    word = splitmix64(key);
  }
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log(uniform_open0()); }

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = (*this)();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace ofdmcr
