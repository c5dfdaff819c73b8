#include "sampledrank/rng.h"

namespace sampledrank {
namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kSplitSalt = 0xd1b54a32d192ed03ULL;
}  // namespace

std::uint64_t RngStream::Mix(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::Split(std::uint64_t index) const {
  return RngStream(FromKey{}, Mix(key_ ^ Mix(index * kSplitSalt + kGolden)));
}

RngStream::result_type RngStream::operator()() {
  ++counter_;
  return Mix(key_ + counter_ * kGolden);
}

std::uint64_t RngStream::Below(std::uint64_t bound) {
  unsigned __int128 product =
      static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double RngStream::Uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace sampledrank
