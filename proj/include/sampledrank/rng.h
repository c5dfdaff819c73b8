#ifndef SAMPLEDRANK_RNG_H_
#define SAMPLEDRANK_RNG_H_

#include <cstdint>
#include <limits>

namespace sampledrank {

// Counter-based random stream. Output i of a stream is a SplitMix64 hash of
// (key, i), so a stream is fully described by its key and position, and
// independent substreams are derived from a key without touching any shared
// state. A stream must only be advanced by one thread at a time.
//
// Satisfies std::uniform_random_bit_generator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : key_(Mix(seed)) {}

  // Substream `index` of this stream. Does not advance this stream, and is a
  // pure function of (key, index): Split(i) on copies yields identical
  // streams.
  RngStream Split(std::uint64_t index) const;

  result_type operator()();

  // Uniform integer in [0, bound). bound must be > 0. Unbiased (Lemire's
  // multiply-and-reject).
  std::uint64_t Below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  static std::uint64_t Mix(std::uint64_t x);

 private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sampledrank

#endif  // SAMPLEDRANK_RNG_H_
