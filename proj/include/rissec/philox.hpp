#ifndef RISSEC_PHILOX_HPP
#define RISSEC_PHILOX_HPP

#include <array>
#include <cstdint>

namespace rissec {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block is a
// pure function of (counter, key), so trial substreams are non-overlapping by
// construction and estimates are exactly invariant to how trials are
// partitioned across threads.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stream of doubles for one (seed, stream_id) pair; counter layout:
// {draw_lo, draw_hi, stream_lo, stream_hi}, key = seed. Each block yields
// four 32-bit words consumed as two 53-bit uniforms.
class PhiloxStream {
public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream_id)),
        stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

  // uniform on (0, 1): (x + 1/2) / 2^53 with x a 53-bit draw
  double uniform();

  // standard normal (Box-Muller, two uniforms per pair, second cached)
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled by the
  // boost G(a) = G(a+1) U^{1/a}
  double gamma(double shape);

private:
  std::array<std::uint32_t, 4> next_block();

  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t draw_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int buf_pos_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

} // namespace rissec

#endif
