#include "rissec/philox.hpp"

#include <cmath>
#include <stdexcept>

namespace rissec {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  k[0] += kWeyl0;
  k[1] += kWeyl1;
}
} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) round_once(counter, key);
  return counter;
}

std::array<std::uint32_t, 4> PhiloxStream::next_block() {
  const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(draw_),
                                            static_cast<std::uint32_t>(draw_ >> 32),
                                            stream_lo_, stream_hi_};
  ++draw_;
  return philox4x32(ctr, key_);
}

double PhiloxStream::uniform() {
  if (buf_pos_ >= 4) {
    const auto blk = next_block();
    for (int i = 0; i < 4; ++i) buf_[i] = blk[static_cast<size_t>(i)];
    buf_pos_ = 0;
  }
  const std::uint64_t hi = buf_[buf_pos_];
  const std::uint64_t lo = buf_[buf_pos_ + 1];
  buf_pos_ += 2;
  const std::uint64_t x = ((hi << 32) | lo) >> 11; // 53 bits
  return (static_cast<double>(x) + 0.5) * 0x1.0p-53;
}

double PhiloxStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 6.28318530717958647692 * u2;
  cached_normal_ = r * std::sin(th);
  has_cached_normal_ = true;
  return r * std::cos(th);
}

double PhiloxStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("PhiloxStream::gamma: shape > 0 required");
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia & Tsang (2000)
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

} // namespace rissec
