#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace fsde {

/// Philox4x32-10 block function (Salmon et al., SC'11).
///
/// A counter-based generator: the output block is a pure function of
/// (counter, key), so any substream can be addressed without sequential state.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Purpose tag folded into every stream address.
enum class StreamKind : std::uint8_t {
    fbm = 1,
    bm = 2,
    initial_state = 3,
    probe = 4,
    corpus = 5,
};

/// Address of one substream: (seed, kind, path index, component).
///
/// Key words hold the 64-bit seed. Counter word 0 is the block index inside the
/// stream, word 1 packs (kind << 24 | component), words 2-3 hold the path index.
/// Two different addresses never share a counter, so Monte Carlo replicas can
/// run on any number of threads in any order and draw identical numbers.
struct StreamId {
    StreamKind kind = StreamKind::fbm;
    std::uint64_t path = 0;
    std::uint32_t component = 0;  ///< must be < 2^24
};

/// Sequential view of a single substream. Satisfies UniformRandomBitGenerator.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, StreamId id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    void fill_normal(std::span<double> out);

  private:
    void refill();

    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter buffer_{};
    unsigned used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; derives independent child seeds from (seed, tag).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

}  // namespace fsde
