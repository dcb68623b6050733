#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "zkset/bytes.hpp"
#include "zkset/sha256.hpp"

namespace zkset {

// All randomness enters through this interface so callers control the source
// (system entropy for real use, a seeded stream for reproducible runs).
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<uint8_t> out) = 0;

    uint64_t next_u64() {
        uint8_t b[8];
        fill(b);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v = (v << 8) | b[i];
        return v;
    }

    Bytes bytes(size_t n) {
        Bytes out(n);
        fill(out);
        return out;
    }
};

class SystemRandom final : public RandomSource {
  public:
    void fill(std::span<uint8_t> out) override {
        for (auto& b : out) b = static_cast<uint8_t>(dev_());
    }

  private:
    std::random_device dev_;
};

// SHA-256 counter stream. Same seed, same byte stream, on every platform.
class SeededRandom final : public RandomSource {
  public:
    explicit SeededRandom(uint64_t seed) {
        Bytes s;
        append(s, to_bytes("zkset/seeded-random/v1"));
        append_u64_be(s, seed);
        seed_ = Sha256::hash(s);
    }

    void fill(std::span<uint8_t> out) override {
        size_t off = 0;
        while (off < out.size()) {
            if (avail_ == 0) refill();
            size_t n = std::min(out.size() - off, avail_);
            std::memcpy(out.data() + off, block_.data() + (block_.size() - avail_), n);
            avail_ -= n;
            off += n;
        }
    }

  private:
    void refill() {
        Sha256 h;
        h.update(BytesView(seed_.data(), seed_.size()));
        uint8_t ctr[8];
        for (int i = 0; i < 8; i++) ctr[i] = static_cast<uint8_t>(counter_ >> (56 - 8 * i));
        h.update(BytesView(ctr, 8));
        block_ = h.finalize();
        counter_++;
        avail_ = block_.size();
    }

    Sha256::Digest seed_{};
    Sha256::Digest block_{};
    uint64_t counter_ = 0;
    size_t avail_ = 0;
};

}  // namespace zkset
