#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace propus {

using Sha1Digest = std::array<std::uint8_t, 20>;

// Plain FIPS 180-1 SHA-1. The collision search only needs a fixed, fast,
// well-mixed 20-byte digest; no crypto-strength requirements.
class Sha1 {
 public:
  Sha1() { reset(); }

  void reset();
  void update(const std::uint8_t* data, std::size_t len);
  Sha1Digest finish();

  // One-shot hashing; messages up to 55 bytes take a single-block path
  // (the walk loop hashes ~25-byte points millions of times).
  static Sha1Digest hash(const std::uint8_t* data, std::size_t len);

 private:
  void process_block(const std::uint8_t* block);
  Sha1Digest digest_from_state() const;

  std::uint32_t state_[5];
  std::uint64_t total_len_;
  std::uint8_t buffer_[64];
  std::size_t buffer_len_;
};

}  // namespace propus
