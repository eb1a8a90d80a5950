#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "rswipt/admm/selection.hpp"

namespace rswipt::admm {

/// Broadcast payload: u64 round, u64 agent id, then the 2K local-vector
/// entries as little-endian IEEE doubles.
struct Message {
  std::uint64_t round = 0;
  std::uint64_t agent = 0;
  Vector values;
};

std::vector<std::uint8_t> encode(const Message& m);
Message decode(const std::vector<std::uint8_t>& bytes);

/// In-process broadcast medium with a round barrier: messages posted in a
/// round become visible to everyone only through deliver(), which returns
/// them ordered by agent id regardless of posting order.
class BroadcastBus {
 public:
  explicit BroadcastBus(int agents) : agents_(agents) {}

  void post(const Message& m);
  // Requires exactly one message per agent for `round`.
  std::vector<Message> deliver(std::uint64_t round);

  std::uint64_t messages_sent() const { return messages_; }
  std::uint64_t bytes_sent() const { return bytes_; }

 private:
  int agents_;
  std::mutex mu_;
  std::vector<std::vector<std::uint8_t>> pending_;
  std::uint64_t messages_ = 0;
  std::uint64_t bytes_ = 0;
};

}  // namespace rswipt::admm
