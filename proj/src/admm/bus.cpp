#include "rswipt/admm/bus.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>

#include "rswipt/error.hpp"

namespace rswipt::admm {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in[at + b]) << (8 * b);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode(const Message& m) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + 8 * static_cast<std::size_t>(m.values.size()));
  put_u64(out, m.round);
  put_u64(out, m.agent);
  for (Eigen::Index k = 0; k < m.values.size(); ++k) put_u64(out, std::bit_cast<std::uint64_t>(m.values(k)));
  return out;
}

Message decode(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || bytes.size() % 8 != 0) throw ValidationError("decode: malformed message");
  Message m;
  m.round = get_u64(bytes, 0);
  m.agent = get_u64(bytes, 8);
  const auto n = static_cast<Eigen::Index>((bytes.size() - 16) / 8);
  m.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) m.values(k) = std::bit_cast<double>(get_u64(bytes, 16 + 8 * static_cast<std::size_t>(k)));
  return m;
}

void BroadcastBus::post(const Message& m) {
  auto bytes = encode(m);
  std::lock_guard lock(mu_);
  messages_ += 1;
  bytes_ += bytes.size();
  pending_.push_back(std::move(bytes));
}

std::vector<Message> BroadcastBus::deliver(std::uint64_t round) {
  std::vector<Message> out;
  {
    std::lock_guard lock(mu_);
    for (const auto& b : pending_) out.push_back(decode(b));
    pending_.clear();
  }
  std::sort(out.begin(), out.end(), [](const Message& a, const Message& b) { return a.agent < b.agent; });
  if (static_cast<int>(out.size()) != agents_) throw std::logic_error("broadcast round is missing messages");
  for (int k = 0; k < agents_; ++k) {
    if (out[k].round != round || out[k].agent != static_cast<std::uint64_t>(k)) {
      throw std::logic_error("broadcast round received an unexpected message");
    }
  }
  return out;
}

}  // namespace rswipt::admm
