#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include "bcuav/bci/command.hpp"

namespace bcuav::bci {

class NonMonotoneTime : public std::invalid_argument {
 public:
  NonMonotoneTime() : std::invalid_argument("channel time went backwards") {}
};

/// Recognition model of the brain-computer link.
struct ChannelModel {
  double accuracy = 0.7;              // probability the intended command is recognized
  double recognition_interval = 1.0;  // s, minimum spacing between outputs
  double latency = 0.3;               // s, from intent to delivery
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Delivery {
  BciCommand intended;
  BciCommand delivered;
  double issued_at;   // s
  double deliver_at;  // s

  bool correct() const { return intended == delivered; }
};

/// Rate-limited, lossy command channel. Intents arriving sooner than the
/// recognition interval after the previous output are dropped; accepted
/// intents are recognized correctly with probability `accuracy`, otherwise
/// replaced by one of the other eight commands chosen uniformly.
class CommandChannel {
 public:
  explicit CommandChannel(const ChannelModel& model);

  /// Throws NonMonotoneTime if t is earlier than the previous call.
  std::optional<Delivery> emit(BciCommand intended, double t);

  const ChannelModel& model() const { return model_; }

 private:
  double uniform01();

  ChannelModel model_;
  std::mt19937_64 rng_;
  double last_call_ = -std::numeric_limits<double>::infinity();
  double last_output_ = -std::numeric_limits<double>::infinity();
};

}  // namespace bcuav::bci
