#include "bcuav/bci/channel.hpp"

#include <cmath>

namespace bcuav::bci {

void ChannelModel::validate() const {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw std::invalid_argument("channel.accuracy must be in [0, 1]");
  if (!(recognition_interval > 0.0) || !std::isfinite(recognition_interval)) {
    throw std::invalid_argument("channel.recognition_interval must be positive");
  }
  if (!(latency >= 0.0) || !std::isfinite(latency)) throw std::invalid_argument("channel.latency must be >= 0");
}

CommandChannel::CommandChannel(const ChannelModel& model) : model_(model), rng_(model.seed) { model_.validate(); }

// 53 random mantissa bits; independent of the standard library's distribution code.
double CommandChannel::uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

std::optional<Delivery> CommandChannel::emit(BciCommand intended, double t) {
  if (t < last_call_) throw NonMonotoneTime();
  last_call_ = t;
  if (t - last_output_ < model_.recognition_interval) return std::nullopt;
  last_output_ = t;

  BciCommand delivered = intended;
  if (uniform01() >= model_.accuracy) {
    auto pick = static_cast<std::size_t>(uniform01() * static_cast<double>(kCommandCount - 1));
    if (pick >= kCommandCount - 1) pick = kCommandCount - 2;
    if (pick >= static_cast<std::size_t>(intended)) ++pick;
    delivered = kVocabulary[pick];
  }
  return Delivery{intended, delivered, t, t + model_.latency};
}

}  // namespace bcuav::bci
