#pragma once

#include <string>

#include <json.hpp>

#include "incoh/channel.hpp"

namespace incoh {

/// Wire format:
///   {"dim": d, "kraus": [ [[ [re,im], ... d entries ], ... d rows ], ... ]}
/// Row-major, each scalar a two-element [re, im] array.
nlohmann::json channel_to_json(const Channel& c);
Channel channel_from_json(const nlohmann::json& j);

Channel load_channel_file(const std::string& path);
void save_channel_file(const std::string& path, const Channel& c);

}  // namespace incoh
