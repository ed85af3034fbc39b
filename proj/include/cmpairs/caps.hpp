#pragma once

#include <map>
#include <optional>
#include <string>

namespace cmpairs::capscfg {

/// Process-wide cap overrides, set from the CLI (--caps k=v). Known keys:
/// resolution_cap, cech_pad, window_pad, glc_q, check_cap. Every report
/// records the caps in effect.
void set(const std::string& key, int value);
std::optional<int> get(const std::string& key);
int get_or(const std::string& key, int fallback);
std::map<std::string, int> all();
void reset();

} // namespace cmpairs::capscfg
