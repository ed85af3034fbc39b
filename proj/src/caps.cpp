#include "cmpairs/caps.hpp"

#include <mutex>

namespace cmpairs::capscfg {

namespace {
std::mutex mx;
std::map<std::string, int>& table()
{
    static std::map<std::string, int> t;
    return t;
}
} // namespace

void set(const std::string& key, int value)
{
    std::lock_guard<std::mutex> l(mx);
    table()[key] = value;
}

std::optional<int> get(const std::string& key)
{
    std::lock_guard<std::mutex> l(mx);
    auto it = table().find(key);
    if (it == table().end())
        return std::nullopt;
    return it->second;
}

int get_or(const std::string& key, int fallback)
{
    auto v = get(key);
    return v ? *v : fallback;
}

std::map<std::string, int> all()
{
    std::lock_guard<std::mutex> l(mx);
    return table();
}

void reset()
{
    std::lock_guard<std::mutex> l(mx);
    table().clear();
}

} // namespace cmpairs::capscfg
