#pragma once

#include <functional>
#include <optional>
#include <string>

namespace cmpairs::cache {

/// SHA-256 of a byte string, as lowercase hex.
std::string sha256_hex(const std::string& data);

struct Stats {
    long long memory_hits = 0;
    long long disk_hits = 0;
    long long misses = 0;
};

/// Content-addressed cache with an in-memory layer and an optional disk
/// layer. Keys are hashes of (operation, inputs, tool version); payloads are
/// opaque serialized strings validated by the caller on load.
///
/// Disk layout: one write-once file per entry under the cache directory,
/// written via temp-file + atomic rename so concurrent writers are safe.
class Store {
public:
    static Store& instance();

    /// Look up, or compute and insert. `revalidate` (may be null) is applied
    /// to payloads read from disk; returning false discards the disk entry.
    std::string get_or_compute(const std::string& op, const std::string& input_key,
                               const std::function<std::string()>& compute,
                               const std::function<bool(const std::string&)>& revalidate);

    void set_disk_enabled(bool on);
    void set_directory(const std::string& dir);
    std::string directory() const;
    bool disk_enabled() const;

    /// Drops the in-memory layer (used to test disk-cache transparency).
    /// Also invokes every registered layer clearer, so higher-level memo
    /// tables (Groebner bases, resolutions, graded pieces) flush too.
    void clear_memory();
    /// Registers a callback run by clear_memory().
    void register_clearer(std::function<void()> fn);
    Stats stats() const;
    void reset_stats();

private:
    Store();
    struct Impl;
    Impl* impl_;
};

/// Version string baked into every cache key; bump to invalidate.
extern const char* kToolVersion;

} // namespace cmpairs::cache
