#include "cmpairs/cache.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <unistd.h>
#include <unordered_map>

namespace cmpairs::cache {

const char* kToolVersion = "cmpairs-0.1.0";

// ---------------------------------------------------------------- sha256

namespace {

struct Sha256 {
    uint32_t h[8];
    uint64_t len = 0;
    uint8_t buf[64];
    size_t fill = 0;

    static constexpr uint32_t K[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
        0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
        0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
        0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
        0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
        0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
        0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
        0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
        0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
        0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

    Sha256()
    {
        static constexpr uint32_t init[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                             0xa54ff53a, 0x510e527f, 0x9b05688c,
                                             0x1f83d9ab, 0x5be0cd19};
        std::memcpy(h, init, sizeof(h));
    }

    static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void block(const uint8_t* p)
    {
        uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
                   (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
                 g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = hh + S1 + ch + K[i] + w[i];
            uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = S0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }

    void update(const uint8_t* p, size_t n)
    {
        len += n;
        while (n) {
            size_t take = std::min(n, sizeof(buf) - fill);
            std::memcpy(buf + fill, p, take);
            fill += take;
            p += take;
            n -= take;
            if (fill == sizeof(buf)) {
                block(buf);
                fill = 0;
            }
        }
    }

    std::array<uint8_t, 32> finish()
    {
        uint64_t bits = len * 8;
        uint8_t pad = 0x80;
        update(&pad, 1);
        uint8_t z = 0;
        while (fill != 56)
            update(&z, 1);
        uint8_t lenb[8];
        for (int i = 0; i < 8; ++i)
            lenb[i] = uint8_t(bits >> (56 - 8 * i));
        update(lenb, 8);
        std::array<uint8_t, 32> out;
        for (int i = 0; i < 8; ++i) {
            out[4 * i] = uint8_t(h[i] >> 24);
            out[4 * i + 1] = uint8_t(h[i] >> 16);
            out[4 * i + 2] = uint8_t(h[i] >> 8);
            out[4 * i + 3] = uint8_t(h[i]);
        }
        return out;
    }
};

constexpr uint32_t Sha256::K[64];

} // namespace

std::string sha256_hex(const std::string& data)
{
    Sha256 s;
    s.update(reinterpret_cast<const uint8_t*>(data.data()), data.size());
    auto d = s.finish();
    static const char* hex = "0123456789abcdef";
    std::string out(64, '0');
    for (int i = 0; i < 32; ++i) {
        out[2 * i] = hex[d[i] >> 4];
        out[2 * i + 1] = hex[d[i] & 15];
    }
    return out;
}

// ---------------------------------------------------------------- store

struct Store::Impl {
    mutable std::mutex mx;
    std::unordered_map<std::string, std::string> mem;
    bool disk = true;
    std::string dir;
    Stats stats;
    std::vector<std::function<void()>> clearers;
};

Store::Store() : impl_(new Impl)
{
    const char* env = std::getenv("CMPAIRS_CACHE");
    impl_->dir = env && *env ? env : ".cmpairs-cache";
}

Store& Store::instance()
{
    static Store s;
    return s;
}

void Store::set_disk_enabled(bool on)
{
    std::lock_guard<std::mutex> l(impl_->mx);
    impl_->disk = on;
}

void Store::set_directory(const std::string& dir)
{
    std::lock_guard<std::mutex> l(impl_->mx);
    impl_->dir = dir;
}

std::string Store::directory() const
{
    std::lock_guard<std::mutex> l(impl_->mx);
    return impl_->dir;
}

bool Store::disk_enabled() const
{
    std::lock_guard<std::mutex> l(impl_->mx);
    return impl_->disk;
}

void Store::clear_memory()
{
    std::vector<std::function<void()>> clearers;
    {
        std::lock_guard<std::mutex> l(impl_->mx);
        impl_->mem.clear();
        clearers = impl_->clearers;
    }
    for (auto& fn : clearers)
        fn();
}

void Store::register_clearer(std::function<void()> fn)
{
    std::lock_guard<std::mutex> l(impl_->mx);
    impl_->clearers.push_back(std::move(fn));
}

Stats Store::stats() const
{
    std::lock_guard<std::mutex> l(impl_->mx);
    return impl_->stats;
}

void Store::reset_stats()
{
    std::lock_guard<std::mutex> l(impl_->mx);
    impl_->stats = Stats{};
}

static std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return data;
}

static void write_file_atomic(const std::string& dir, const std::string& path,
                              const std::string& data)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." +
                      std::to_string(reinterpret_cast<uintptr_t>(&data) & 0xffff);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            return; // cache is best-effort
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        std::filesystem::remove(tmp, ec);
}

std::string Store::get_or_compute(const std::string& op, const std::string& input_key,
                                  const std::function<std::string()>& compute,
                                  const std::function<bool(const std::string&)>& revalidate)
{
    std::string key = sha256_hex(std::string(kToolVersion) + "\n" + op + "\n" + input_key);
    {
        std::lock_guard<std::mutex> l(impl_->mx);
        auto it = impl_->mem.find(key);
        if (it != impl_->mem.end()) {
            ++impl_->stats.memory_hits;
            return it->second;
        }
    }
    bool disk;
    std::string dir;
    {
        std::lock_guard<std::mutex> l(impl_->mx);
        disk = impl_->disk;
        dir = impl_->dir;
    }
    std::string path = dir + "/" + key + ".gb";
    if (disk) {
        if (auto data = read_file(path)) {
            if (!revalidate || revalidate(*data)) {
                std::lock_guard<std::mutex> l(impl_->mx);
                impl_->mem.emplace(key, *data);
                ++impl_->stats.disk_hits;
                return *data;
            }
        }
    }
    std::string value = compute();
    {
        std::lock_guard<std::mutex> l(impl_->mx);
        impl_->mem.emplace(key, value);
        ++impl_->stats.misses;
    }
    if (disk)
        write_file_atomic(dir, path, value);
    return value;
}

} // namespace cmpairs::cache
