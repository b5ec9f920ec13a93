#include "ewb/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace ewb::audio {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
    out.insert(out.end(), tag, tag + 4);
}

std::int16_t quantize(double x) {
    const long v = std::lround(x * 32767.0);
    return static_cast<std::int16_t>(std::clamp<long>(v, -32768, 32767));
}

} // namespace

void write_wav(const StereoBuffer& buffer, const RenderSpec& spec,
               const std::filesystem::path& path) {
    spec.validate();
    const std::uint32_t frames = static_cast<std::uint32_t>(buffer.frames());
    const std::uint16_t channels = 2;
    const std::uint16_t bytes_per_sample = 2;
    const std::uint32_t block_align = channels * bytes_per_sample;
    const std::uint32_t data_bytes = frames * block_align;

    std::vector<std::uint8_t> bytes;
    bytes.reserve(44 + data_bytes);
    put_tag(bytes, "RIFF");
    put_u32(bytes, 36 + data_bytes);
    put_tag(bytes, "WAVE");
    put_tag(bytes, "fmt ");
    put_u32(bytes, 16);
    put_u16(bytes, 1); // PCM
    put_u16(bytes, channels);
    put_u32(bytes, static_cast<std::uint32_t>(spec.sample_rate));
    put_u32(bytes, static_cast<std::uint32_t>(spec.sample_rate) * block_align);
    put_u16(bytes, static_cast<std::uint16_t>(block_align));
    put_u16(bytes, 16); // bits per sample
    put_tag(bytes, "data");
    put_u32(bytes, data_bytes);
    for (std::uint32_t s = 0; s < frames; ++s) {
        const std::int16_t l = quantize(buffer.left[s]);
        const std::int16_t r = quantize(buffer.right[s]);
        bytes.push_back(static_cast<std::uint8_t>(l & 0xFF));
        bytes.push_back(static_cast<std::uint8_t>((l >> 8) & 0xFF));
        bytes.push_back(static_cast<std::uint8_t>(r & 0xFF));
        bytes.push_back(static_cast<std::uint8_t>((r >> 8) & 0xFF));
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw Error(ErrorCode::IoFailure, "short write to " + path.string());
    }
}

StereoBuffer read_wav(const std::filesystem::path& path, int& sample_rate) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::vector<char> bytes((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>());
    if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw Error(ErrorCode::ParseError, "not a RIFF/WAVE file");
    }

    auto u16 = [&bytes](std::size_t at) {
        return static_cast<std::uint16_t>(
            static_cast<std::uint8_t>(bytes[at]) |
            (static_cast<std::uint8_t>(bytes[at + 1]) << 8));
    };
    auto u32 = [&bytes](std::size_t at) {
        return static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[at])) |
               (static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[at + 1])) << 8) |
               (static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[at + 2])) << 16) |
               (static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[at + 3])) << 24);
    };

    std::size_t pos = 12;
    std::uint32_t data_at = 0;
    std::uint32_t data_bytes = 0;
    sample_rate = 0;
    while (pos + 8 <= bytes.size()) {
        const std::uint32_t chunk_size = u32(pos + 4);
        if (std::memcmp(bytes.data() + pos, "fmt ", 4) == 0) {
            if (u16(pos + 8) != 1 || u16(pos + 10) != 2 || u16(pos + 22) != 16) {
                throw Error(ErrorCode::ParseError,
                            "expected stereo 16-bit PCM");
            }
            sample_rate = static_cast<int>(u32(pos + 12));
        } else if (std::memcmp(bytes.data() + pos, "data", 4) == 0) {
            data_at = static_cast<std::uint32_t>(pos + 8);
            data_bytes = chunk_size;
        }
        pos += 8 + chunk_size + (chunk_size & 1);
    }
    if (sample_rate == 0 || data_at == 0) {
        throw Error(ErrorCode::ParseError, "missing fmt or data chunk");
    }

    StereoBuffer out;
    const std::size_t frames = data_bytes / 4;
    out.resize(frames);
    for (std::size_t s = 0; s < frames; ++s) {
        const auto l = static_cast<std::int16_t>(u16(data_at + 4 * s));
        const auto r = static_cast<std::int16_t>(u16(data_at + 4 * s + 2));
        out.left[s] = l / 32767.0;
        out.right[s] = r / 32767.0;
    }
    return out;
}

} // namespace ewb::audio
