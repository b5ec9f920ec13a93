#ifndef EWB_WAV_HPP
#define EWB_WAV_HPP

#include <filesystem>

#include "ewb/audio.hpp"

namespace ewb::audio {

// Writes a canonical RIFF/WAVE file: PCM format 1, little-endian, 16-bit
// signed, interleaved L/R. Samples are round(x * 32767) clamped to
// [-32768, 32767]. Throws Error{IoFailure} on any write problem.
void write_wav(const StereoBuffer& buffer, const RenderSpec& spec,
               const std::filesystem::path& path);

// Reads back a file written by write_wav (PCM16 stereo only), returning
// samples scaled by 1/32767.
StereoBuffer read_wav(const std::filesystem::path& path, int& sample_rate);

} // namespace ewb::audio

#endif
