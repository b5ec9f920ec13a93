#ifndef EWB_FRAMES_HPP
#define EWB_FRAMES_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ewb/nucleation.hpp"

namespace ewb::frames {

struct FrameSpec {
    int    width  = 300;
    int    height = 300;
    double fps    = 30.0;

    void validate() const;
};

// 8-bit RGB image, rows top to bottom (row 0 is the top of the domain,
// y = domain_size).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    std::uint8_t* pixel(int ix, int iy) { return rgb.data() + 3 * (iy * width + ix); }
    const std::uint8_t* pixel(int ix, int iy) const {
        return rgb.data() + 3 * (iy * width + ix);
    }
};

// Renders the simulation at time t: white inside any live disk (shrinking
// subcritical disks included until their radius hits zero), uniform random
// grayscale static elsewhere. The static for frame k is drawn from an
// independent generator derived from (seed, frames stream, k), so frames can
// be produced in any order.
Image render_frame(const std::vector<nucleation::BubbleEvent>& events,
                   std::uint64_t frame_index, const FrameSpec& spec,
                   const nucleation::SimConfig& sim, std::uint64_t seed);

// Binary PPM (P6, maxval 255). Throws Error{IoFailure} on write problems.
void write_ppm(const Image& image, const std::filesystem::path& path);

// Writes total_duration * fps frames named frame_000001.ppm onward, frame k
// rendered at t = (k - 1) / fps. Returns the number of frames written.
int write_frame_sequence(const std::vector<nucleation::BubbleEvent>& events,
                         const FrameSpec& spec,
                         const nucleation::SimConfig& sim, std::uint64_t seed,
                         const std::filesystem::path& out_dir);

} // namespace ewb::frames

#endif
