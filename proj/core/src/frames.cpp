#include "ewb/frames.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ewb::frames {

void FrameSpec::validate() const {
    if (width <= 0 || height <= 0) {
        throw Error(ErrorCode::ValidationError, "frame dimensions must be positive");
    }
    if (!(fps > 0)) {
        throw Error(ErrorCode::ValidationError, "fps must be > 0");
    }
}

Image render_frame(const std::vector<nucleation::BubbleEvent>& events,
                   std::uint64_t frame_index, const FrameSpec& spec,
                   const nucleation::SimConfig& sim, std::uint64_t seed) {
    spec.validate();
    const double t = static_cast<double>(frame_index) / spec.fps;

    struct LiveDisk {
        double x, y, r;
    };
    std::vector<LiveDisk> live;
    for (const auto& ev : events) {
        if (t < ev.t_form) continue;
        const double r = nucleation::radius_at(ev, t, sim);
        if (r > 0) live.push_back({ev.x, ev.y, r});
    }

    stochastic::RngStream noise(seed, stochastic::StreamId::frames, frame_index);

    Image img;
    img.width = spec.width;
    img.height = spec.height;
    img.rgb.resize(static_cast<std::size_t>(3) * spec.width * spec.height);

    const double sx = sim.domain_size / spec.width;
    const double sy = sim.domain_size / spec.height;
    std::size_t at = 0;
    for (int iy = 0; iy < spec.height; ++iy) {
        // Row 0 is the top of the domain.
        const double cy = sim.domain_size - (iy + 0.5) * sy;
        for (int ix = 0; ix < spec.width; ++ix) {
            const double cx = (ix + 0.5) * sx;
            // The static must consume one draw per pixel regardless of
            // coverage so the noise field is independent of the events.
            const auto gray = static_cast<std::uint8_t>(noise.next_u64() >> 56);
            bool broken = false;
            for (const auto& d : live) {
                const double dx = cx - d.x;
                const double dy = cy - d.y;
                if (dx * dx + dy * dy <= d.r * d.r) {
                    broken = true;
                    break;
                }
            }
            const std::uint8_t value = broken ? 255 : gray;
            img.rgb[at++] = value;
            img.rgb[at++] = value;
            img.rgb[at++] = value;
        }
    }
    return img;
}

void write_ppm(const Image& image, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    file << "P6\n" << image.width << " " << image.height << "\n255\n";
    file.write(reinterpret_cast<const char*>(image.rgb.data()),
               static_cast<std::streamsize>(image.rgb.size()));
    if (!file) {
        throw Error(ErrorCode::IoFailure, "short write to " + path.string());
    }
}

int write_frame_sequence(const std::vector<nucleation::BubbleEvent>& events,
                         const FrameSpec& spec,
                         const nucleation::SimConfig& sim, std::uint64_t seed,
                         const std::filesystem::path& out_dir) {
    spec.validate();
    std::filesystem::create_directories(out_dir);
    const int count =
        static_cast<int>(std::lround(sim.total_duration * spec.fps));
    for (int k = 1; k <= count; ++k) {
        const Image img = render_frame(events, static_cast<std::uint64_t>(k - 1),
                                       spec, sim, seed);
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%06d.ppm", k);
        write_ppm(img, out_dir / name);
    }
    return count;
}

} // namespace ewb::frames
