#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsf/graph.hpp"

namespace rsf {

// 8-bit grayscale image, row-major. Supports PGM P2 (ASCII) and P5 (binary)
// with maxval <= 255.
struct PgmImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    int maxval = 255;
    std::vector<std::uint8_t> pixels;

    Signal to_signal() const;
    static PgmImage from_signal(const Signal& s, std::size_t rows, std::size_t cols,
                                int maxval = 255);
};

PgmImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const PgmImage& img, bool binary = true);

} // namespace rsf
