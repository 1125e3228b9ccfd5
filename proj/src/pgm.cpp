#include "rsf/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "rsf/errors.hpp"

namespace rsf {

Signal PgmImage::to_signal() const {
    Signal s(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) s[i] = pixels[i];
    return s;
}

PgmImage PgmImage::from_signal(const Signal& s, std::size_t rows, std::size_t cols,
                               int maxval) {
    if (s.size() != rows * cols)
        throw std::invalid_argument("PgmImage: signal length does not match dimensions");
    PgmImage img;
    img.rows = rows;
    img.cols = cols;
    img.maxval = maxval;
    img.pixels.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = std::clamp(std::round(s[i]), 0.0, static_cast<double>(maxval));
        img.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return img;
}

namespace {

// Reads the next whitespace-delimited token, skipping '#' comment lines.
int next_header_int(std::istream& in, const std::string& path, const char* what) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF) throw InputError(path + ": truncated PGM header, expected " + what);
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string junk;
            std::getline(in, junk);
        } else {
            break;
        }
    }
    long v = 0;
    if (!(in >> v)) throw InputError(path + ": malformed PGM header, expected " + what);
    if (v < 0) throw InputError(path + ": negative value in PGM header");
    return static_cast<int>(v);
}

} // namespace

PgmImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open image file: " + path);

    std::string magic;
    in >> magic;
    if (magic != "P2" && magic != "P5")
        throw InputError(path + ": not a PGM file (magic '" + magic + "')");

    PgmImage img;
    img.cols = static_cast<std::size_t>(next_header_int(in, path, "width"));
    img.rows = static_cast<std::size_t>(next_header_int(in, path, "height"));
    img.maxval = next_header_int(in, path, "maxval");
    if (img.cols == 0 || img.rows == 0)
        throw InputError(path + ": zero image dimension");
    if (img.maxval <= 0 || img.maxval > 255)
        throw InputError(path + ": unsupported maxval " + std::to_string(img.maxval) +
                         " (must be 1..255)");

    const std::size_t count = img.rows * img.cols;
    img.pixels.resize(count);
    if (magic == "P5") {
        in.get(); // single whitespace after maxval
        in.read(reinterpret_cast<char*>(img.pixels.data()),
                static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw InputError(path + ": truncated P5 pixel data");
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long v = 0;
            if (!(in >> v)) throw InputError(path + ": truncated P2 pixel data");
            if (v < 0 || v > img.maxval)
                throw InputError(path + ": pixel value out of range");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

void write_pgm(const std::string& path, const PgmImage& img, bool binary) {
    if (img.pixels.size() != img.rows * img.cols)
        throw std::invalid_argument("write_pgm: pixel buffer does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << (binary ? "P5" : "P2") << '\n'
        << img.cols << ' ' << img.rows << '\n'
        << img.maxval << '\n';
    if (binary) {
        out.write(reinterpret_cast<const char*>(img.pixels.data()),
                  static_cast<std::streamsize>(img.pixels.size()));
    } else {
        for (std::size_t r = 0; r < img.rows; ++r) {
            for (std::size_t c = 0; c < img.cols; ++c) {
                out << static_cast<int>(img.pixels[r * img.cols + c]);
                out << (c + 1 == img.cols ? '\n' : ' ');
            }
        }
    }
    if (!out) throw InputError("failed writing image to: " + path);
}

} // namespace rsf
