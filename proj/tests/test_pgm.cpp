#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "rsf/errors.hpp"
#include "rsf/pgm.hpp"
#include "rsf/rng.hpp"
#include "rsf/synthetic.hpp"

using namespace rsf;

namespace {

std::string temp_path(const std::string& name) {
    return "/tmp/rsf_pgm_test_" + name;
}

void write_raw(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

PgmImage random_image(std::size_t rows, std::size_t cols, RngStream rng) {
    PgmImage img;
    img.rows = rows;
    img.cols = cols;
    img.maxval = 255;
    img.pixels.resize(rows * cols);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.uniform_below(256));
    return img;
}

} // namespace

TEST_SUITE_BEGIN("pgm");

TEST_CASE("binary and ascii round-trips preserve pixels") {
    RngStream rng(17, 0);
    for (int t = 0; t < 4; ++t) {
        auto img = random_image(5 + t, 9 - t, rng.derive(t));
        for (bool binary : {true, false}) {
            const auto path = temp_path("roundtrip.pgm");
            write_pgm(path, img, binary);
            auto back = read_pgm(path);
            CHECK(back.rows == img.rows);
            CHECK(back.cols == img.cols);
            CHECK(back.maxval == img.maxval);
            CHECK(back.pixels == img.pixels);
            std::remove(path.c_str());
        }
    }
}

TEST_CASE("header comments are skipped") {
    const auto path = temp_path("comments.pgm");
    write_raw(path, "P2\n# a comment\n2 2\n# another\n255\n0 128\n255 7\n");
    auto img = read_pgm(path);
    CHECK(img.cols == 2);
    CHECK(img.rows == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 128, 255, 7});
    std::remove(path.c_str());
}

TEST_CASE("malformed files are rejected with a reason") {
    const auto path = temp_path("bad.pgm");
    auto expect_reject = [&](const std::string& content) {
        write_raw(path, content);
        CHECK_THROWS_AS(read_pgm(path), InputError);
    };
    expect_reject("P6\n2 2\n255\n");                 // wrong magic
    expect_reject("P2\n2 2\n65535\n0 0 0 0\n");      // maxval too large
    expect_reject("P2\n2 2\n255\n0 0 0\n");          // truncated pixels
    expect_reject("P2\n2 2\n255\n0 0 0 999\n");      // out of range pixel
    expect_reject("P5\n4 4\n255\nabc");              // truncated binary data
    expect_reject("P2\n0 2\n255\n");                 // zero dimension
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_pgm("/nonexistent/nope.pgm"), InputError);
}

TEST_CASE("signal conversion clamps and rounds") {
    Signal s{-5.0, 0.4, 254.6, 300.0};
    auto img = PgmImage::from_signal(s, 2, 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 0, 255, 255});
    auto back = img.to_signal();
    CHECK(back == Signal{0.0, 0.0, 255.0, 255.0});

    CHECK_THROWS_AS(PgmImage::from_signal(s, 3, 2), std::invalid_argument);
}

TEST_CASE("built-in test image survives a file round-trip") {
    auto clean = make_test_image(32, 32);
    auto img = PgmImage::from_signal(clean, 32, 32);
    const auto path = temp_path("scene.pgm");
    write_pgm(path, img, true);
    auto back = read_pgm(path);
    CHECK(back.to_signal() == clean); // the scene is already integer-valued
    std::remove(path.c_str());
}

TEST_SUITE_END();
