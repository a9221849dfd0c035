#include "peel/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

namespace peel {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

ImageBuf load_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open for reading: " + path);

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw FormatError("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failed");
    }

    std::vector<png_bytep> row_ptrs;
    std::vector<unsigned char> raw;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("PNG decode failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);

    if (depth != 8 || (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("unsupported PNG (need 8-bit gray or RGB): " + path);
    }
    const int ch = (color == PNG_COLOR_TYPE_GRAY) ? 1 : 3;

    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    raw.resize(static_cast<std::size_t>(w) * h * ch);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        row_ptrs[y] = raw.data() + static_cast<std::size_t>(y) * w * ch;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageBuf img(static_cast<int>(w), static_cast<int>(h), ch);
    for (std::size_t i = 0; i < raw.size(); ++i)
        img.data[i] = raw[i] / 255.0;
    return img;
}

void save_image(const ImageBuf& img, const std::string& path) {
    if (img.width < 1 || img.height < 1 || (img.channels != 1 && img.channels != 3))
        throw std::invalid_argument("save_image: invalid image");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng init failed");
    }

    std::vector<unsigned char> raw(img.value_count());
    std::vector<png_bytep> row_ptrs(img.height);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width, img.height, 8,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = static_cast<unsigned char>(to_byte(img.data[i]));
    const std::size_t stride = static_cast<std::size_t>(img.width) * img.channels;
    for (int y = 0; y < img.height; ++y)
        row_ptrs[y] = raw.data() + y * stride;

    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::pair<ImageBuf, PadInfo> pad_zero(const ImageBuf& img, int k) {
    if (k < 1) throw std::invalid_argument("pad_zero: k must be >= 1");
    const int new_w = ((img.width + k - 1) / k) * k;
    const int new_h = ((img.height + k - 1) / k) * k;

    PadInfo pad{img.width, img.height, new_w - img.width, new_h - img.height};
    ImageBuf out(new_w, new_h, img.channels, 0.0);
    const std::size_t row_bytes = static_cast<std::size_t>(img.width) * img.channels;
    for (int y = 0; y < img.height; ++y)
        std::copy_n(img.data.begin() + static_cast<std::size_t>(y) * row_bytes, row_bytes,
                    out.data.begin() + (static_cast<std::size_t>(y) * new_w) * img.channels);
    return {std::move(out), pad};
}

ImageBuf crop(const ImageBuf& img, const PadInfo& pad) {
    if (img.width != pad.original_width + pad.pad_right ||
        img.height != pad.original_height + pad.pad_bottom ||
        pad.pad_right < 0 || pad.pad_bottom < 0 ||
        pad.original_width < 1 || pad.original_height < 1)
        throw std::invalid_argument("crop: PadInfo inconsistent with image dimensions");

    ImageBuf out(pad.original_width, pad.original_height, img.channels);
    const std::size_t row_bytes = static_cast<std::size_t>(out.width) * img.channels;
    for (int y = 0; y < out.height; ++y)
        std::copy_n(img.data.begin() + (static_cast<std::size_t>(y) * img.width) * img.channels,
                    row_bytes, out.data.begin() + static_cast<std::size_t>(y) * row_bytes);
    return out;
}

ImageBuf add_gaussian_noise(const ImageBuf& img, double delta, std::uint64_t seed) {
    if (delta < 0) throw std::invalid_argument("add_gaussian_noise: delta must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    ImageBuf out = img;
    for (double& v : out.data) {
        v += delta * normal(rng);
        v = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

std::vector<double> gaussian_kernel(int ksize, double sigma) {
    if (ksize < 1 || ksize % 2 == 0)
        throw std::invalid_argument("gaussian_kernel: ksize must be odd and positive");
    if (sigma <= 0) throw std::invalid_argument("gaussian_kernel: sigma must be positive");

    const int r = ksize / 2;
    std::vector<double> k(ksize);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += k[i + r];
    }
    for (double& v : k) v /= sum;
    return k;
}

namespace {

// Horizontal then vertical 1-D pass with clamped (edge replicated) indices.
ImageBuf separable_pass(const ImageBuf& img, const std::vector<double>& k, bool horizontal) {
    const int r = static_cast<int>(k.size()) / 2;
    ImageBuf out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int i = -r; i <= r; ++i) {
                    int yy = y, xx = x;
                    if (horizontal)
                        xx = std::clamp(x + i, 0, img.width - 1);
                    else
                        yy = std::clamp(y + i, 0, img.height - 1);
                    acc += k[i + r] * img.at(yy, xx, c);
                }
                out.at(y, x, c) = acc;
            }
        }
    }
    return out;
}

} // namespace

ImageBuf gaussian_blur(const ImageBuf& img, int ksize, double sigma) {
    const std::vector<double> k = gaussian_kernel(ksize, sigma);
    ImageBuf out = separable_pass(separable_pass(img, k, true), k, false);
    for (double& v : out.data) v = std::clamp(v, 0.0, 1.0);
    return out;
}

ImageBuf median_blur(const ImageBuf& img, int ksize) {
    if (ksize < 1 || ksize % 2 == 0)
        throw std::invalid_argument("median_blur: ksize must be odd and positive");

    const int r = ksize / 2;
    ImageBuf out(img.width, img.height, img.channels);
    std::vector<double> window;
    window.reserve(static_cast<std::size_t>(ksize) * ksize);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                window.clear();
                for (int dy = -r; dy <= r; ++dy)
                    for (int dx = -r; dx <= r; ++dx)
                        window.push_back(img.at(std::clamp(y + dy, 0, img.height - 1),
                                                std::clamp(x + dx, 0, img.width - 1), c));
                auto mid = window.begin() + window.size() / 2;
                std::nth_element(window.begin(), mid, window.end());
                out.at(y, x, c) = *mid;
            }
        }
    }
    return out;
}

} // namespace peel
