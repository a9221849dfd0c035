#ifndef PEEL_IMAGE_HPP
#define PEEL_IMAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace peel {

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File exists but its format is not supported (wrong signature, bit depth,
/// or color type).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * @brief Normalized raster image, the universal pixel carrier.
 *
 * Values are doubles in [0,1], stored row-major and channel-interleaved:
 * value(y, x, c) = data[(y * width + x) * channels + c].
 * Channels is 1 (grayscale) or 3 (RGB).
 */
struct ImageBuf {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;

    ImageBuf() = default;

    ImageBuf(int w, int h, int ch, double fill = 0.0)
        : width(w), height(h), channels(ch),
          data(static_cast<std::size_t>(w) * h * ch, fill) {
        if (w < 1 || h < 1 || (ch != 1 && ch != 3))
            throw std::invalid_argument("ImageBuf: bad dimensions or channel count");
    }

    double& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    std::size_t value_count() const { return data.size(); }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
    bool same_shape(const ImageBuf& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

/// Right/bottom zero-padding bookkeeping; crop() undoes pad_zero().
struct PadInfo {
    int original_width = 0;
    int original_height = 0;
    int pad_right = 0;
    int pad_bottom = 0;
};

/// Binary raster over pixel positions (one flag per pixel, no channel axis).
/// Used as removal mask (0 = removed, 1 = kept) and as edge map (1 = edge).
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Mask() = default;
    Mask(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int y, int x) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int y, int x) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

/// Reads an 8-bit grayscale or RGB PNG, mapping bytes to [0,1] via v/255.
/// Throws IoError on unreadable files, FormatError on anything that is not
/// an 8-bit gray/RGB PNG.
ImageBuf load_image(const std::string& path);

/// Writes an 8-bit PNG with byte = round(v * 255). Throws IoError when the
/// path cannot be written.
void save_image(const ImageBuf& img, const std::string& path);

/// Quantizes a value in [0,1] to its 8-bit byte.
inline int to_byte(double v) {
    int b = static_cast<int>(v * 255.0 + 0.5);
    return b < 0 ? 0 : (b > 255 ? 255 : b);
}

/// Pads with zeros on the right/bottom so both dimensions become multiples
/// of k. Already-divisible images come back unchanged (pads 0).
std::pair<ImageBuf, PadInfo> pad_zero(const ImageBuf& img, int k);

/// Removes padding: returns the original_width x original_height top-left
/// sub-image. Exact inverse of pad_zero.
ImageBuf crop(const ImageBuf& img, const PadInfo& pad);

/// out = clip(img + delta * n, 0, 1) with n i.i.d. standard normal from the
/// seeded generator. Fully determined by (img, delta, seed).
ImageBuf add_gaussian_noise(const ImageBuf& img, double delta, std::uint64_t seed);

/// 1-D Gaussian kernel sampled at integer offsets and normalized to sum 1.
std::vector<double> gaussian_kernel(int ksize, double sigma);

/// Separable Gaussian convolution per channel, edge-replicated borders.
/// ksize must be odd.
ImageBuf gaussian_blur(const ImageBuf& img, int ksize, double sigma);

/// Per channel, each output pixel is the median of its ksize x ksize
/// neighborhood (edge-replicated borders). ksize must be odd.
ImageBuf median_blur(const ImageBuf& img, int ksize);

} // namespace peel

#endif // PEEL_IMAGE_HPP
