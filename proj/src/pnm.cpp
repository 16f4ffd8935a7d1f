#include "motrng/pnm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace motrng {

namespace {

// next whitespace-separated token, skipping '#' comment lines
std::string next_token(std::istream& in) {
    std::string tok;
    for (;;) {
        const int c = in.peek();
        if (c == EOF) throw std::invalid_argument("pnm: unexpected end of header");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    in >> tok;
    return tok;
}

} // namespace

Image read_pnm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("pnm: cannot open " + path);
    const std::string magic = next_token(f);
    bool ascii;
    std::size_t channels;
    if (magic == "P2") { ascii = true; channels = 1; }
    else if (magic == "P3") { ascii = true; channels = 3; }
    else if (magic == "P5") { ascii = false; channels = 1; }
    else if (magic == "P6") { ascii = false; channels = 3; }
    else throw std::invalid_argument("pnm: unsupported magic '" + magic + "' in " + path);

    Image img;
    img.channels = channels;
    img.width = std::stoull(next_token(f));
    img.height = std::stoull(next_token(f));
    const unsigned long maxval = std::stoul(next_token(f));
    if (maxval == 0 || maxval > 255)
        throw std::invalid_argument("pnm: only maxval in [1, 255] is supported");
    const std::size_t count = img.width * img.height * channels;
    img.pixels.resize(count);

    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned long v = std::stoul(next_token(f));
            if (v > maxval) throw std::invalid_argument("pnm: sample exceeds maxval");
            img.pixels[i] = static_cast<double>(v) / static_cast<double>(maxval);
        }
    } else {
        f.get(); // single whitespace after maxval
        std::vector<unsigned char> raw(count);
        f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(f.gcount()) != count)
            throw std::invalid_argument("pnm: truncated pixel data in " + path);
        for (std::size_t i = 0; i < count; ++i)
            img.pixels[i] = static_cast<double>(raw[i]) / static_cast<double>(maxval);
    }
    return img;
}

void write_pnm(const std::string& path, const Image& img, bool ascii) {
    if (img.channels != 1 && img.channels != 3)
        throw std::invalid_argument("pnm: channels must be 1 or 3");
    if (img.pixels.size() != img.width * img.height * img.channels)
        throw std::invalid_argument("pnm: pixel buffer size mismatch");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("pnm: cannot open " + path);

    const char* magic = img.channels == 1 ? (ascii ? "P2" : "P5") : (ascii ? "P3" : "P6");
    f << magic << "\n" << img.width << " " << img.height << "\n255\n";
    auto quantize = [](double v) {
        const double c = std::clamp(v, 0.0, 1.0);
        return static_cast<unsigned char>(std::lround(c * 255.0));
    };
    if (ascii) {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            f << static_cast<unsigned>(quantize(img.pixels[i]));
            f << (((i + 1) % 12 == 0) ? '\n' : ' ');
        }
        f << '\n';
    } else {
        std::vector<unsigned char> raw(img.pixels.size());
        for (std::size_t i = 0; i < img.pixels.size(); ++i) raw[i] = quantize(img.pixels[i]);
        f.write(reinterpret_cast<const char*>(raw.data()),
                static_cast<std::streamsize>(raw.size()));
    }
    if (!f) throw std::runtime_error("pnm: write failed: " + path);
}

} // namespace motrng
