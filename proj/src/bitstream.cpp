#include "motrng/bitstream.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace motrng {

BitStream BitStream::from_bools(const std::vector<std::uint8_t>& bits) {
    BitStream out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.set_bit(i, 1);
    return out;
}

BitStream BitStream::from_string(const std::string& s) {
    BitStream out;
    for (char c : s) {
        if (c == '0') out.push_back(0);
        else if (c == '1') out.push_back(1);
        else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        else throw std::invalid_argument("bitstream: bad character in bit string");
    }
    return out;
}

std::size_t BitStream::count_ones() const {
    std::size_t n = 0;
    for (std::uint8_t b : bytes_) n += std::popcount(b);
    return n; // pad bits are zero by invariant
}

std::string BitStream::to_string() const {
    std::string s;
    s.reserve(n_bits_);
    for (std::size_t i = 0; i < n_bits_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

void write_bitstream(const std::string& path, const BitStream& bits,
                     const std::string& source_hash) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("bitstream: cannot open " + path);
    f.write(reinterpret_cast<const char*>(bits.bytes().data()),
            static_cast<std::streamsize>(bits.bytes().size()));
    if (!f) throw std::runtime_error("bitstream: write failed: " + path);

    std::ofstream m(path + ".meta");
    m << "n_bits=" << bits.size() << "\n"
      << "bit_order=msb_first\n"
      << "source_sha256=" << source_hash << "\n";
}

BitStream read_bitstream(const std::string& path) {
    std::ifstream m(path + ".meta");
    if (!m) throw std::invalid_argument("bitstream: missing sidecar " + path + ".meta");
    std::size_t n_bits = 0;
    bool have_n = false;
    std::string line;
    while (std::getline(m, line)) {
        if (line.rfind("n_bits=", 0) == 0) {
            n_bits = std::stoull(line.substr(7));
            have_n = true;
        }
    }
    if (!have_n) throw std::invalid_argument("bitstream: sidecar lacks n_bits: " + path);

    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("bitstream: cannot open " + path);
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
    if (raw.size() != (n_bits + 7) / 8)
        throw std::invalid_argument("bitstream: size does not match sidecar n_bits: " + path);
    BitStream out(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i)
        out.set_bit(i, (raw[i >> 3] >> (7 - (i & 7))) & 1);
    return out;
}

void write_bitstream_ascii(const std::string& path, const BitStream& bits) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("bitstream: cannot open " + path);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        f.put(bits.bit(i) ? '1' : '0');
        if ((i + 1) % 64 == 0) f.put('\n');
    }
    if (bits.size() % 64 != 0) f.put('\n');
}

BitStream read_bitstream_ascii(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("bitstream: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return BitStream::from_string(ss.str());
}

} // namespace motrng
