#include "motrng/trace_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace motrng {

void write_series_csv(const std::string& path, const std::string& header,
                      double dt, const std::vector<double>& samples) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("csv: cannot open " + path);
    std::fprintf(f, "%s\n", header.c_str());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = static_cast<double>(i + 1) * dt;
        std::fprintf(f, "%.17g,%.17g\n", t, samples[i]);
    }
    if (std::fclose(f) != 0) throw std::runtime_error("csv: write failed: " + path);
}

SeriesCsv read_series_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("csv: cannot open " + path);
    SeriesCsv out;
    std::string line;
    if (!std::getline(f, line)) throw std::invalid_argument("csv: empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.header = line;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("csv: missing comma on line " + std::to_string(lineno) +
                                         " of " + path);
        try {
            out.t.push_back(std::stod(line.substr(0, comma)));
            out.values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("csv: bad number on line " + std::to_string(lineno) +
                                         " of " + path);
        }
    }
    if (out.t.size() >= 2) out.dt = out.t[1] - out.t[0];
    return out;
}

std::string sha256_bytes(const void* data, std::size_t len) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    if (!EVP_Digest(data, len, digest, &digest_len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * digest_len);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("sha256: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string bytes = ss.str();
    return sha256_bytes(bytes.data(), bytes.size());
}

} // namespace motrng
