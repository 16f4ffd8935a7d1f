#pragma once
#include <string>
#include <utility>
#include <vector>

namespace motrng {

/// Two-column CSV with a fixed header. Values are printed with 17
/// significant digits so a double round-trips exactly.
void write_series_csv(const std::string& path, const std::string& header,
                      double dt, const std::vector<double>& samples);

struct SeriesCsv {
    std::string header;
    double dt = 0.0; // inferred from the first two time stamps (0 if one row)
    std::vector<double> t;
    std::vector<double> values;
};

SeriesCsv read_series_csv(const std::string& path);

/// SHA-256 of a file's bytes, lowercase hex. Used for manifests and
/// bitstream sidecars.
std::string sha256_file(const std::string& path);
std::string sha256_bytes(const void* data, std::size_t len);

} // namespace motrng
