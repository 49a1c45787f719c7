#pragma once

// Persistence: Curve/Soup JSON(L) round trips, CSV emission, PGM export,
// content hashing for run manifests.

#include <cstdint>
#include <string>
#include <vector>

#include "soupfall/soup.hpp"

namespace soupfall {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& line);

std::string spec_to_json(const SoupSpec& spec);
SoupSpec spec_from_json(const std::string& text);

// JSON Lines: header {"spec":..., "seed":...} then one curve per line.
void save_soup(const Soup& soup, const std::string& path);
Soup load_soup(const std::string& path);  // throws parse_error naming the line

// CSV with header row, UTF-8, LF line endings.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

// FNV-1a 64-bit content hash, hex-encoded.
std::string content_hash_hex(const std::string& bytes);
std::string file_hash_hex(const std::string& path);

bool structurally_equal(const Curve& a, const Curve& b);
bool structurally_equal(const Soup& a, const Soup& b);

}  // namespace soupfall
