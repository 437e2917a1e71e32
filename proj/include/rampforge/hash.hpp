#pragma once

#include <string>
#include <string_view>

namespace rampforge {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Lowercase hex HMAC-SHA-256.
std::string hmac_sha256_hex(std::string_view key, std::string_view data);

} // namespace rampforge
