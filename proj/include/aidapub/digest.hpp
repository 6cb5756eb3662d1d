#pragma once

#include <string>
#include <string_view>

namespace aidapub {

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

/// 32 random hex characters from the OS entropy source.
std::string random_salt();

}  // namespace aidapub
