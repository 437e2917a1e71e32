#include "rampforge/hash.hpp"

#include "rampforge/error.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>

namespace rampforge {

namespace {

std::string to_hex(const unsigned char* bytes, unsigned int len)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kDigits[bytes[i] >> 4];
        out += kDigits[bytes[i] & 0xF];
    }
    return out;
}

} // namespace

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    return to_hex(md.data(), len);
}

std::string hmac_sha256_hex(std::string_view key, std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
             reinterpret_cast<const unsigned char*>(data.data()), data.size(), md.data(), &len) == nullptr)
        throw Error("hmac-sha256 failed");
    return to_hex(md.data(), len);
}

} // namespace rampforge
