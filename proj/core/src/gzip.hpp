#pragma once

#include <string>
#include <string_view>

namespace sentpair::detail {

// gzip member with a zero mtime, so equal input gives equal bytes.
std::string gzip_compress(std::string_view data);
// Throws sentpair::Error on corrupt or truncated input.
std::string gzip_decompress(std::string_view data);

}  // namespace sentpair::detail
