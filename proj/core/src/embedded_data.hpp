#pragma once

#include <string_view>

namespace sentpair::detail {

// Contents of core/data/abbreviations.txt and core/data/stopwords_en.txt.
std::string_view abbreviations_data();
std::string_view stopwords_data();

}  // namespace sentpair::detail
