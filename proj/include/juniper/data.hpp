#pragma once

#include <string_view>

namespace juniper::data {

// Copies of the files under data/, compiled in.
std::string_view certificate_corpus();
std::string_view two_prime_scripts();
std::string_view published_results();

}  // namespace juniper::data
