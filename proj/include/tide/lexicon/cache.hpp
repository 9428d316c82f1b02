#pragma once

#include <optional>
#include <string>

#include "tide/lexicon/lexicon.hpp"

namespace tide::lexicon {

// Binary index cache: a self-describing header (magic, format version,
// checksum of the source CSV) followed by the parsed entries and senses.
// A cache whose checksum does not match the current source is ignored.
void save_cache(const Lexicon& lex, const std::string& path);
std::optional<Lexicon> load_cache(const std::string& path,
                                  uint64_t expected_source_checksum);

// Loads `csv_path`, consulting `csv_path + ".cache"`: a fresh cache is
// used as-is, a stale or missing one is rebuilt after the CSV parse.
Lexicon load_lexicon_cached(const std::string& csv_path);

}  // namespace tide::lexicon
