#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tide::lexicon {

enum class IdentityGroup { kRne, kSogiesc, kReligion };

enum class EntryKind { kHead, kPersonNounCompound, kRelatedForm };

const char* to_string(IdentityGroup g);
const char* to_string(EntryKind k);
std::optional<IdentityGroup> parse_identity_group(std::string_view s);
std::optional<EntryKind> parse_entry_kind(std::string_view s);

struct ConnotationSet {
  bool neutral = false;
  bool pejorative = false;

  bool both() const { return neutral && pejorative; }
  bool empty() const { return !neutral && !pejorative; }
  void merge(const ConnotationSet& o) {
    neutral = neutral || o.neutral;
    pejorative = pejorative || o.pejorative;
  }
  bool operator==(const ConnotationSet&) const = default;
};

struct SenseContext {
  uint32_t entry_ref = 0;
  IdentityGroup group = IdentityGroup::kRne;
  std::string subgroup;
  ConnotationSet connotations;
  bool has_non_identity_sense = false;
  std::string provenance;
};

struct LexicalEntry {
  std::string id;       // opaque, stable across loads of the same file
  std::string surface;  // normalized
  std::string lemma;    // head surface (own surface for heads)
  bool is_head = false;
  std::optional<uint32_t> head_ref;  // index of the head entry
  EntryKind kind = EntryKind::kHead;
  std::string pos;  // optional part-of-speech tag
  std::vector<uint32_t> sense_ids;
  // Unknown columns survive load untouched, keyed by header name.
  std::vector<std::pair<std::string, std::string>> extra;
};

// Normalizes a raw term: lowercase, digits and punctuation stripped,
// hyphens and slashes become spaces, whitespace runs collapsed, trimmed.
// Idempotent; may return an empty string.
std::string normalize_term(std::string_view raw);

// Immutable after load; concurrent reads are safe.
class Lexicon {
 public:
  const std::vector<LexicalEntry>& entries() const { return entries_; }
  const std::vector<SenseContext>& senses() const { return senses_; }
  const std::string& version() const { return version_; }
  uint64_t source_checksum() const { return source_checksum_; }

  // All entries whose normalized surface equals `surface`.
  std::vector<const LexicalEntry*> lookup_surface(
      std::string_view surface) const;
  // Head entries whose lemma equals `lemma`.
  std::vector<const LexicalEntry*> lookup_lemma(std::string_view lemma) const;

  const SenseContext& sense(uint32_t id) const { return senses_[id]; }
  std::vector<const SenseContext*> senses_of(const LexicalEntry& e) const;

  bool has_surface(std::string_view surface) const;
  // Longest surface, counted in space-separated words; 1 for an empty
  // lexicon. Token matchers bound their window with this.
  std::size_t max_surface_words() const { return max_surface_words_; }

  std::size_t dropped_rows() const { return dropped_rows_; }

 private:
  friend class LexiconBuilder;
  friend struct CacheIO;
  std::vector<LexicalEntry> entries_;
  std::vector<SenseContext> senses_;
  std::unordered_map<std::string, std::vector<uint32_t>> surface_index_;
  std::unordered_map<std::string, std::vector<uint32_t>> lemma_index_;
  std::string version_ = "tidal-csv-1";
  uint64_t source_checksum_ = 0;
  std::size_t max_surface_words_ = 1;
  std::size_t dropped_rows_ = 0;
};

// Assembles a Lexicon row by row, then validates references and freezes
// the indices. Used by the CSV loader and the cache reader.
class LexiconBuilder {
 public:
  struct Row {
    std::string term;       // raw; normalized by add()
    std::string head_term;  // empty for heads
    bool is_head = false;
    IdentityGroup group = IdentityGroup::kRne;
    std::string subgroup;
    ConnotationSet connotations;
    bool has_non_identity = false;
    std::string provenance;
    EntryKind kind = EntryKind::kHead;
    std::string pos;
    std::vector<std::pair<std::string, std::string>> extra;
  };

  // Returns false when the row was dropped (term normalizes to empty).
  bool add(const Row& row);
  // Resolves head references, assigns ids and builds both indices.
  // Throws IntegrityError on dangling head references.
  Lexicon finish(uint64_t source_checksum, const std::string& version);

 private:
  struct Key {
    std::string surface, head_surface;
    EntryKind kind;
    bool is_head;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  std::vector<LexicalEntry> entries_;
  std::vector<std::string> entry_head_surface_;  // parallel to entries_
  std::vector<SenseContext> senses_;
  std::unordered_map<Key, uint32_t, KeyHash> entry_of_;
  std::map<std::tuple<uint32_t, IdentityGroup, std::string>, uint32_t>
      sense_of_;
  std::size_t dropped_ = 0;
};

// Loads the flattened tabular lexicon format: UTF-8 CSV with a header row
// naming at least term, head_term, is_head, identity_group, subgroup,
// connotation, has_non_identity and entry_kind. Optional columns pos and
// provenance are recognized; anything else is preserved verbatim.
Lexicon load_lexicon(const std::string& path);
Lexicon load_lexicon(std::istream& in, uint64_t source_checksum);

uint64_t fnv1a64(std::string_view bytes);

}  // namespace tide::lexicon
