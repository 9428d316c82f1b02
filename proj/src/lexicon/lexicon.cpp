#include "tide/lexicon/lexicon.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "tide/common/csv.hpp"
#include "tide/common/error.hpp"
#include "tide/common/text.hpp"

namespace tide::lexicon {

const char* to_string(IdentityGroup g) {
  switch (g) {
    case IdentityGroup::kRne:
      return "rne";
    case IdentityGroup::kSogiesc:
      return "sogiesc";
    case IdentityGroup::kReligion:
      return "religion";
  }
  return "unknown";
}

const char* to_string(EntryKind k) {
  switch (k) {
    case EntryKind::kHead:
      return "head";
    case EntryKind::kPersonNounCompound:
      return "person_noun_compound";
    case EntryKind::kRelatedForm:
      return "related_form";
  }
  return "unknown";
}

std::optional<IdentityGroup> parse_identity_group(std::string_view s) {
  std::string v = text::to_lower(text::trim(s));
  if (v == "rne") return IdentityGroup::kRne;
  if (v == "sogiesc") return IdentityGroup::kSogiesc;
  if (v == "religion") return IdentityGroup::kReligion;
  return std::nullopt;
}

std::optional<EntryKind> parse_entry_kind(std::string_view s) {
  std::string v = text::to_lower(text::trim(s));
  if (v == "head") return EntryKind::kHead;
  if (v == "person_noun_compound" || v == "person noun compound")
    return EntryKind::kPersonNounCompound;
  if (v == "related_form" || v == "related form") return EntryKind::kRelatedForm;
  return std::nullopt;
}

std::string normalize_term(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == '-' || c == '/' || c == '\\') {
      out.push_back(' ');
    } else if (text::is_ascii_digit(c) || text::is_ascii_punct(c)) {
      // dropped
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      out.push_back(c);
    }
  }
  return text::collapse_whitespace(out);
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<const LexicalEntry*> Lexicon::lookup_surface(
    std::string_view surface) const {
  std::vector<const LexicalEntry*> out;
  auto it = surface_index_.find(std::string(surface));
  if (it == surface_index_.end()) return out;
  out.reserve(it->second.size());
  for (uint32_t idx : it->second) out.push_back(&entries_[idx]);
  return out;
}

std::vector<const LexicalEntry*> Lexicon::lookup_lemma(
    std::string_view lemma) const {
  std::vector<const LexicalEntry*> out;
  auto it = lemma_index_.find(std::string(lemma));
  if (it == lemma_index_.end()) return out;
  out.reserve(it->second.size());
  for (uint32_t idx : it->second) out.push_back(&entries_[idx]);
  return out;
}

std::vector<const SenseContext*> Lexicon::senses_of(
    const LexicalEntry& e) const {
  std::vector<const SenseContext*> out;
  out.reserve(e.sense_ids.size());
  for (uint32_t id : e.sense_ids) out.push_back(&senses_[id]);
  return out;
}

bool Lexicon::has_surface(std::string_view surface) const {
  return surface_index_.find(std::string(surface)) != surface_index_.end();
}

std::size_t LexiconBuilder::KeyHash::operator()(const Key& k) const {
  std::size_t h = std::hash<std::string>{}(k.surface);
  h ^= std::hash<std::string>{}(k.head_surface) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  h ^= (static_cast<std::size_t>(k.kind) << 1) ^
       static_cast<std::size_t>(k.is_head);
  return h;
}

bool LexiconBuilder::add(const Row& row) {
  std::string surface = normalize_term(row.term);
  if (surface.empty()) {
    ++dropped_;
    return false;
  }
  std::string head_surface =
      row.is_head ? std::string() : normalize_term(row.head_term);

  Key key{surface, head_surface, row.kind, row.is_head};
  uint32_t entry_idx;
  auto it = entry_of_.find(key);
  if (it != entry_of_.end()) {
    entry_idx = it->second;
  } else {
    entry_idx = static_cast<uint32_t>(entries_.size());
    LexicalEntry e;
    e.surface = surface;
    e.is_head = row.is_head;
    e.kind = row.kind;
    e.pos = row.pos;
    e.extra = row.extra;
    entries_.push_back(std::move(e));
    entry_head_surface_.push_back(head_surface);
    entry_of_.emplace(std::move(key), entry_idx);
  }

  auto sense_key = std::make_tuple(entry_idx, row.group, row.subgroup);
  auto sit = sense_of_.find(sense_key);
  if (sit != sense_of_.end()) {
    SenseContext& s = senses_[sit->second];
    s.connotations.merge(row.connotations);
    s.has_non_identity_sense =
        s.has_non_identity_sense || row.has_non_identity;
    if (s.provenance.empty()) s.provenance = row.provenance;
  } else {
    uint32_t sense_idx = static_cast<uint32_t>(senses_.size());
    SenseContext s;
    s.entry_ref = entry_idx;
    s.group = row.group;
    s.subgroup = row.subgroup;
    s.connotations = row.connotations;
    s.has_non_identity_sense = row.has_non_identity;
    s.provenance = row.provenance;
    senses_.push_back(std::move(s));
    sense_of_.emplace(sense_key, sense_idx);
    entries_[entry_idx].sense_ids.push_back(sense_idx);
  }
  return true;
}

Lexicon LexiconBuilder::finish(uint64_t source_checksum,
                               const std::string& version) {
  Lexicon lex;

  // Heads first, so related forms can resolve against any head sharing
  // the surface.
  std::unordered_map<std::string, uint32_t> head_by_surface;
  for (uint32_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].is_head) head_by_surface.emplace(entries_[i].surface, i);
  }

  for (uint32_t i = 0; i < entries_.size(); ++i) {
    LexicalEntry& e = entries_[i];
    char buf[16];
    std::snprintf(buf, sizeof(buf), "e%06u", i);
    e.id = buf;
    if (e.is_head) {
      e.lemma = e.surface;
    } else {
      const std::string& head_surface = entry_head_surface_[i];
      auto hit = head_by_surface.find(head_surface);
      if (hit == head_by_surface.end()) {
        throw IntegrityError("lexicon: entry '" + e.surface +
                             "' references unknown head '" + head_surface +
                             "'");
      }
      e.head_ref = hit->second;
      e.lemma = head_surface;
    }
  }

  lex.entries_ = std::move(entries_);
  lex.senses_ = std::move(senses_);
  lex.version_ = version;
  lex.source_checksum_ = source_checksum;
  lex.dropped_rows_ = dropped_;

  std::size_t max_words = 1;
  for (uint32_t i = 0; i < lex.entries_.size(); ++i) {
    const LexicalEntry& e = lex.entries_[i];
    lex.surface_index_[e.surface].push_back(i);
    if (e.is_head) lex.lemma_index_[e.lemma].push_back(i);
    std::size_t words =
        1 + static_cast<std::size_t>(
                std::count(e.surface.begin(), e.surface.end(), ' '));
    max_words = std::max(max_words, words);
  }
  lex.max_surface_words_ = max_words;
  return lex;
}

namespace {

bool parse_flag(const std::string& raw, std::size_t line,
                const std::string& column) {
  std::string v = text::to_lower(text::trim(raw));
  if (v == "1" || v == "true" || v == "yes" || v == "y") return true;
  if (v == "0" || v == "false" || v == "no" || v == "n" || v.empty())
    return false;
  throw FormatError("lexicon: line " + std::to_string(line) + " column '" +
                    column + "': unreadable flag value '" + raw + "'");
}

ConnotationSet parse_connotation(const std::string& raw, std::size_t line) {
  std::string v = text::to_lower(text::trim(raw));
  ConnotationSet set;
  if (v == "neutral") {
    set.neutral = true;
  } else if (v == "pejorative") {
    set.pejorative = true;
  } else if (v == "both") {
    set.neutral = true;
    set.pejorative = true;
  } else {
    throw IntegrityError("lexicon: line " + std::to_string(line) +
                         ": unknown connotation '" + raw + "'");
  }
  return set;
}

}  // namespace

Lexicon load_lexicon(std::istream& in, uint64_t source_checksum) {
  LexiconBuilder builder;

  std::vector<std::string> header;
  std::unordered_map<std::string, std::size_t> col;
  bool have_header = false;

  static const char* kRequired[] = {"term",     "head_term",        "is_head",
                                    "identity_group", "subgroup",
                                    "connotation",    "has_non_identity",
                                    "entry_kind"};

  csv::read(in, [&](const std::vector<std::string>& fields,
                    std::size_t line) {
    if (!have_header) {
      header = fields;
      for (std::size_t i = 0; i < header.size(); ++i) {
        col[text::to_lower(text::trim(header[i]))] = i;
      }
      std::string missing;
      for (const char* name : kRequired) {
        if (!col.count(name)) {
          if (!missing.empty()) missing += ", ";
          missing += name;
        }
      }
      if (!missing.empty())
        throw FormatError("lexicon: header is missing required column(s): " +
                          missing);
      have_header = true;
      return;
    }
    if (fields.size() > header.size())
      throw FormatError("lexicon: line " + std::to_string(line) + " has " +
                        std::to_string(fields.size()) +
                        " fields, header has " +
                        std::to_string(header.size()));
    auto get = [&](const char* name) -> std::string {
      auto it = col.find(name);
      if (it == col.end() || it->second >= fields.size()) return "";
      return fields[it->second];
    };

    LexiconBuilder::Row row;
    row.term = get("term");
    row.head_term = get("head_term");
    row.is_head = parse_flag(get("is_head"), line, "is_head");
    auto group = parse_identity_group(get("identity_group"));
    if (!group)
      throw IntegrityError("lexicon: line " + std::to_string(line) +
                           ": unknown identity_group '" +
                           get("identity_group") + "'");
    row.group = *group;
    row.subgroup = text::to_lower(text::trim(get("subgroup")));
    row.connotations = parse_connotation(get("connotation"), line);
    row.has_non_identity =
        parse_flag(get("has_non_identity"), line, "has_non_identity");
    auto kind = parse_entry_kind(get("entry_kind"));
    if (!kind)
      throw IntegrityError("lexicon: line " + std::to_string(line) +
                           ": unknown entry_kind '" + get("entry_kind") +
                           "'");
    row.kind = *kind;
    if (row.is_head != (row.kind == EntryKind::kHead))
      throw IntegrityError("lexicon: line " + std::to_string(line) +
                           ": is_head flag disagrees with entry_kind");
    row.pos = text::trim(get("pos"));
    row.provenance = text::trim(get("provenance"));

    // Preserve unrecognized columns.
    static const std::vector<std::string> kKnown = {
        "term",       "head_term",        "is_head",    "identity_group",
        "subgroup",   "connotation",      "has_non_identity",
        "entry_kind", "pos",              "provenance"};
    for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) {
      std::string name = text::to_lower(text::trim(header[i]));
      if (std::find(kKnown.begin(), kKnown.end(), name) == kKnown.end())
        row.extra.emplace_back(name, fields[i]);
    }
    builder.add(row);
  });

  if (!have_header) throw FormatError("lexicon: empty file (no header row)");
  return builder.finish(source_checksum, "tidal-csv-1");
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("lexicon: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  std::istringstream stream(bytes);
  return load_lexicon(stream, fnv1a64(bytes));
}

}  // namespace tide::lexicon
