#include "tide/lexicon/cache.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tide/common/error.hpp"

namespace tide::lexicon {

namespace {

constexpr char kMagic[8] = {'T', 'I', 'D', 'E', 'C', 'A', 'C', 'H'};
constexpr uint32_t kFormatVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  put_u32(out, static_cast<uint32_t>(v));
  put_u32(out, static_cast<uint32_t>(v >> 32));
}

void put_str(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

bool get_u32(std::istream& in, uint32_t& v) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
  v = b[0] | (b[1] << 8) | (b[2] << 16) |
      (static_cast<uint32_t>(b[3]) << 24);
  return true;
}

bool get_u64(std::istream& in, uint64_t& v) {
  uint32_t lo, hi;
  if (!get_u32(in, lo) || !get_u32(in, hi)) return false;
  v = lo | (static_cast<uint64_t>(hi) << 32);
  return true;
}

bool get_str(std::istream& in, std::string& s) {
  uint32_t n;
  if (!get_u32(in, n)) return false;
  s.resize(n);
  return static_cast<bool>(in.read(s.data(), n));
}

}  // namespace

struct CacheIO {
  static void save(const Lexicon& lex, std::ostream& out) {
    out.write(kMagic, 8);
    put_u32(out, kFormatVersion);
    put_u64(out, lex.source_checksum_);
    put_str(out, lex.version_);
    put_u64(out, lex.dropped_rows_);

    put_u32(out, static_cast<uint32_t>(lex.entries_.size()));
    for (const LexicalEntry& e : lex.entries_) {
      put_str(out, e.id);
      put_str(out, e.surface);
      put_str(out, e.lemma);
      out.put(e.is_head ? 1 : 0);
      out.put(e.head_ref ? 1 : 0);
      put_u32(out, e.head_ref.value_or(0));
      out.put(static_cast<char>(e.kind));
      put_str(out, e.pos);
      put_u32(out, static_cast<uint32_t>(e.sense_ids.size()));
      for (uint32_t s : e.sense_ids) put_u32(out, s);
      put_u32(out, static_cast<uint32_t>(e.extra.size()));
      for (const auto& [k, v] : e.extra) {
        put_str(out, k);
        put_str(out, v);
      }
    }

    put_u32(out, static_cast<uint32_t>(lex.senses_.size()));
    for (const SenseContext& s : lex.senses_) {
      put_u32(out, s.entry_ref);
      out.put(static_cast<char>(s.group));
      put_str(out, s.subgroup);
      out.put(static_cast<char>((s.connotations.neutral ? 1 : 0) |
                                (s.connotations.pejorative ? 2 : 0)));
      out.put(s.has_non_identity_sense ? 1 : 0);
      put_str(out, s.provenance);
    }
  }

  static std::optional<Lexicon> load(std::istream& in,
                                     uint64_t expected_checksum) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
      return std::nullopt;
    uint32_t format;
    if (!get_u32(in, format) || format != kFormatVersion) return std::nullopt;
    uint64_t checksum;
    if (!get_u64(in, checksum) || checksum != expected_checksum)
      return std::nullopt;

    Lexicon lex;
    uint64_t dropped;
    if (!get_str(in, lex.version_) || !get_u64(in, dropped))
      return std::nullopt;
    lex.source_checksum_ = checksum;
    lex.dropped_rows_ = dropped;

    uint32_t n_entries;
    if (!get_u32(in, n_entries)) return std::nullopt;
    lex.entries_.resize(n_entries);
    for (LexicalEntry& e : lex.entries_) {
      char is_head, has_head, kind;
      uint32_t head_ref, n;
      if (!get_str(in, e.id) || !get_str(in, e.surface) ||
          !get_str(in, e.lemma) || !in.get(is_head) || !in.get(has_head) ||
          !get_u32(in, head_ref) || !in.get(kind) || !get_str(in, e.pos) ||
          !get_u32(in, n))
        return std::nullopt;
      e.is_head = is_head != 0;
      if (has_head) e.head_ref = head_ref;
      e.kind = static_cast<EntryKind>(kind);
      e.sense_ids.resize(n);
      for (uint32_t& s : e.sense_ids)
        if (!get_u32(in, s)) return std::nullopt;
      uint32_t n_extra;
      if (!get_u32(in, n_extra)) return std::nullopt;
      e.extra.resize(n_extra);
      for (auto& [k, v] : e.extra)
        if (!get_str(in, k) || !get_str(in, v)) return std::nullopt;
    }

    uint32_t n_senses;
    if (!get_u32(in, n_senses)) return std::nullopt;
    lex.senses_.resize(n_senses);
    for (SenseContext& s : lex.senses_) {
      char group, conn, non_id;
      if (!get_u32(in, s.entry_ref) || !in.get(group) ||
          !get_str(in, s.subgroup) || !in.get(conn) || !in.get(non_id) ||
          !get_str(in, s.provenance))
        return std::nullopt;
      s.group = static_cast<IdentityGroup>(group);
      s.connotations.neutral = (conn & 1) != 0;
      s.connotations.pejorative = (conn & 2) != 0;
      s.has_non_identity_sense = non_id != 0;
      if (s.entry_ref >= lex.entries_.size()) return std::nullopt;
    }

    std::size_t max_words = 1;
    for (uint32_t i = 0; i < lex.entries_.size(); ++i) {
      const LexicalEntry& e = lex.entries_[i];
      if (e.head_ref && *e.head_ref >= lex.entries_.size())
        return std::nullopt;
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
};

void save_cache(const Lexicon& lex, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("lexicon cache: cannot write '" + path + "'");
  CacheIO::save(lex, out);
}

std::optional<Lexicon> load_cache(const std::string& path,
                                  uint64_t expected_source_checksum) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return CacheIO::load(in, expected_source_checksum);
}

Lexicon load_lexicon_cached(const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw FormatError("lexicon: cannot open '" + csv_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  uint64_t checksum = fnv1a64(bytes);

  std::string cache_path = csv_path + ".cache";
  if (auto cached = load_cache(cache_path, checksum)) return *std::move(cached);

  std::istringstream stream(bytes);
  Lexicon lex = load_lexicon(stream, checksum);
  try {
    save_cache(lex, cache_path);
  } catch (const Error&) {
    // Read-only source directory; the parse result is still good.
  }
  return lex;
}

}  // namespace tide::lexicon
