#include "tide/textpipe/conllu.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "tide/common/error.hpp"
#include "tide/common/text.hpp"

namespace tide::textpipe {

namespace {

struct PendingHead {
  std::size_t token_index;   // document-level index of the dependent
  std::size_t head_in_sent;  // 1-based head within the sentence
  std::size_t line;
};

bool plain_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id)
    if (!text::is_ascii_digit(c)) return false;  // skips "1-2" and "1.1"
  return true;
}

}  // namespace

Document ingest_conllu(std::string doc_id, std::string text,
                       std::istream& in) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::move(text);
  doc.annotation_source = AnnotationSource::kIngested;

  text::CharMap map(doc.text);
  std::size_t cursor = 0;  // byte offset

  std::vector<std::size_t> sentence_token_start;  // doc index of sent start
  std::vector<PendingHead> pending;
  std::size_t sentence_base = 0;
  bool sentence_open = false;

  auto close_sentence = [&](std::size_t sentence_len) {
    for (const PendingHead& p : pending) {
      if (p.head_in_sent == 0) continue;  // root
      if (p.head_in_sent > sentence_len)
        throw IntegrityError("conllu: line " + std::to_string(p.line) +
                             ": HEAD index " +
                             std::to_string(p.head_in_sent) +
                             " is outside its sentence");
      doc.tokens[p.token_index].dep_head = sentence_base + p.head_in_sent - 1;
    }
    pending.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (sentence_open) {
        close_sentence(doc.tokens.size() - sentence_base);
        sentence_base = doc.tokens.size();
        sentence_open = false;
      }
      continue;
    }
    if (line[0] == '#') continue;

    std::vector<std::string> cols = text::split(line, '\t');
    if (cols.size() < 10)
      throw FormatError("conllu: line " + std::to_string(line_no) + " has " +
                        std::to_string(cols.size()) +
                        " columns, expected 10");
    if (!plain_id(cols[0])) continue;

    if (!sentence_open) {
      sentence_token_start.push_back(doc.tokens.size());
      sentence_open = true;
    }

    const std::string& form = cols[1];
    std::size_t found = doc.text.find(form, cursor);
    if (found == std::string::npos)
      throw FormatError("conllu: line " + std::to_string(line_no) +
                        ": FORM '" + form +
                        "' not found in text at or after byte " +
                        std::to_string(cursor));
    cursor = found + form.size();

    Token t;
    t.text = form;
    t.start = map.char_at_byte(found);
    t.end = t.start + text::CharMap(form).char_count();
    t.lemma = cols[2];
    t.upos = cols[3];
    t.pos = coarse_pos(cols[3]);
    if (cols[5] != "_" && !cols[5].empty()) {
      for (const std::string& kv : text::split(cols[5], '|')) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
          throw FormatError("conllu: line " + std::to_string(line_no) +
                            ": malformed FEATS item '" + kv + "'");
        t.morph.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      }
    }
    if (cols[7] != "_" && !cols[7].empty()) t.dep_rel = cols[7];
    if (cols[9] != "_" && !cols[9].empty()) {
      for (const std::string& kv : text::split(cols[9], '|')) {
        if (kv.rfind("NER=", 0) == 0) t.ner_tag = kv.substr(4);
      }
    }

    std::size_t head = 0;
    if (cols[6] != "_" && !cols[6].empty()) {
      try {
        head = std::stoul(cols[6]);
      } catch (const std::exception&) {
        throw FormatError("conllu: line " + std::to_string(line_no) +
                          ": HEAD '" + cols[6] + "' is not a number");
      }
    }
    pending.push_back({doc.tokens.size(), head, line_no});
    doc.tokens.push_back(std::move(t));
  }
  if (sentence_open) close_sentence(doc.tokens.size() - sentence_base);

  doc.sentence_starts = std::move(sentence_token_start);
  return doc;
}

Document ingest_conllu(std::string doc_id, std::string text,
                       const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("conllu: cannot open '" + path + "'");
  return ingest_conllu(std::move(doc_id), std::move(text), in);
}

void write_conllu(const Document& doc, std::ostream& out) {
  std::vector<std::size_t> starts = doc.sentence_starts;
  if (starts.empty() && !doc.tokens.empty()) starts.push_back(0);
  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::size_t begin = starts[s];
    std::size_t end =
        s + 1 < starts.size() ? starts[s + 1] : doc.tokens.size();
    for (std::size_t i = begin; i < end; ++i) {
      const Token& t = doc.tokens[i];
      std::string feats = "_";
      if (!t.morph.empty()) {
        feats.clear();
        for (const auto& [k, v] : t.morph) {
          if (!feats.empty()) feats += "|";
          feats += k + "=" + v;
        }
      }
      std::string head = "0";
      if (t.dep_head) head = std::to_string(*t.dep_head - begin + 1);
      std::string misc = t.ner_tag ? "NER=" + *t.ner_tag : "_";
      out << (i - begin + 1) << '\t' << t.text << '\t' << t.lemma << '\t'
          << (t.upos.empty() ? to_string(t.pos) : t.upos.c_str()) << '\t'
          << "_" << '\t' << feats << '\t' << head << '\t'
          << (t.dep_rel ? *t.dep_rel : std::string("_")) << '\t' << "_"
          << '\t' << misc << '\n';
    }
    out << '\n';
  }
}

}  // namespace tide::textpipe
