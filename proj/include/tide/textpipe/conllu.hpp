#pragma once

#include <iosfwd>
#include <string>

#include "tide/textpipe/document.hpp"

namespace tide::textpipe {

// Reads 10-column CoNLL-U (ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS
// MISC, blank line between sentences). Token offsets are recovered by
// aligning each FORM left-to-right against `text`; a FORM that cannot be
// found at or after the cursor is an ingestion error naming the line.
// MISC may carry NER=<label>. Multiword-range and empty-node ids are
// skipped.
Document ingest_conllu(std::string doc_id, std::string text,
                       std::istream& in);
Document ingest_conllu(std::string doc_id, std::string text,
                       const std::string& path);

// Inverse of ingest_conllu for the fields it keeps: emits one sentence
// block per recorded sentence with LEMMA, UPOS, FEATS, HEAD, DEPREL and
// NER round-tripped.
void write_conllu(const Document& doc, std::ostream& out);

}  // namespace tide::textpipe
