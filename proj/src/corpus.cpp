#include "autota/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "autota/error.hpp"
#include "autota/text.hpp"

namespace autota {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses digits starting at pos; returns -1 when none or the value overflows.
int read_number(const std::string& s, std::size_t& pos) {
    if (pos >= s.size() || !is_digit(s[pos])) return -1;
    long value = 0;
    while (pos < s.size() && is_digit(s[pos])) {
        value = value * 10 + (s[pos] - '0');
        if (value > 1000000) return -1;
        ++pos;
    }
    return static_cast<int>(value);
}

} // namespace

std::string format_quote_id(int participant, int sequence) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "[P%d_S%03d]", participant, sequence);
    return buf;
}

std::string QuoteId::str() const { return format_quote_id(participant, sequence); }

QuoteId parse_quote_id(const std::string& raw) {
    std::size_t pos = 2; // past "[P"
    bool ok = raw.size() > 2 && raw[0] == '[' && raw[1] == 'P';
    int participant = -1;
    int sequence = -1;
    if (ok) participant = read_number(raw, pos);
    ok = ok && participant >= 1;
    ok = ok && pos + 1 < raw.size() && raw[pos] == '_' && raw[pos + 1] == 'S';
    if (ok) {
        pos += 2;
        sequence = read_number(raw, pos);
    }
    ok = ok && sequence >= 1 && pos + 1 == raw.size() && raw[pos] == ']';
    // The formatted form must reproduce the source token exactly; this is
    // what rejects un-padded or zero-padded-participant variants.
    ok = ok && format_quote_id(participant, sequence) == raw;
    if (!ok) throw Error(ErrorKind::MalformedQuoteId, "bad quote id marker '" + raw + "'");
    return QuoteId{participant, sequence};
}

bool Transcript::contains(const QuoteId& q) const {
    return std::any_of(utterances.begin(), utterances.end(),
                       [&](const Utterance& u) { return u.quote_id == q; });
}

bool Chunk::contains(const QuoteId& q) const {
    return std::any_of(utterances.begin(), utterances.end(),
                       [&](const Utterance& u) { return u.quote_id == q; });
}

Transcript parse_transcript(const std::string& raw_text, const std::string& transcript_id) {
    Transcript t;
    t.id = transcript_id;

    // Marker candidates are "[P" immediately followed by a digit; anything
    // else in brackets rides along as utterance text.
    struct Marker {
        std::size_t begin; // '['
        std::size_t end;   // one past ']'
        QuoteId id;
    };
    std::vector<Marker> markers;
    std::size_t search = 0;
    while (true) {
        std::size_t pos = raw_text.find("[P", search);
        if (pos == std::string::npos) break;
        if (pos + 2 >= raw_text.size() || !is_digit(raw_text[pos + 2])) {
            search = pos + 2;
            continue;
        }
        std::size_t close = raw_text.find(']', pos);
        if (close == std::string::npos) {
            throw Error(ErrorKind::MalformedQuoteId,
                        "unterminated quote id marker at offset " + std::to_string(pos));
        }
        std::string token = raw_text.substr(pos, close - pos + 1);
        markers.push_back({pos, close + 1, parse_quote_id(token)});
        search = close + 1;
    }

    if (markers.empty()) {
        throw Error(ErrorKind::EmptyTranscript, "no quote id markers found in '" + transcript_id + "'");
    }
    if (!text::trim(raw_text.substr(0, markers.front().begin)).empty()) {
        throw Error(ErrorKind::MalformedQuoteId,
                    "text before the first quote id marker in '" + transcript_id + "'");
    }

    std::set<QuoteId> seen;
    for (std::size_t i = 0; i < markers.size(); ++i) {
        const Marker& m = markers[i];
        if (!seen.insert(m.id).second) {
            throw Error(ErrorKind::DuplicateQuoteId, "duplicate quote id " + m.id.str());
        }
        std::size_t body_end = (i + 1 < markers.size()) ? markers[i + 1].begin : raw_text.size();
        Utterance u;
        u.quote_id = m.id;
        u.speaker = "P" + std::to_string(m.id.participant);
        u.text = text::trim(raw_text.substr(m.end, body_end - m.end));
        if (u.text.empty()) {
            throw Error(ErrorKind::EmptyUtterance, "no text after quote id " + m.id.str());
        }
        u.word_count = text::count_words(u.text);
        t.total_words += u.word_count;
        t.utterances.push_back(std::move(u));
    }
    return t;
}

std::vector<Chunk> chunk_transcript(const Transcript& t, std::size_t chunk_limit) {
    if (chunk_limit < 1) throw Error(ErrorKind::ConfigError, "chunk_limit must be >= 1");
    std::vector<Chunk> chunks;
    Chunk current;
    current.transcript_id = t.id;
    current.index = 0;
    auto flush = [&]() {
        if (current.utterances.empty()) return;
        std::size_t next_index = current.index + 1;
        chunks.push_back(std::move(current));
        current = Chunk{};
        current.transcript_id = t.id;
        current.index = next_index;
    };
    for (const Utterance& u : t.utterances) {
        if (!current.utterances.empty() && current.word_count + u.word_count > chunk_limit) {
            flush();
        }
        // An utterance longer than the limit still becomes a (singleton) chunk.
        current.utterances.push_back(u);
        current.word_count += u.word_count;
        if (current.word_count > chunk_limit) flush();
    }
    flush();
    return chunks;
}

std::string render_transcript(const Transcript& t) {
    std::string out;
    for (const Utterance& u : t.utterances) {
        out += u.quote_id.str();
        out += ' ';
        out += u.text;
        out += '\n';
    }
    return out;
}

} // namespace autota
