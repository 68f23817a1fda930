#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace autota {

/// Marker of the form "[P1_S002]": participant number plus that
/// participant's utterance sequence, zero-padded to three digits.
struct QuoteId {
    int participant = 0;
    int sequence = 0;

    std::string str() const;

    friend bool operator==(const QuoteId&, const QuoteId&) = default;
    friend auto operator<=>(const QuoteId&, const QuoteId&) = default;
};

/// Formats as "[P<participant>_S<sequence %03d>]".
std::string format_quote_id(int participant, int sequence);

/// Strict parse of one marker token; throws MalformedQuoteId unless
/// format_quote_id round-trips the input exactly.
QuoteId parse_quote_id(const std::string& raw);

struct Utterance {
    QuoteId quote_id;
    std::string speaker; // "P<participant>"
    std::string text;
    std::size_t word_count = 0;
};

struct Transcript {
    std::string id;
    std::vector<Utterance> utterances;
    std::size_t total_words = 0;

    bool contains(const QuoteId& q) const;
};

/// Contiguous utterance slice; word_count may exceed the limit only for a
/// single oversize utterance.
struct Chunk {
    std::string transcript_id;
    std::size_t index = 0;
    std::vector<Utterance> utterances;
    std::size_t word_count = 0;

    bool contains(const QuoteId& q) const;
};

inline constexpr std::size_t kDefaultChunkLimit = 1500;

/// Parses marker-annotated text into a transcript. Text between one marker
/// and the next belongs to the first; anything before the first marker is
/// rejected. Errors: MalformedQuoteId, DuplicateQuoteId, EmptyTranscript,
/// EmptyUtterance.
Transcript parse_transcript(const std::string& raw_text, const std::string& transcript_id);

/// Greedy packing: append utterances while the chunk stays within
/// chunk_limit words; an utterance longer than the limit gets a chunk of
/// its own.
std::vector<Chunk> chunk_transcript(const Transcript& t, std::size_t chunk_limit = kDefaultChunkLimit);

/// Normalized text form: one "[P#_S###] text" line per utterance.
std::string render_transcript(const Transcript& t);

} // namespace autota
