#pragma once
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hc/contact_homology.hpp"
#include "hc/handle_dynamics.hpp"
#include "hc/morse_complex.hpp"

namespace hc::io {

/* Versioned JSON input document: Morse data, optional model handles keyed by
   the critical point they are attached to, and run options. Rationals travel
   as "p/q" strings so nothing is lost in transit. */
struct DocumentOptions {
    std::optional<contact::Window> window;
    std::optional<long long> m_o;
    std::optional<Rational> action_cutoff;  // units of pi
    std::optional<std::uint64_t> seed;
};

struct InputDocument {
    int version = 1;
    int n = 2;
    morse::MorseData morse;
    std::vector<std::pair<std::string, handle::ModelHandle>> handles;  // sorted by id
    DocumentOptions options;
};

// ParseError on malformed JSON / wrong shapes / bad version; InvalidData on
// semantically broken values (unknown ids, k != index, non-positive radii).
InputDocument parse_document_text(const std::string& text);
InputDocument load_document(const std::string& path);

const handle::ModelHandle* find_handle(const InputDocument& doc, const std::string& id);

enum class Format { Human, Csv, Json };
Format parse_format(const std::string& name);

/* One table per run: ordered meta lines plus stringly-typed cells. Every
   format renders the same canonical cell strings (reals via %.12g, rationals
   as p/q), so CSV and JSON carry identical numeric content byte for byte. */
struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void render_table(const Table& t, Format f, std::ostream& out);

std::string fmt_double(double x);
std::string fmt_bool(bool b);

} // namespace hc::io
