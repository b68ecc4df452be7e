#ifndef AUTOLOOP_CAYLEY_IO_HPP
#define AUTOLOOP_CAYLEY_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "autoloop/extension.hpp"
#include "autoloop/loop.hpp"

namespace autoloop {

/// Versioned Cayley-table file ("cayley-v1"): construction tag, regenerating
/// parameters, element labels, identity index and the full table.
struct CayleyFile {
    std::int64_t p = 0;
    std::string construction; // "extension" | "matrix" | "generic"
    nlohmann::ordered_json parameters;
    FiniteLoop loop;
};

/// Deterministic serialization: fixed key order, one table row per line,
/// newline-terminated.
std::string cayley_to_string(const CayleyFile& f);

/// Parses and re-validates; FormatVersionUnsupported / ValidationFailed.
CayleyFile cayley_from_string(const std::string& text);

std::string classification_csv(const ClassificationTable& t);

std::string read_file(const std::string& path);
/// Temp file + rename.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace autoloop

#endif
