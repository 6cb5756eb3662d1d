#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aidapub/timeutil.hpp"

namespace aidapub {

/// One row of a GeneRIF TSV file:
///   tax id, gene id, comma-separated PMIDs, last update, text.
struct GeneRifRecord {
  std::int64_t tax_id = 0;
  std::int64_t gene_id = 0;
  std::vector<std::int64_t> pmids;
  Timestamp last_update{};
  std::string text;
  std::size_t line = 0;  // 1-based source line

  friend bool operator==(const GeneRifRecord&, const GeneRifRecord&) = default;
};

struct ParseWarning {
  std::size_t line = 0;
  std::string message;
};

/// Streams records from a GeneRIF file. Comment lines ("#...") and blank
/// lines are skipped; malformed lines become warnings and are skipped.
class GeneRifReader {
 public:
  explicit GeneRifReader(std::istream& in) : in_(in) {}

  std::optional<GeneRifRecord> next();
  const std::vector<ParseWarning>& warnings() const noexcept { return warnings_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  std::vector<ParseWarning> warnings_;
};

struct GeneRifParse {
  std::vector<GeneRifRecord> records;
  std::vector<ParseWarning> warnings;
};

GeneRifParse parse_generif(std::istream& in);
GeneRifParse parse_generif(std::string_view text);

/// Opens a file for reading, transparently decompressing gzip input.
/// Throws Error(Io).
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

}  // namespace aidapub
