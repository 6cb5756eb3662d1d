#include "aidapub/generif.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <sstream>
#include <streambuf>

#include "aidapub/error.hpp"
#include "aidapub/unicode.hpp"

namespace aidapub {
namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto i = s.find(sep);
    out.push_back(s.substr(0, i));
    if (i == std::string_view::npos) break;
    s.remove_prefix(i + 1);
  }
  return out;
}

// gzread passes plain files through unchanged, so one buffer serves both.
class GzipBuf : public std::streambuf {
 public:
  explicit GzipBuf(gzFile file) : file_(file) {}
  ~GzipBuf() override { gzclose(file_); }
  GzipBuf(const GzipBuf&) = delete;
  GzipBuf& operator=(const GzipBuf&) = delete;

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    const int n = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (n <= 0) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + n);
    return traits_type::to_int_type(*gptr());
  }

 private:
  gzFile file_;
  std::array<char, 1 << 16> buffer_{};
};

class GzipStream : public std::istream {
 public:
  explicit GzipStream(gzFile file) : std::istream(nullptr), buf_(file) { rdbuf(&buf_); }

 private:
  GzipBuf buf_;
};

}  // namespace

std::optional<GeneRifRecord> GeneRifReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto warn = [&](std::string msg) { warnings_.push_back({line_no_, std::move(msg)}); };

    const auto fields = split(line, '\t');
    if (fields.size() != 5) {
      warn("expected 5 tab-separated columns, found " + std::to_string(fields.size()));
      continue;
    }
    GeneRifRecord rec;
    rec.line = line_no_;
    const auto tax = parse_int(fields[0]);
    const auto gene = parse_int(fields[1]);
    if (!tax) {
      warn("invalid tax id '" + std::string(fields[0]) + "'");
      continue;
    }
    if (!gene || *gene <= 0) {
      warn("invalid gene id '" + std::string(fields[1]) + "'");
      continue;
    }
    rec.tax_id = *tax;
    rec.gene_id = *gene;
    bool pmids_ok = !fields[2].empty();
    for (auto p : split(fields[2], ',')) {
      const auto pmid = parse_int(p);
      if (!pmid || *pmid <= 0) {
        pmids_ok = false;
        break;
      }
      rec.pmids.push_back(*pmid);
    }
    if (!pmids_ok) {
      warn("invalid PMID list '" + std::string(fields[2]) + "'");
      continue;
    }
    const auto ts = parse_timestamp(fields[3]);
    if (!ts) {
      warn("invalid timestamp '" + std::string(fields[3]) + "'");
      continue;
    }
    rec.last_update = *ts;
    rec.text = std::string(unicode::trim(fields[4]));
    if (rec.text.empty()) {
      warn("empty text column");
      continue;
    }
    return rec;
  }
  return std::nullopt;
}

GeneRifParse parse_generif(std::istream& in) {
  GeneRifReader reader(in);
  GeneRifParse out;
  while (auto rec = reader.next()) out.records.push_back(std::move(*rec));
  out.warnings = reader.warnings();
  return out;
}

GeneRifParse parse_generif(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_generif(in);
}

std::unique_ptr<std::istream> open_input(const std::filesystem::path& path) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (!file) throw Error(Errc::Io, "cannot open " + path.string());
  return std::make_unique<GzipStream>(file);
}

}  // namespace aidapub
