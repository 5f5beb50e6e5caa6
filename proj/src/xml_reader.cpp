#include "xml_reader.hpp"

#include <cstdint>

#include "gridsight/error.hpp"

namespace gridsight::detail {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || u >= 0x80;
}

bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.'; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Scanner {
 public:
  Scanner(std::string_view doc, XmlHandler& handler) : doc_(doc), handler_(handler) {}

  void run() {
    bool seen_root = false;
    while (true) {
      skip_space();
      if (at_end()) break;
      if (peek() != '<') fail(pos_, seen_root ? "content after root element" : "document does not start with markup");
      if (starts_with("<?")) {
        skip_until("?>", "unterminated processing instruction");
      } else if (starts_with("<!--")) {
        skip_until("-->", "unterminated comment");
      } else if (starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else {
        if (seen_root) fail(pos_, "multiple root elements");
        element();
        seen_root = true;
      }
    }
    if (!seen_root) fail(pos_, "document has no root element");
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& message) const { throw ParseError(at, message); }

  bool at_end() const { return pos_ >= doc_.size(); }
  char peek() const { return doc_[pos_]; }
  bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void skip_until(std::string_view terminator, const char* message) {
    const std::size_t start = pos_;
    const auto found = doc_.find(terminator, pos_ + 2);
    if (found == std::string_view::npos) fail(start, message);
    pos_ = found + terminator.size();
  }

  void skip_doctype() {
    const std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < doc_.size(); ++pos_) {
      if (doc_[pos_] == '[') ++depth;
      if (doc_[pos_] == ']') --depth;
      if (doc_[pos_] == '>' && depth == 0) {
        ++pos_;
        return;
      }
    }
    fail(start, "unterminated DOCTYPE");
  }

  std::string name() {
    const std::size_t start = pos_;
    if (at_end() || !is_name_start(peek())) fail(pos_, "expected a name");
    while (!at_end() && is_name_char(peek())) ++pos_;
    return std::string(doc_.substr(start, pos_ - start));
  }

  std::string decode(std::string_view raw, std::size_t base) const {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '<') fail(base + i, "'<' in attribute value");
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      const auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail(base + i, "unterminated entity reference");
      const std::string_view entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "amp") out.push_back('&');
      else if (entity == "lt") out.push_back('<');
      else if (entity == "gt") out.push_back('>');
      else if (entity == "quot") out.push_back('"');
      else if (entity == "apos") out.push_back('\'');
      else if (entity.size() > 1 && entity[0] == '#') {
        std::uint32_t cp = 0;
        const bool hex = entity[1] == 'x';
        const std::string_view digits = entity.substr(hex ? 2 : 1);
        if (digits.empty()) fail(base + i, "empty character reference");
        for (const char c : digits) {
          int d;
          if (c >= '0' && c <= '9') d = c - '0';
          else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
          else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
          else fail(base + i, "bad character reference");
          cp = cp * (hex ? 16U : 10U) + static_cast<std::uint32_t>(d);
          if (cp > 0x10FFFF) fail(base + i, "character reference out of range");
        }
        append_utf8(out, cp);
      } else {
        fail(base + i, "unknown entity '&" + std::string(entity) + ";'");
      }
      i = semi;
    }
    return out;
  }

  // Parses one element, including its content, starting at '<'.
  void element() {
    const std::size_t open_at = pos_;
    ++pos_;
    const std::string tag = name();
    std::vector<XmlAttribute> attributes;
    while (true) {
      const bool had_space = !at_end() && is_space(peek());
      skip_space();
      if (at_end()) fail(open_at, "unterminated start tag <" + tag + ">");
      if (peek() == '/') {
        if (!starts_with("/>")) fail(pos_, "expected '/>'");
        pos_ += 2;
        handler_.start_element(tag, attributes, open_at);
        handler_.end_element(tag);
        return;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      if (!had_space) fail(pos_, "attributes must be separated by whitespace");
      XmlAttribute attribute;
      attribute.name = name();
      skip_space();
      if (at_end() || peek() != '=') fail(pos_, "expected '=' after attribute name");
      ++pos_;
      skip_space();
      if (at_end() || (peek() != '"' && peek() != '\'')) fail(pos_, "attribute value must be quoted");
      const char quote = peek();
      const std::size_t value_at = ++pos_;
      const auto close = doc_.find(quote, pos_);
      if (close == std::string_view::npos) fail(value_at - 1, "unterminated attribute value");
      attribute.value = decode(doc_.substr(value_at, close - value_at), value_at);
      pos_ = close + 1;
      for (const auto& existing : attributes) {
        if (existing.name == attribute.name) fail(value_at, "duplicate attribute '" + attribute.name + "'");
      }
      attributes.push_back(std::move(attribute));
    }
    handler_.start_element(tag, attributes, open_at);
    content(tag, open_at);
  }

  void content(const std::string& tag, std::size_t open_at) {
    while (true) {
      const auto lt = doc_.find('<', pos_);
      if (lt == std::string_view::npos) fail(open_at, "element <" + tag + "> is never closed");
      pos_ = lt;
      if (starts_with("</")) {
        pos_ += 2;
        const std::size_t close_at = pos_;
        const std::string closing = name();
        skip_space();
        if (at_end() || peek() != '>') fail(pos_, "expected '>'");
        ++pos_;
        if (closing != tag) fail(close_at, "mismatched </" + closing + ">, expected </" + tag + ">");
        handler_.end_element(tag);
        return;
      }
      if (starts_with("<!--")) {
        skip_until("-->", "unterminated comment");
      } else if (starts_with("<![CDATA[")) {
        skip_until("]]>", "unterminated CDATA section");
      } else if (starts_with("<?")) {
        skip_until("?>", "unterminated processing instruction");
      } else {
        element();
      }
    }
  }

  std::string_view doc_;
  XmlHandler& handler_;
  std::size_t pos_ = 0;
};

}  // namespace

void scan_xml(std::string_view document, XmlHandler& handler) { Scanner(document, handler).run(); }

}  // namespace gridsight::detail
