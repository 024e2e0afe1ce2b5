#include "veritas_app/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <vector>

#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas::app {
namespace {

using Json = nlohmann::ordered_json;

class Parser {
 public:
  Parser(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  Json parse() {
    Json root = Json::object();
    Json* table = &root;
    while (!at_end()) {
      skip_blank();
      if (at_end()) break;
      if (peek() == '\n') {
        advance();
        continue;
      }
      if (peek() == '[') {
        advance();
        if (peek() == '[') fail("arrays of tables are not supported");
        const auto path = parse_key_path();
        skip_ws();
        expect(']');
        table = &root;
        for (const auto& part : path) table = &child_table(*table, part);
        if (!defined_tables_.insert(join(path)).second) {
          fail("table [" + join(path) + "] defined twice");
        }
      } else {
        const auto path = parse_key_path();
        skip_ws();
        expect('=');
        skip_ws();
        Json value = parse_value();
        Json* target = table;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) target = &child_table(*target, path[i]);
        if (target->contains(path.back())) fail("key '" + path.back() + "' defined twice");
        (*target)[path.back()] = std::move(value);
      }
      end_of_line();
    }
    return root;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ValidationError(std::string(source_) + ":" + std::to_string(line_) + ": " + message);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void skip_ws() {
    while (peek() == ' ' || peek() == '\t') advance();
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') advance();
    }
  }

  void skip_blank() {
    skip_ws();
    skip_comment();
    if (peek() == '\r') advance();
  }

  // Whitespace, comments and newlines, for use inside arrays.
  void skip_all() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_blank();
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected text after value");
    advance();
  }

  static bool bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> parts;
    for (;;) {
      skip_ws();
      if (peek() == '"') {
        parts.push_back(parse_basic_string());
      } else if (peek() == '\'') {
        parts.push_back(parse_literal_string());
      } else {
        std::string key;
        while (bare_key_char(peek())) key += advance();
        if (key.empty()) fail("expected a key");
        parts.push_back(std::move(key));
      }
      skip_ws();
      if (peek() != '.') return parts;
      advance();
    }
  }

  Json& child_table(Json& parent, const std::string& key) {
    if (!parent.contains(key)) parent[key] = Json::object();
    Json& child = parent[key];
    if (!child.is_object()) fail("'" + key + "' is not a table");
    return child;
  }

  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  Json parse_value() {
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') fail("inline tables are not supported");
    std::string token;
    while (!at_end() && peek() != ',' && peek() != ']' && peek() != '#' && peek() != '\n' &&
           peek() != ' ' && peek() != '\t' && peek() != '\r') {
      token += advance();
    }
    if (token == "true") return true;
    if (token == "false") return false;
    return parse_number(token);
  }

  Json parse_number(std::string token) {
    if (token.empty()) fail("expected a value");
    std::erase(token, '_');
    const bool is_float = token.find_first_of(".eE") != std::string::npos || token == "inf" ||
                          token == "+inf" || token == "-inf" || token == "nan";
    const char* first = token.data() + (token.front() == '+' ? 1 : 0);
    const char* last = token.data() + token.size();
    if (is_float) {
      try {
        std::size_t used = 0;
        const double value = std::stod(std::string(first, last), &used);
        if (used == static_cast<std::size_t>(last - first)) return value;
      } catch (const std::exception&) {
      }
    } else {
      std::int64_t value = 0;
      const auto [end, ec] = std::from_chars(first, last, value);
      if (ec == std::errc() && end == last) return value;
    }
    fail("invalid value '" + token + "'");
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = advance();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      const char e = at_end() ? '\0' : advance();
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'u':
        case 'U': append_code_point(out, e == 'u' ? 4 : 8); break;
        default: fail(std::string("invalid escape '\\") + e + "'");
      }
    }
  }

  void append_code_point(std::string& out, int digits) {
    if (pos_ + static_cast<std::size_t>(digits) > text_.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    const auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + pos_ + digits, cp, 16);
    if (ec != std::errc() || end != text_.data() + pos_ + digits) fail("invalid unicode escape");
    pos_ += static_cast<std::size_t>(digits);
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid unicode scalar");
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string parse_literal_string() {
    expect('\'');
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = advance();
      if (c == '\'') return out;
      out += c;
    }
  }

  Json parse_array() {
    expect('[');
    Json array = Json::array();
    for (;;) {
      skip_all();
      if (peek() == ']') {
        advance();
        return array;
      }
      array.push_back(parse_value());
      skip_all();
      if (peek() == ',') {
        advance();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  std::string_view text_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::set<std::string> defined_tables_;
};

}  // namespace

nlohmann::ordered_json parse_toml(std::string_view text, std::string_view source) {
  return Parser(text, source).parse();
}

nlohmann::ordered_json load_toml(const std::filesystem::path& path) {
  return parse_toml(read_text_file(path), path.string());
}

}  // namespace veritas::app
