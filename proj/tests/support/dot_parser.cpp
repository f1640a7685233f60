#include "support/dot_parser.hpp"

#include <cctype>

namespace testsupport {

namespace {

struct Token {
  enum class Kind { Id, Punct, End };
  Kind kind = Kind::End;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    if (pos_ >= text_.size()) return {Token::Kind::End, ""};
    const char c = text_[pos_];
    if (c == '"') return quoted();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return {Token::Kind::Punct, "->"};
    }
    if (std::string_view("{}[]=;,").find(c) != std::string_view::npos) {
      ++pos_;
      return {Token::Kind::Punct, std::string(1, c)};
    }
    throw std::runtime_error("dot: unexpected character '" + std::string(1, c) + "'");
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Token quoted() {
    ++pos_; // opening quote
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      value += text_[pos_++];
    }
    if (pos_ >= text_.size()) throw std::runtime_error("dot: unterminated quoted id");
    ++pos_; // closing quote
    return {Token::Kind::Id, std::move(value)};
  }

  Token identifier() {
    std::string value;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '.')) {
      value += text_[pos_++];
    }
    return {Token::Kind::Id, std::move(value)};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  DotGraph parse() {
    expect_id("digraph");
    if (current_.kind == Token::Kind::Id) advance(); // optional graph name
    expect_punct("{");
    while (!is_punct("}")) parse_statement();
    expect_punct("}");
    if (current_.kind != Token::Kind::End) throw std::runtime_error("dot: trailing input");
    return std::move(graph_);
  }

private:
  void parse_statement() {
    if (current_.kind != Token::Kind::Id) throw std::runtime_error("dot: expected identifier");
    const std::string first = current_.text;
    advance();

    if (is_punct("=")) { // graph attribute: id = id
      advance();
      graph_.graph_attrs[first] = expect_any_id();
      consume_semicolon();
      return;
    }
    if (is_punct("->")) { // edge statement
      advance();
      const std::string target = expect_any_id();
      graph_.edges.push_back({first, target});
      if (is_punct("[")) parse_attr_list(nullptr);
      consume_semicolon();
      return;
    }
    // node statement
    DotVertex vertex{first, {}};
    if (is_punct("[")) parse_attr_list(&vertex.attrs);
    graph_.vertices.push_back(std::move(vertex));
    consume_semicolon();
  }

  void parse_attr_list(std::map<std::string, std::string>* attrs) {
    expect_punct("[");
    while (!is_punct("]")) {
      const std::string key = expect_any_id();
      expect_punct("=");
      const std::string value = expect_any_id();
      if (attrs) (*attrs)[key] = value;
      if (is_punct(",") || is_punct(";")) advance();
    }
    expect_punct("]");
  }

  void consume_semicolon() {
    if (is_punct(";")) advance();
  }

  bool is_punct(std::string_view text) const {
    return current_.kind == Token::Kind::Punct && current_.text == text;
  }

  void expect_punct(std::string_view text) {
    if (!is_punct(text)) {
      throw std::runtime_error("dot: expected '" + std::string(text) + "', found '" +
                               current_.text + "'");
    }
    advance();
  }

  void expect_id(std::string_view text) {
    if (current_.kind != Token::Kind::Id || current_.text != text) {
      throw std::runtime_error("dot: expected '" + std::string(text) + "'");
    }
    advance();
  }

  std::string expect_any_id() {
    if (current_.kind != Token::Kind::Id) {
      throw std::runtime_error("dot: expected identifier, found '" + current_.text + "'");
    }
    std::string value = current_.text;
    advance();
    return value;
  }

  void advance() { current_ = lexer_.next(); }

  Lexer lexer_;
  Token current_;
  DotGraph graph_;
};

} // namespace

const DotVertex* DotGraph::find_vertex(std::string_view id) const {
  for (const auto& vertex : vertices) {
    if (vertex.id == id) return &vertex;
  }
  return nullptr;
}

DotGraph parse_dot(std::string_view text) { return Parser(text).parse(); }

} // namespace testsupport
