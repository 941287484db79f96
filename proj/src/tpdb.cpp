#include "relsrs/tpdb.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace relsrs {

  ParseError::ParseError(std::size_t line, std::size_t column, std::string const& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  namespace {

    bool is_space(char c) {
      return std::isspace(static_cast<unsigned char>(c)) != 0;
    }

    class Parser {
     public:
      explicit Parser(std::string_view text) : text_(text) {}

      SrsDocument parse() {
        SrsDocument doc;
        bool        seen_rules = false;
        while (true) {
          skip_space();
          if (at_end()) {
            break;
          }
          if (peek() != '(') {
            fail("expected '(' to open a section");
          }
          std::size_t open = pos_;
          auto        open_line = line_, open_col = col_;
          advance();
          skip_space();
          std::string name = identifier();
          if (name == "RULES") {
            if (seen_rules) {
              fail_at(open_line, open_col, "multiple RULES sections are not supported");
            }
            seen_rules = true;
            parse_rules(doc.rules);
          } else {
            skip_section(open_line, open_col);
            doc.other_sections.emplace_back(text_.substr(open, pos_ - open));
          }
        }
        return doc;
      }

     private:
      enum class Lexeme { token, arrow_strict, arrow_relative, comma, close, open, end };

      void parse_rules(std::vector<SrsRule>& rules) {
        bool first = true;
        while (true) {
          SrsRule rule;
          auto    lex = next_lexeme(rule.lhs);
          if (lex == Lexeme::close && first && rule.lhs.empty()) {
            return;
          }
          if (lex == Lexeme::comma) {
            fail_at(lex_line_, lex_col_, rule.lhs.empty() ? "stray comma" : "missing arrow");
          }
          if (lex == Lexeme::close) {
            fail_at(lex_line_, lex_col_,
                    rule.lhs.empty() ? "stray comma before ')'" : "missing arrow");
          }
          check_common(lex);
          rule.mode = lex == Lexeme::arrow_strict ? Mode::strict : Mode::relative;
          lex       = next_lexeme(rule.rhs);
          if (lex == Lexeme::arrow_strict || lex == Lexeme::arrow_relative) {
            fail_at(lex_line_, lex_col_, "second arrow in one rule (missing comma?)");
          }
          check_common(lex);
          rules.push_back(std::move(rule));
          first = false;
          if (lex == Lexeme::close) {
            return;
          }
        }
      }

      void check_common(Lexeme lex) {
        if (lex == Lexeme::end) {
          fail("unbalanced parentheses: RULES section not closed");
        }
        if (lex == Lexeme::open) {
          fail_at(lex_line_, lex_col_, "unexpected '(' inside RULES");
        }
      }

      // Collects identifier tokens into `side` and returns the first
      // non-identifier lexeme.
      Lexeme next_lexeme(std::vector<std::string>& side) {
        while (true) {
          skip_space();
          lex_line_ = line_;
          lex_col_  = col_;
          if (at_end()) {
            return Lexeme::end;
          }
          char c = peek();
          if (c == ')') {
            advance();
            return Lexeme::close;
          }
          if (c == '(') {
            return Lexeme::open;
          }
          if (c == ',') {
            advance();
            return Lexeme::comma;
          }
          if (arrow_here()) {
            advance();
            advance();
            if (!at_end() && peek() == '=') {
              advance();
              return Lexeme::arrow_relative;
            }
            return Lexeme::arrow_strict;
          }
          side.push_back(identifier());
        }
      }

      bool arrow_here() const {
        return pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>';
      }

      std::string identifier() {
        std::size_t start = pos_;
        while (!at_end()) {
          char c = peek();
          if (is_space(c) || c == '(' || c == ')' || c == ',' || arrow_here()) {
            break;
          }
          advance();
        }
        if (start == pos_) {
          fail("expected identifier");
        }
        return std::string(text_.substr(start, pos_ - start));
      }

      void skip_section(std::size_t open_line, std::size_t open_col) {
        int depth = 1;
        while (!at_end()) {
          char c = peek();
          advance();
          if (c == '(') {
            ++depth;
          } else if (c == ')' && --depth == 0) {
            return;
          }
        }
        fail_at(open_line, open_col, "unbalanced parentheses: section not closed");
      }

      void skip_space() {
        while (!at_end() && is_space(peek())) {
          advance();
        }
      }

      bool at_end() const {
        return pos_ >= text_.size();
      }
      char peek() const {
        return text_[pos_];
      }
      void advance() {
        if (text_[pos_] == '\n') {
          ++line_;
          col_ = 1;
        } else {
          ++col_;
        }
        ++pos_;
      }

      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(line_, col_, msg);
      }
      [[noreturn]] void fail_at(std::size_t l, std::size_t c, std::string const& msg) const {
        throw ParseError(l, c, msg);
      }

      std::string_view text_;
      std::size_t      pos_  = 0;
      std::size_t      line_ = 1;
      std::size_t      col_  = 1;
      std::size_t      lex_line_ = 1;
      std::size_t      lex_col_  = 1;
    };

    std::string join(std::vector<std::string> const& tokens) {
      std::string out;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        out += (i ? " " : "") + tokens[i];
      }
      return out;
    }

  }  // namespace

  SrsDocument parse_srs(std::string_view text) {
    return Parser(text).parse();
  }

  std::string print_srs(SrsDocument const& doc) {
    std::ostringstream os;
    os << "(RULES\n";
    for (std::size_t i = 0; i < doc.rules.size(); ++i) {
      auto const& r = doc.rules[i];
      os << "  " << join(r.lhs) << (r.lhs.empty() ? "" : " ")
         << (r.mode == Mode::strict ? "->" : "->=") << (r.rhs.empty() ? "" : " ") << join(r.rhs)
         << (i + 1 < doc.rules.size() ? "," : "") << '\n';
    }
    os << ")\n";
    for (auto const& s : doc.other_sections) {
      os << s << '\n';
    }
    return os.str();
  }

  RelSrs to_system(SrsDocument const& doc) {
    RelSrs sys;
    auto   word = [&](std::vector<std::string> const& tokens) {
      Word w;
      for (auto const& t : tokens) {
        w.push_back(sys.alphabet.intern(t));
      }
      return w;
    };
    for (auto const& r : doc.rules) {
      Rule rule;
      rule.lhs  = word(r.lhs);
      rule.rhs  = word(r.rhs);
      rule.mode = r.mode;
      sys.rules.push_back(std::move(rule));
    }
    return sys;
  }

  SrsDocument to_document(RelSrs const& system) {
    SrsDocument doc;
    auto        tokens = [&](Word const& w) {
      std::vector<std::string> out;
      for (auto l : w) {
        out.push_back(system.alphabet.name(l));
      }
      return out;
    };
    for (auto const& r : system.rules) {
      doc.rules.push_back(SrsRule{tokens(r.lhs), tokens(r.rhs), r.mode});
    }
    return doc;
  }

  RelSrs read_srs_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return to_system(parse_srs(buf.str()));
  }

  RelSrs parse_compact(std::string_view text, Alphabet alphabet) {
    RelSrs sys;
    sys.alphabet = std::move(alphabet);
    auto side    = [&](std::string_view s) {
      Word w;
      std::string trimmed;
      for (char c : s) {
        if (!is_space(c)) {
          trimmed += c;
        }
      }
      if (trimmed == "ε" || trimmed.empty()) {
        return w;
      }
      for (char c : trimmed) {
        w.push_back(sys.alphabet.intern(std::string(1, c)));
      }
      return w;
    };
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end  = text.find(',', start);
      auto        item = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
      bool        blank = item.find_first_not_of(" \t\n") == std::string_view::npos;
      if (!blank) {
        auto arrow = item.find("->");
        if (arrow == std::string_view::npos) {
          throw std::invalid_argument("missing arrow in " + std::string(item));
        }
        bool rel  = arrow + 2 < item.size() && item[arrow + 2] == '=';
        Rule rule;
        rule.lhs  = side(item.substr(0, arrow));
        rule.rhs  = side(item.substr(arrow + (rel ? 3 : 2)));
        rule.mode = rel ? Mode::relative : Mode::strict;
        sys.rules.push_back(std::move(rule));
      }
      if (end == std::string_view::npos) {
        break;
      }
      start = end + 1;
    }
    return sys;
  }

}  // namespace relsrs
