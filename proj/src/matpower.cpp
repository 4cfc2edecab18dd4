#include "coopt/matpower.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace coopt {

namespace {

enum class Tok { ident, number, str, punct, newline, end };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
};

// Lexer for the MATPOWER subset. Newlines are significant inside matrix
// literals (they terminate rows), so they are emitted as tokens and the
// parser decides whether to skip them.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blanks_and_comments();
    if (pos_ >= src_.size()) return {Tok::end, ""};
    char c = src_[pos_];
    if (c == '\n') {
      ++pos_;
      return {Tok::newline, "\n"};
    }
    if (c == '\'') return lex_string();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+')
      return lex_number();
    ++pos_;
    return {Tok::punct, std::string(1, c)};
  }

 private:
  void skip_blanks_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '.' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '.' &&
                 src_[pos_ + 2] == '.') {
        // line continuation: swallow through end of line
        pos_ += 3;
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        if (pos_ < src_.size()) ++pos_;
      } else {
        break;
      }
    }
  }

  Token lex_string() {
    size_t start = ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '\'') ++pos_;
    if (pos_ >= src_.size())
      throw Error(errc::malformed_matrix, "unterminated string literal");
    std::string s(src_.substr(start, pos_ - start));
    ++pos_;
    return {Tok::str, s};
  }

  Token lex_ident() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    return {Tok::ident, std::string(src_.substr(start, pos_ - start))};
  }

  Token lex_number() {
    size_t start = pos_;
    if (src_[pos_] == '-' || src_[pos_] == '+') ++pos_;
    bool any_digit = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
      any_digit = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        any_digit = true;
      }
    }
    if (!any_digit)
      throw Error(errc::malformed_matrix,
                  "stray sign or dot at offset " + std::to_string(start));
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // bare 'e' belongs to the next token
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw Error(errc::malformed_matrix, "bad numeric token '" + text + "'");
    return {Tok::number, text, v};
  }

  std::string_view src_;
  size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  RawCase parse() {
    RawCase rc;
    skip_newlines();
    expect_ident("function");
    expect_ident("mpc");
    expect_punct("=");
    if (cur_.kind != Tok::ident)
      throw Error(errc::malformed_matrix, "expected case name after 'function mpc ='");
    rc.case_name = cur_.text;
    advance();
    bool saw_base = false, saw_bus = false, saw_gen = false, saw_branch = false,
         saw_gencost = false;
    for (;;) {
      skip_newlines_and_semis();
      if (cur_.kind == Tok::end) break;
      expect_ident("mpc");
      expect_punct(".");
      if (cur_.kind != Tok::ident)
        throw Error(errc::malformed_matrix, "expected field name after 'mpc.'");
      std::string field = cur_.text;
      advance();
      expect_punct("=");
      skip_newlines();
      if (cur_.kind == Tok::str) {
        advance();  // e.g. mpc.version = '2'; kept out of RawCase
      } else if (cur_.kind == Tok::number) {
        double v = cur_.value;
        advance();
        if (field == "baseMVA") {
          if (v <= 0.0) throw Error(errc::malformed_matrix, "baseMVA must be positive");
          rc.base_mva = v;
          saw_base = true;
        }
      } else if (cur_.kind == Tok::punct && cur_.text == "[") {
        Matrix m = parse_matrix();
        if (field == "bus") {
          rc.bus_rows = std::move(m);
          saw_bus = true;
        } else if (field == "gen") {
          rc.gen_rows = std::move(m);
          saw_gen = true;
        } else if (field == "branch") {
          rc.branch_rows = std::move(m);
          saw_branch = true;
        } else if (field == "gencost") {
          rc.gencost_rows = std::move(m);
          saw_gencost = true;
        }
        // other matrices (bus_name, areas, ...) are parsed and dropped
      } else {
        throw Error(errc::malformed_matrix,
                    "unsupported right-hand side for mpc." + field);
      }
      if (cur_.kind == Tok::punct && cur_.text == ";") advance();
    }
    if (!saw_base) throw Error(errc::missing_table, "baseMVA");
    if (!saw_bus) throw Error(errc::missing_table, "bus");
    if (!saw_gen) throw Error(errc::missing_table, "gen");
    if (!saw_branch) throw Error(errc::missing_table, "branch");
    if (!saw_gencost) throw Error(errc::missing_table, "gencost");
    validate(rc);
    return rc;
  }

 private:
  void advance() { cur_ = lex_.next(); }
  void skip_newlines() {
    while (cur_.kind == Tok::newline) advance();
  }
  void skip_newlines_and_semis() {
    while (cur_.kind == Tok::newline || (cur_.kind == Tok::punct && cur_.text == ";"))
      advance();
  }
  void expect_ident(const std::string& name) {
    if (cur_.kind != Tok::ident || cur_.text != name)
      throw Error(errc::malformed_matrix, "expected '" + name + "', got '" + cur_.text + "'");
    advance();
  }
  void expect_punct(const std::string& p) {
    if (cur_.kind != Tok::punct || cur_.text != p)
      throw Error(errc::malformed_matrix, "expected '" + p + "', got '" + cur_.text + "'");
    advance();
  }

  Matrix parse_matrix() {
    advance();  // consume '['
    Matrix rows;
    std::vector<double> row;
    auto end_row = [&] {
      if (!row.empty()) {
        rows.push_back(std::move(row));
        row.clear();
      }
    };
    for (;;) {
      if (cur_.kind == Tok::end)
        throw Error(errc::malformed_matrix, "unterminated matrix literal");
      if (cur_.kind == Tok::newline) {
        end_row();
        advance();
      } else if (cur_.kind == Tok::punct && cur_.text == ";") {
        end_row();
        advance();
      } else if (cur_.kind == Tok::punct && cur_.text == ",") {
        advance();
      } else if (cur_.kind == Tok::punct && cur_.text == "]") {
        end_row();
        advance();
        break;
      } else if (cur_.kind == Tok::number) {
        row.push_back(cur_.value);
        advance();
      } else {
        throw Error(errc::malformed_matrix,
                    "unexpected token '" + cur_.text + "' inside matrix");
      }
    }
    if (!rows.empty()) {
      size_t w = rows.front().size();
      for (const auto& r : rows)
        if (r.size() != w)
          throw Error(errc::malformed_matrix,
                      "ragged matrix: row width " + std::to_string(r.size()) +
                          " != " + std::to_string(w));
    }
    return rows;
  }

  void validate(const RawCase& rc) {
    if (rc.bus_rows.empty()) throw Error(errc::malformed_matrix, "bus table is empty");
    std::set<long long> ids;
    for (const auto& r : rc.bus_rows) {
      if (r.size() <= mpc::BUS_PD)
        throw Error(errc::malformed_matrix, "bus row too short");
      long long id = llround(r[mpc::BUS_I]);
      if (!ids.insert(id).second)
        throw Error(errc::duplicate_bus_id, "bus id " + std::to_string(id));
    }
    for (const auto& r : rc.branch_rows) {
      if (r.size() <= mpc::BR_RATE_A)
        throw Error(errc::malformed_matrix, "branch row too short");
      for (int col : {mpc::BR_FROM, mpc::BR_TO}) {
        long long id = llround(r[col]);
        if (!ids.count(id))
          throw Error(errc::unknown_bus, "branch references bus " + std::to_string(id));
      }
    }
    for (const auto& r : rc.gen_rows) {
      if (r.size() <= mpc::GEN_PMAX)
        throw Error(errc::malformed_matrix, "gen row too short");
      long long id = llround(r[mpc::GEN_BUS]);
      if (!ids.count(id))
        throw Error(errc::unknown_bus, "generator references bus " + std::to_string(id));
    }
    if (rc.gencost_rows.size() != rc.gen_rows.size())
      throw Error(errc::malformed_matrix,
                  "gencost has " + std::to_string(rc.gencost_rows.size()) +
                      " rows for " + std::to_string(rc.gen_rows.size()) + " generators");
    for (const auto& r : rc.gencost_rows) {
      if (r.size() <= mpc::COST_NCOST)
        throw Error(errc::malformed_matrix, "gencost row too short");
      if (llround(r[mpc::COST_MODEL]) != 2)
        throw Error(errc::unsupported_cost_model,
                    "gencost model " + format_double(r[mpc::COST_MODEL]) +
                        " (only polynomial model 2 is supported)");
      long long n = llround(r[mpc::COST_NCOST]);
      if (n < 1 || n > 3)
        throw Error(errc::unsupported_cost_model,
                    "polynomial degree above 2 (ncost=" + std::to_string(n) + ")");
      if (r.size() != static_cast<size_t>(mpc::COST_COEF0 + n))
        throw Error(errc::malformed_matrix, "gencost row width does not match ncost");
    }
  }

  Lexer lex_;
  Token cur_;
};

void emit_matrix(std::ostringstream& out, const char* name, const Matrix& m) {
  out << "mpc." << name << " = [\n";
  for (const auto& row : m) {
    out << '\t';
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      out << format_double(row[i]);
    }
    out << ";\n";
  }
  out << "];\n";
}

}  // namespace

RawCase parse_case(std::string_view text) { return Parser(text).parse(); }

std::string dump_case(const RawCase& rc) {
  std::ostringstream out;
  out << "function mpc = " << rc.case_name << "\n";
  out << "mpc.version = '2';\n";
  out << "mpc.baseMVA = " << format_double(rc.base_mva) << ";\n";
  emit_matrix(out, "bus", rc.bus_rows);
  emit_matrix(out, "gen", rc.gen_rows);
  emit_matrix(out, "branch", rc.branch_rows);
  emit_matrix(out, "gencost", rc.gencost_rows);
  return out.str();
}

}  // namespace coopt
