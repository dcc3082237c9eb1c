//  Copyright 2026 The mufix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#include "mufix_cli/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "mufix/fixpoint.hpp"

namespace mufix::cli {

namespace {

std::string position_prefix(const std::string& source, std::size_t line,
                            std::size_t column) {
  if (line == 0) return source + ": ";
  return source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": ";
}

// Largest product carrier accepted in table mode.
constexpr std::size_t kMaxTableCarrier = std::size_t{1} << 20;

bool is_word_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
}

// Character cursor over one line with 1-based column reporting.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t column() const { return pos_ + 1; }
  std::string_view rest() const { return text_.substr(pos_); }
  void advance(std::size_t n) { pos_ = std::min(text_.size(), pos_ + n); }

  void skip_blank() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_blank();
    return pos_ == text_.size();
  }
  char peek() {
    skip_blank();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char ch) {
    if (peek() != ch) return false;
    ++pos_;
    return true;
  }
  bool consume(std::string_view token) {
    skip_blank();
    if (rest().substr(0, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  std::string_view word() {
    skip_blank();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<std::uint64_t> to_number(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || end != digits.data() + digits.size()) return std::nullopt;
  return value;
}

// "f3" -> 3, "x12" -> 12.
std::optional<std::uint64_t> numbered(std::string_view word, char prefix) {
  if (word.size() < 2 || word[0] != prefix) return std::nullopt;
  return to_number(word.substr(1));
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back(line);
      start = end + 1;
    }
    if (!lines_.empty() && lines_.back().empty()) lines_.pop_back();
  }

  ProblemFile run() {
    for (line_no_ = 1; line_no_ <= lines_.size(); ++line_no_) {
      std::string_view line = lines_[line_no_ - 1];
      statement(line);
    }
    return finish();
  }

 private:
  [[noreturn]] void fail_at(std::size_t line, std::size_t column, std::string message) const {
    throw ProblemError(source_, line, column, std::move(message));
  }
  [[noreturn]] void fail(std::size_t column, std::string message) const {
    fail_at(line_no_, column, std::move(message));
  }
  [[noreturn]] void fail_eof(std::string message) const {
    fail_at(std::max<std::size_t>(lines_.size(), 1), 1, std::move(message));
  }

  void statement(std::string_view raw) {
    const std::size_t hash = raw.find('#');
    const std::string_view code = raw.substr(0, hash);
    Cursor c(code);
    if (c.at_end()) return;
    if (c.peek() == '(') return table_row(c);

    const std::size_t col = c.column();
    const std::string_view keyword = c.word();
    if (keyword.empty()) fail(col, std::string("unexpected character '") + c.peek() + "'");
    if (keyword == "description") return description(raw, c);
    if (keyword == "lattice") return lattice_decl(c);
    if (keyword == "coords") return coords_decl(c, col);
    if (keyword == "arity") return arity_decl(c, col);
    if (keyword == "mode") return mode_decl(c);
    if (numbered(keyword, 'f')) return term_def(c, keyword, col);
    fail(col, "unknown statement '" + std::string(keyword) + "'");
  }

  void expect_end(Cursor& c) {
    if (!c.at_end()) fail(c.column(), "unexpected trailing text '" + std::string(c.rest()) + "'");
  }

  void expect(Cursor& c, char ch) {
    if (!c.consume(ch)) fail(c.column(), std::string("expected '") + ch + "'");
  }

  std::uint64_t number(Cursor& c, const char* what) {
    c.skip_blank();
    const std::size_t col = c.column();
    const auto value = to_number(c.word());
    if (!value) fail(col, std::string("expected ") + what);
    return *value;
  }

  std::string identifier(Cursor& c, const char* what) {
    c.skip_blank();
    const std::size_t col = c.column();
    const std::string_view w = c.word();
    if (w.empty() || std::isalpha(static_cast<unsigned char>(w[0])) == 0) {
      fail(col, std::string("expected ") + what);
    }
    return std::string(w);
  }

  const LatticeDecl& lookup(std::string_view name, std::size_t col) const {
    for (const LatticeDecl& d : lattices_) {
      if (d.name == name) return d;
    }
    fail(col, "unknown lattice '" + std::string(name) + "'");
  }

  void description(std::string_view raw, Cursor& c) {
    c.skip_blank();
    const std::size_t offset = c.column() - 1;
    std::string_view text = raw.substr(std::min(offset, raw.size()));
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (description_) {
      *description_ += "\n";
      *description_ += text;
    } else {
      description_ = std::string(text);
    }
  }

  void lattice_decl(Cursor& c) {
    c.skip_blank();
    const std::size_t name_col = c.column();
    std::string name = identifier(c, "a lattice name");
    for (const LatticeDecl& d : lattices_) {
      if (d.name == name) {
        fail(name_col, "lattice '" + name + "' already declared at line " + std::to_string(d.line));
      }
    }
    expect(c, '=');
    c.skip_blank();
    const std::size_t kind_col = c.column();
    const std::string_view kind = c.word();
    std::optional<Lattice> lattice;
    try {
      if (kind == "chain" || kind == "powerset") {
        const std::uint64_t p = number(c, kind == "chain" ? "a chain length" : "a base set size");
        if (p > UINT32_MAX) fail(kind_col, "lattice parameter out of range");
        lattice = kind == "chain" ? Lattice::chain(static_cast<std::uint32_t>(p))
                                  : Lattice::powerset(static_cast<std::uint32_t>(p));
      } else if (kind == "product") {
        std::vector<Lattice> parts;
        while (!c.at_end()) {
          const std::size_t col = c.column();
          parts.push_back(lookup(identifier(c, "a lattice name"), col).lattice);
        }
        if (parts.empty()) fail(c.column(), "product needs at least one part");
        lattice = Lattice::product(std::move(parts));
      } else {
        fail(kind_col, "expected 'chain', 'powerset' or 'product'");
      }
    } catch (const ProblemError&) {
      throw;
    } catch (const Error& e) {
      fail(kind_col, e.what());
    }
    expect_end(c);
    lattices_.push_back({std::move(name), *lattice, line_no_});
  }

  void coords_decl(Cursor& c, std::size_t col) {
    if (coords_line_) {
      fail(col, "coords already declared at line " + std::to_string(coords_line_));
    }
    while (!c.at_end()) {
      const std::size_t name_col = c.column();
      const std::string name = identifier(c, "a lattice name");
      domain_.push_back(lookup(name, name_col).lattice);
      coordinate_names_.push_back(name);
    }
    if (domain_.empty()) fail(c.column(), "coords needs at least one lattice name");
    coords_line_ = line_no_;
    if (declared_arity_ && *declared_arity_ != domain_.size()) {
      fail(col, arity_message());
    }
  }

  void arity_decl(Cursor& c, std::size_t col) {
    if (declared_arity_) fail(col, "arity already declared");
    declared_arity_ = number(c, "an arity");
    expect_end(c);
    if (*declared_arity_ == 0) fail(col, "arity must be positive");
    if (coords_line_ && *declared_arity_ != domain_.size()) fail(col, arity_message());
  }

  std::string arity_message() const {
    return "arity mismatch: arity " + std::to_string(*declared_arity_) + " but " +
           std::to_string(domain_.size()) + " coordinates in coords";
  }

  void mode_decl(Cursor& c) {
    c.skip_blank();
    const std::size_t col = c.column();
    if (mode_line_) fail(col, "mode already declared at line " + std::to_string(mode_line_));
    const std::string_view m = c.word();
    if (m == "table") {
      mode_ = FunctionMode::kTable;
    } else if (m == "terms") {
      mode_ = FunctionMode::kTerms;
    } else {
      fail(col, "expected 'table' or 'terms'");
    }
    expect_end(c);
    mode_line_ = line_no_;
    mode_column_ = col;
  }

  // Called on the first function line; fixes the domain and mode.
  void ready(FunctionMode wanted, std::size_t col) {
    if (!coords_line_) fail(col, "coords must be declared before the function");
    if (!mode_line_) fail(col, "mode must be declared before the function");
    if (mode_ != wanted) {
      fail(col, wanted == FunctionMode::kTable ? "table row in terms mode"
                                               : "term definition in table mode");
    }
    if (started_) return;
    started_ = true;
    if (mode_ == FunctionMode::kTable) {
      product_ = Lattice::product(domain_);
      if (product_->carrier_size() > kMaxTableCarrier) {
        fail(col, "product carrier " + product_->name() + " is too large for table mode");
      }
      rows_.assign(product_->carrier_size() * domain_.size(), 0);
      row_lines_.assign(product_->carrier_size(), 0);
    } else {
      for (std::size_t j = 1; j < domain_.size(); ++j) {
        if (domain_[j] != domain_[0]) {
          fail_at(mode_line_, mode_column_,
                  "terms mode requires every coordinate to use the same lattice, but x1 is " +
                      domain_[0].name() + " and x" + std::to_string(j + 1) + " is " +
                      domain_[j].name());
        }
      }
      terms_.assign(domain_.size(), std::nullopt);
      term_lines_.assign(domain_.size(), 0);
    }
  }

  Index element(Cursor& c, const Lattice& l) {
    std::size_t consumed = 0;
    const auto value = l.parse_prefix(c.rest(), consumed);
    if (!value) fail(c.column() + consumed, "expected an element of " + l.name());
    c.advance(consumed);
    return *value;
  }

  std::vector<Index> tuple(Cursor& c) {
    const std::size_t n = domain_.size();
    const std::size_t open = c.column();
    expect(c, '(');
    std::vector<Index> out;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) {
        if (c.peek() == ')') {
          fail(c.column(), "arity mismatch: tuple has " + std::to_string(j) +
                               " components but there are " + std::to_string(n) +
                               " coordinates");
        }
        expect(c, ',');
      }
      out.push_back(element(c, domain_[j]));
    }
    if (c.peek() == ',') {
      fail(open, "arity mismatch: tuple has more than " + std::to_string(n) + " components");
    }
    expect(c, ')');
    return out;
  }

  void table_row(Cursor& c) {
    ready(FunctionMode::kTable, c.column());
    const std::vector<Index> in = tuple(c);
    if (!c.consume("->")) fail(c.column(), "expected '->'");
    const std::vector<Index> out = tuple(c);
    expect_end(c);

    const Index x = product_->compose(in);
    if (row_lines_[x] != 0) {
      fail(1, "duplicate row for " + product_->format(x) + ", first given at line " +
                  std::to_string(row_lines_[x]));
    }
    row_lines_[x] = line_no_;
    std::copy(out.begin(), out.end(), rows_.begin() + static_cast<std::ptrdiff_t>(x * out.size()));
  }

  Term term(Cursor& c) {
    c.skip_blank();
    const std::size_t col = c.column();
    const std::string_view w = c.word();
    const Lattice& l = domain_[0];
    if (w.empty()) fail(col, "expected a term");
    if (const auto j = numbered(w, 'x')) {
      if (*j < 1 || *j > domain_.size()) {
        fail(col, "arity mismatch: " + std::string(w) + " in a system of " +
                      std::to_string(domain_.size()) + " coordinates");
      }
      return Term::var(static_cast<std::size_t>(*j - 1));
    }
    if (w == "const") {
      expect(c, '(');
      c.skip_blank();
      const Index v = element(c, l);
      expect(c, ')');
      return Term::constant(make_elem(l, v));
    }
    if (w == "join" || w == "meet") {
      const bool is_join = w == "join";
      expect(c, '(');
      Term acc = term(c);
      expect(c, ',');
      do {
        Term next = term(c);
        acc = is_join ? Term::join(std::move(acc), std::move(next))
                      : Term::meet(std::move(acc), std::move(next));
      } while (c.consume(','));
      expect(c, ')');
      return acc;
    }
    if (w == "mono") {
      expect(c, '(');
      const std::size_t table_col = c.column();
      expect(c, '[');
      std::vector<Index> table;
      if (c.peek() != ']') {
        do {
          c.skip_blank();
          table.push_back(element(c, l));
        } while (c.consume(','));
      }
      expect(c, ']');
      expect(c, ',');
      Term arg = term(c);
      expect(c, ')');
      try {
        return Term::mono(UnaryMap(l, std::move(table)), std::move(arg));
      } catch (const Error& e) {
        fail(table_col, e.what());
      }
    }
    fail(col, "unknown term '" + std::string(w) + "'");
  }

  void term_def(Cursor& c, std::string_view name, std::size_t col) {
    ready(FunctionMode::kTerms, col);
    const std::uint64_t i = *numbered(name, 'f');
    if (i < 1 || i > domain_.size()) {
      fail(col, "arity mismatch: " + std::string(name) + " defined in a system of " +
                    std::to_string(domain_.size()) + " coordinates");
    }
    if (term_lines_[i - 1] != 0) {
      fail(col, std::string(name) + " already defined at line " +
                    std::to_string(term_lines_[i - 1]));
    }
    expect(c, '=');
    Term t = term(c);
    expect_end(c);
    terms_[i - 1] = std::move(t);
    term_lines_[i - 1] = line_no_;
  }

  ProblemFile finish() {
    if (!coords_line_) fail_eof("missing coords declaration");
    if (!mode_line_) fail_eof("missing mode declaration");
    if (!started_) ready(mode_, 1);

    std::optional<VectorFn> f;
    if (mode_ == FunctionMode::kTable) {
      for (Index x = 0; x < row_lines_.size(); ++x) {
        if (row_lines_[x] == 0) {
          const auto missing = std::count(row_lines_.begin(), row_lines_.end(), std::size_t{0});
          fail_eof("incomplete table: no row for " + product_->format(x) + " (" +
                   std::to_string(missing) + " of " + std::to_string(row_lines_.size()) +
                   " rows missing)");
        }
      }
      f = VectorFn::table_unchecked(domain_, rows_);
      const MonotoneReport report = check_monotone(*f, product_->carrier_size());
      if (!report) {
        const auto& [x, y] = *report.witness;
        const Index yi = product_->compose(raw_indices(y));
        fail_at(row_lines_[yi], 1,
                "non-monotone table: " + format_point(x) + " <= " + format_point(y) +
                    " but f" + format_point(x) + " = " + format_point(f->apply(x)) +
                    " is not <= f" + format_point(y) + " = " + format_point(f->apply(y)));
      }
    } else {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!terms_[i]) fail_eof("missing definition of f" + std::to_string(i + 1));
        terms.push_back(*terms_[i]);
      }
      try {
        f = VectorFn::terms(domain_, std::move(terms));
      } catch (const Error& e) {
        fail_eof(e.what());
      }
    }

    return ProblemFile{
        .source = source_,
        .description = description_,
        .lattices = lattices_,
        .coordinate_lattices = coordinate_names_,
        .domain = domain_,
        .mode = mode_,
        .function = *f,
    };
  }

  static std::vector<Index> raw_indices(const Point& p) {
    std::vector<Index> out;
    for (const Elem& e : p) out.push_back(e.index);
    return out;
  }

  std::string source_;
  std::vector<std::string_view> lines_;
  std::size_t line_no_ = 0;

  std::optional<std::string> description_;
  std::vector<LatticeDecl> lattices_;
  std::vector<Lattice> domain_;
  std::vector<std::string> coordinate_names_;
  std::size_t coords_line_ = 0;
  std::optional<std::uint64_t> declared_arity_;
  FunctionMode mode_ = FunctionMode::kTable;
  std::size_t mode_line_ = 0;
  std::size_t mode_column_ = 0;
  bool started_ = false;

  std::optional<Lattice> product_;
  std::vector<Index> rows_;
  std::vector<std::size_t> row_lines_;
  std::vector<std::optional<Term>> terms_;
  std::vector<std::size_t> term_lines_;
};

}  // namespace

ProblemError::ProblemError(std::string source, std::size_t line, std::size_t column,
                           std::string message)
    : Error(position_prefix(source, line, column) + message),
      source_(std::move(source)),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

ProblemFile parse_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError(path.string(), 0, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str(), path.string());
}

ProblemFile parse_problem_text(std::string_view text, std::string source) {
  return Parser(text, std::move(source)).run();
}

}  // namespace mufix::cli
