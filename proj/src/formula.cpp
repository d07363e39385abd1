#include "plogic/formula.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cctype>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plogic/errors.hpp"

namespace plogic {

ProbIndex::ProbIndex(Rat value) : value_(std::move(value)) {
  if (!is_probability(value_))
    throw std::invalid_argument("probability index " + rat_short_string(value_) +
                                " outside [0,1]");
}

struct Formula::Node {
  Kind kind;
  int letter = 0;
  int agent = 0;
  Rat index;
  std::shared_ptr<const Node> lhs, rhs;
};

Formula Formula::letter(int id) {
  if (id < 1) throw std::invalid_argument("letter ids are positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Letter;
  n->letter = id;
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  if (f.empty()) throw std::invalid_argument("empty operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs = f.node_;
  return Formula(std::move(n));
}

static void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

#define PLOGIC_BINARY(NAME, KIND)                              \
  Formula Formula::NAME(Formula l, Formula r) {                \
    require(!l.empty() && !r.empty(), "empty operand");        \
    auto n = std::make_shared<Node>();                         \
    n->kind = KIND;                                            \
    n->lhs = l.node_;                                          \
    n->rhs = r.node_;                                          \
    return Formula(std::move(n));                              \
  }

PLOGIC_BINARY(conj, Kind::And)
PLOGIC_BINARY(disj, Kind::Or)
PLOGIC_BINARY(impl, Kind::Implies)
PLOGIC_BINARY(iff, Kind::Iff)
#undef PLOGIC_BINARY

Formula Formula::at_least(int agent, ProbIndex r, Formula f) {
  require(agent >= 1, "agent ids are positive");
  require(!f.empty(), "empty operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::AtLeast;
  n->agent = agent;
  n->index = r.value();
  n->lhs = f.node_;
  return Formula(std::move(n));
}

Formula Formula::at_most(int agent, ProbIndex r, Formula f) {
  require(agent >= 1, "agent ids are positive");
  require(!f.empty(), "empty operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::AtMost;
  n->agent = agent;
  n->index = r.value();
  n->lhs = f.node_;
  return Formula(std::move(n));
}

Formula Formula::knows(int agent, Formula f) {
  require(agent >= 1, "agent ids are positive");
  require(!f.empty(), "empty operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Knows;
  n->agent = agent;
  n->lhs = f.node_;
  return Formula(std::move(n));
}

Kind Formula::kind() const {
  require(!empty(), "empty formula");
  return node_->kind;
}
int Formula::letter_id() const { return node_->letter; }
int Formula::agent() const { return node_->agent; }
const Rat& Formula::index() const { return node_->index; }
Formula Formula::lhs() const { return Formula(node_->lhs); }
Formula Formula::rhs() const { return Formula(node_->rhs); }

bool Formula::is_binary() const {
  Kind k = kind();
  return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind || a.letter != b.letter || a.agent != b.agent ||
      a.index != b.index)
    return false;
  return Formula(a.lhs) == Formula(b.lhs) &&
         (a.rhs == nullptr) == (b.rhs == nullptr) &&
         (a.rhs == nullptr || Formula(a.rhs) == Formula(b.rhs));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Letter, Not, And, Or, Arrow, DArrow, LParen, RParen, L, M, K, End };

struct Token {
  Tok kind;
  int line = 1, col = 1;
  int letter = 0;
  int agent = 1;
  Rat index;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      Token t;
      t.line = line_;
      t.col = col_;
      if (eof()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = peek();
      if (c == 'p') {
        get();
        t.kind = Tok::Letter;
        t.letter = isdigit(peek()) ? read_int("letter id") : 1;
        if (t.letter < 1) fail("letter ids are positive", t);
      } else if (c == 'L' || c == 'M') {
        get();
        t.kind = c == 'L' ? Tok::L : Tok::M;
        t.agent = read_agent();
        if (peek() != '[') fail("expected '[' after modality", t);
        get();
        t.index = read_rational(t);
        if (peek() != ']') fail("expected ']'", t);
        get();
      } else if (c == 'K') {
        get();
        t.kind = Tok::K;
        t.agent = read_agent();
      } else if (c == '~') {
        get();
        t.kind = Tok::Not;
      } else if (c == '&') {
        get();
        t.kind = Tok::And;
      } else if (c == '|') {
        get();
        t.kind = Tok::Or;
      } else if (c == '(') {
        get();
        t.kind = Tok::LParen;
      } else if (c == ')') {
        get();
        t.kind = Tok::RParen;
      } else if (c == '-') {
        get();
        if (peek() != '>') fail("expected '->'", t);
        get();
        t.kind = Tok::Arrow;
      } else if (c == '<') {
        get();
        if (peek() != '-') fail("expected '<->'", t);
        get();
        if (peek() != '>') fail("expected '<->'", t);
        get();
        t.kind = Tok::DArrow;
      } else {
        fail(std::string("unexpected character '") + c + "'", t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }
  void skip_ws() {
    while (!eof() && isspace((unsigned char)peek())) get();
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw ParseError(msg, t.line, t.col);
  }
  int read_int(const char* what) {
    if (!isdigit(peek()))
      throw ParseError(std::string("expected ") + what, line_, col_);
    long v = 0;
    while (isdigit(peek())) {
      v = v * 10 + (get() - '0');
      if (v > 1000000) throw ParseError("number too large", line_, col_);
    }
    return (int)v;
  }
  int read_agent() {
    if (peek() != '_') return 1;
    get();
    int a = read_int("agent id");
    if (a < 1) throw ParseError("agent ids are positive", line_, col_);
    return a;
  }
  Rat read_rational(const Token& t) {
    int num = read_int("index numerator");
    int den = 1;
    if (peek() == '/') {
      get();
      den = read_int("index denominator");
      if (den == 0) fail("zero denominator", t);
    }
    Rat r(num, den);
    if (!is_probability(r))
      throw ParseError("index " + rat_short_string(r) + " out of range [0,1]",
                       t.line, t.col);
    return r;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_iff();
    expect(Tok::End, "unexpected trailing input");
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { pos_++; }
  void expect(Tok k, const char* msg) {
    if (cur().kind != k) throw ParseError(msg, cur().line, cur().col);
  }

  Formula parse_iff() {
    Formula l = parse_implies();
    if (cur().kind == Tok::DArrow) {
      advance();
      return Formula::iff(std::move(l), parse_iff());
    }
    return l;
  }
  Formula parse_implies() {
    Formula l = parse_or();
    if (cur().kind == Tok::Arrow) {
      advance();
      return Formula::impl(std::move(l), parse_implies());
    }
    return l;
  }
  Formula parse_or() {
    Formula l = parse_and();
    while (cur().kind == Tok::Or) {
      advance();
      l = Formula::disj(std::move(l), parse_and());
    }
    return l;
  }
  Formula parse_and() {
    Formula l = parse_unary();
    while (cur().kind == Tok::And) {
      advance();
      l = Formula::conj(std::move(l), parse_unary());
    }
    return l;
  }
  Formula parse_unary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Not:
        advance();
        return Formula::neg(parse_unary());
      case Tok::L: {
        int agent = t.agent;
        Rat r = t.index;
        advance();
        return Formula::at_least(agent, ProbIndex(r), parse_unary());
      }
      case Tok::M: {
        int agent = t.agent;
        Rat r = t.index;
        advance();
        return Formula::at_most(agent, ProbIndex(r), parse_unary());
      }
      case Tok::K: {
        int agent = t.agent;
        advance();
        return Formula::knows(agent, parse_unary());
      }
      case Tok::Letter: {
        int id = t.letter;
        advance();
        return Formula::letter(id);
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        expect(Tok::RParen, "expected ')'");
        advance();
        return f;
      }
      default:
        throw ParseError("expected a formula", t.line, t.col);
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text) { return Parser(Lexer(text).run()).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence for rendering; unary operators bind tightest.
int precedence(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;
  }
}

std::string agent_suffix(int agent) {
  return agent == 1 ? "" : "_" + std::to_string(agent);
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::Letter:
      out += 'p';
      out += std::to_string(f.letter_id());
      break;
    case Kind::Not:
      out += '~';
      render_into(f.lhs(), 5, out);
      break;
    case Kind::AtLeast:
    case Kind::AtMost:
      out += f.kind() == Kind::AtLeast ? 'L' : 'M';
      out += agent_suffix(f.agent());
      out += '[';
      out += rat_short_string(f.index());
      out += "] ";
      render_into(f.lhs(), 5, out);
      break;
    case Kind::Knows:
      out += 'K';
      out += agent_suffix(f.agent());
      out += ' ';
      render_into(f.lhs(), 5, out);
      break;
    case Kind::And:
    case Kind::Or: {
      // left-associative: right child needs strictly higher precedence
      render_into(f.lhs(), prec, out);
      out += f.kind() == Kind::And ? " & " : " | ";
      render_into(f.rhs(), prec + 1, out);
      break;
    }
    case Kind::Implies:
    case Kind::Iff: {
      // right-associative
      render_into(f.lhs(), prec + 1, out);
      out += f.kind() == Kind::Implies ? " -> " : " <-> ";
      render_into(f.rhs(), prec, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Measures and transforms

int depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter:
      return 0;
    case Kind::Not:
      return depth(f.lhs());
    case Kind::AtLeast:
    case Kind::AtMost:
    case Kind::Knows:
      return depth(f.lhs()) + 1;
    default:
      return std::max(depth(f.lhs()), depth(f.rhs()));
  }
}

static void accuracy_walk(const Formula& f, Int& acc) {
  switch (f.kind()) {
    case Kind::Letter:
      return;
    case Kind::AtLeast:
    case Kind::AtMost:
      acc = boost::integer::lcm(acc, denominator(f.index()));
      accuracy_walk(f.lhs(), acc);
      return;
    case Kind::Not:
    case Kind::Knows:
      accuracy_walk(f.lhs(), acc);
      return;
    default:
      accuracy_walk(f.lhs(), acc);
      accuracy_walk(f.rhs(), acc);
      return;
  }
}

Int accuracy(const Formula& f) {
  Int acc = 1;
  accuracy_walk(f, acc);
  return acc;
}

Formula desugar_m(const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter:
      return f;
    case Kind::Not:
      return Formula::neg(desugar_m(f.lhs()));
    case Kind::AtLeast:
      return Formula::at_least(f.agent(), ProbIndex(f.index()), desugar_m(f.lhs()));
    case Kind::AtMost:
      return Formula::at_least(f.agent(), ProbIndex(Rat(1) - f.index()),
                               Formula::neg(desugar_m(f.lhs())));
    case Kind::Knows:
      return Formula::knows(f.agent(), desugar_m(f.lhs()));
    case Kind::And:
      return Formula::conj(desugar_m(f.lhs()), desugar_m(f.rhs()));
    case Kind::Or:
      return Formula::disj(desugar_m(f.lhs()), desugar_m(f.rhs()));
    case Kind::Implies:
      return Formula::impl(desugar_m(f.lhs()), desugar_m(f.rhs()));
    case Kind::Iff:
      return Formula::iff(desugar_m(f.lhs()), desugar_m(f.rhs()));
  }
  throw std::logic_error("unreachable");
}

Formula core(const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter:
      return f;
    case Kind::Not:
      return Formula::neg(core(f.lhs()));
    case Kind::And:
      return Formula::conj(core(f.lhs()), core(f.rhs()));
    case Kind::AtLeast:
      return Formula::at_least(f.agent(), ProbIndex(f.index()), core(f.lhs()));
    case Kind::AtMost:
      return Formula::at_least(f.agent(), ProbIndex(Rat(1) - f.index()),
                               Formula::neg(core(f.lhs())));
    case Kind::Knows:
      return Formula::knows(f.agent(), core(f.lhs()));
    case Kind::Or: {
      // a | b  ==>  ~(~a & ~b)
      return Formula::neg(Formula::conj(Formula::neg(core(f.lhs())),
                                        Formula::neg(core(f.rhs()))));
    }
    case Kind::Implies:
      // a -> b  ==>  ~(a & ~b)
      return Formula::neg(Formula::conj(core(f.lhs()), Formula::neg(core(f.rhs()))));
    case Kind::Iff: {
      // a <-> b  ==>  ~(a & ~b) & ~(b & ~a)
      Formula a = core(f.lhs());
      Formula b = core(f.rhs());
      return Formula::conj(Formula::neg(Formula::conj(a, Formula::neg(b))),
                           Formula::neg(Formula::conj(b, Formula::neg(a))));
    }
  }
  throw std::logic_error("unreachable");
}

static void letters_walk(const Formula& f, std::set<int>& out) {
  if (f.kind() == Kind::Letter) {
    out.insert(f.letter_id());
    return;
  }
  letters_walk(f.lhs(), out);
  if (f.is_binary()) letters_walk(f.rhs(), out);
}

std::set<int> letters(const Formula& f) {
  std::set<int> out;
  letters_walk(f, out);
  return out;
}

static void agents_walk(const Formula& f, std::set<int>& out) {
  switch (f.kind()) {
    case Kind::Letter:
      return;
    case Kind::AtLeast:
    case Kind::AtMost:
    case Kind::Knows:
      out.insert(f.agent());
      agents_walk(f.lhs(), out);
      return;
    default:
      agents_walk(f.lhs(), out);
      if (f.is_binary()) agents_walk(f.rhs(), out);
      return;
  }
}

std::set<int> agents(const Formula& f) {
  std::set<int> out;
  agents_walk(f, out);
  return out;
}

bool LocalLanguage::contains(const Formula& f) const {
  if (depth(f) > max_depth) return false;
  Int acc = accuracy(f);
  if (acc > q || Int(q) % acc != 0) return false;
  for (int id : plogic::letters(f))
    if (!letters.count(id)) return false;
  return true;
}

}  // namespace plogic
