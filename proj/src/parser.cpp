#include "mht/parser.hpp"

#include <cctype>
#include <vector>

namespace mht {

namespace {

enum class Tok : unsigned char {
  End,
  Newline,
  Semi,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Amp,
  Pipe,
  Tilde,
  Arrow,
  IffTok,
  Num,
  Ident,
  HashTrue,
  HashFalse,
  HashInitial,
  HashFinal,
  KwX,
  KwWX,
  KwY,
  KwWY,
  KwU,
  KwR,
  KwS,
  KwT,
  KwF,
  KwG,
  KwO,
  KwH,
};

struct Token {
  Tok type;
  std::string text;
  long long num = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\n') {
        out.push_back(make(Tok::Newline, 1));
        newline();
        continue;
      }
      switch (c) {
        case ';': out.push_back(take(Tok::Semi, 1)); continue;
        case '(': out.push_back(take(Tok::LParen, 1)); continue;
        case ')': out.push_back(take(Tok::RParen, 1)); continue;
        case '[': out.push_back(take(Tok::LBracket, 1)); continue;
        case ']': out.push_back(take(Tok::RBracket, 1)); continue;
        case '&': out.push_back(take(Tok::Amp, 1)); continue;
        case '|': out.push_back(take(Tok::Pipe, 1)); continue;
        case '~': out.push_back(take(Tok::Tilde, 1)); continue;
        default: break;
      }
      if (c == '-' && peek(1) == '>') {
        out.push_back(take(Tok::Arrow, 2));
        continue;
      }
      if (c == '<' && peek(1) == '-' && peek(2) == '>') {
        out.push_back(take(Tok::IffTok, 3));
        continue;
      }
      if (c == '#') {
        out.push_back(hash_constant());
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number());
        continue;
      }
      if (Tok kw; single_capital(c, kw)) {
        out.push_back(take(kw, 1));
        continue;
      }
      if (c == 'w' && (peek(1) == 'X' || peek(1) == 'Y')) {
        out.push_back(take(peek(1) == 'X' ? Tok::KwWX : Tok::KwWY, 2));
        continue;
      }
      if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(identifier());
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'",
                       here(1));
    }
    out.push_back(make(Tok::End, 0));
    return out;
  }

 private:
  static bool single_capital(char c, Tok& kw) {
    switch (c) {
      case 'X': kw = Tok::KwX; return true;
      case 'Y': kw = Tok::KwY; return true;
      case 'U': kw = Tok::KwU; return true;
      case 'R': kw = Tok::KwR; return true;
      case 'S': kw = Tok::KwS; return true;
      case 'T': kw = Tok::KwT; return true;
      case 'F': kw = Tok::KwF; return true;
      case 'G': kw = Tok::KwG; return true;
      case 'O': kw = Tok::KwO; return true;
      case 'H': kw = Tok::KwH; return true;
      default: return false;
    }
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    ++pos_;
    ++col_;
  }
  void newline() {
    ++pos_;
    ++line_;
    col_ = 1;
  }
  SourceSpan here(std::size_t len) const { return {line_, col_, len}; }
  Token make(Tok t, std::size_t len) const { return {t, "", 0, here(len)}; }
  Token take(Tok t, std::size_t len) {
    Token tok = make(t, len);
    tok.text = std::string(text_.substr(pos_, len));
    for (std::size_t i = 0; i < len; ++i) advance();
    return tok;
  }

  Token hash_constant() {
    std::size_t start = pos_ + 1, end = start;
    while (end < text_.size() &&
           std::islower(static_cast<unsigned char>(text_[end])))
      ++end;
    std::string word(text_.substr(start, end - start));
    Tok t;
    if (word == "true")
      t = Tok::HashTrue;
    else if (word == "false")
      t = Tok::HashFalse;
    else if (word == "initial")
      t = Tok::HashInitial;
    else if (word == "final")
      t = Tok::HashFinal;
    else
      throw ParseError("unknown constant '#" + word + "'",
                       here(end - pos_ == 1 ? 1 : end - pos_));
    return take(t, end - pos_);
  }

  Token number() {
    std::size_t end = pos_;
    while (end < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[end])))
      ++end;
    Token tok = take(Tok::Num, end - pos_);
    try {
      tok.num = std::stoll(tok.text);
    } catch (const std::out_of_range&) {
      throw ParseError("numeral out of range", tok.span);
    }
    return tok;
  }

  Token identifier() {
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::islower(static_cast<unsigned char>(text_[end])) ||
            std::isdigit(static_cast<unsigned char>(text_[end])) ||
            text_[end] == '_'))
      ++end;
    return take(Tok::Ident, end - pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, bool keep_newlines)
      : toks_(std::move(tokens)) {
    if (!keep_newlines) {
      std::vector<Token> filtered;
      for (auto& t : toks_)
        if (t.type != Tok::Newline) filtered.push_back(std::move(t));
      toks_ = std::move(filtered);
    }
  }

  Formula formula_all() {
    Formula f = formula();
    expect(Tok::End, "expected end of input");
    return f;
  }

  Theory theory() {
    Theory out;
    for (;;) {
      while (at(Tok::Semi) || at(Tok::Newline)) ++i_;
      if (at(Tok::End)) break;
      out.push_back(formula());
      if (!at(Tok::Semi) && !at(Tok::Newline) && !at(Tok::End))
        throw ParseError("expected ';' or newline after formula", cur().span);
    }
    return out;
  }

 private:
  Formula formula() { return iff_level(); }

  Formula iff_level() {
    Formula l = impl_level();
    if (at(Tok::IffTok)) {
      ++i_;
      Formula r = impl_level();
      if (at(Tok::IffTok))
        throw ParseError("'<->' is not associative; use parentheses",
                         cur().span);
      return iff(std::move(l), std::move(r));
    }
    return l;
  }

  Formula impl_level() {
    Formula l = disj_level();
    if (at(Tok::Arrow)) {
      ++i_;
      return implies(std::move(l), impl_level());
    }
    return l;
  }

  Formula disj_level() {
    Formula l = conj_level();
    while (at(Tok::Pipe)) {
      ++i_;
      l = disj(std::move(l), conj_level());
    }
    return l;
  }

  Formula conj_level() {
    Formula l = bin_level();
    while (at(Tok::Amp)) {
      ++i_;
      l = conj(std::move(l), bin_level());
    }
    return l;
  }

  struct ParsedBound {
    // Upper-bound form when lower is absent, interval form otherwise.
    std::optional<long long> lower;
    Bound upper = Bound::trace_length();
  };

  Formula bin_level() {
    Formula l = unary_level();
    MetricOp op;
    if (at(Tok::KwU))
      op = MetricOp::Until;
    else if (at(Tok::KwR))
      op = MetricOp::Release;
    else if (at(Tok::KwS))
      op = MetricOp::Since;
    else if (at(Tok::KwT))
      op = MetricOp::Trigger;
    else
      return l;
    ++i_;
    ParsedBound b = opt_bound();
    Formula r = bin_level();
    if (b.lower) return interval(op, *b.lower, b.upper, {l, r});
    switch (op) {
      case MetricOp::Until: return until(b.upper, std::move(l), std::move(r));
      case MetricOp::Release:
        return release(b.upper, std::move(l), std::move(r));
      case MetricOp::Since: return since(b.upper, std::move(l), std::move(r));
      default: return trigger(b.upper, std::move(l), std::move(r));
    }
  }

  Formula unary_level() {
    if (at(Tok::Tilde)) {
      ++i_;
      return neg(unary_level());
    }
    if (at(Tok::KwX)) {
      ++i_;
      return next(unary_level());
    }
    if (at(Tok::KwWX)) {
      ++i_;
      return wnext(unary_level());
    }
    if (at(Tok::KwY)) {
      ++i_;
      return prev(unary_level());
    }
    if (at(Tok::KwWY)) {
      ++i_;
      return wprev(unary_level());
    }
    MetricOp op;
    if (at(Tok::KwF))
      op = MetricOp::Eventually;
    else if (at(Tok::KwG))
      op = MetricOp::Always;
    else if (at(Tok::KwO))
      op = MetricOp::Once;
    else if (at(Tok::KwH))
      op = MetricOp::Historically;
    else
      return prim();
    ++i_;
    ParsedBound b = opt_bound();
    Formula arg = unary_level();
    if (b.lower) return interval(op, *b.lower, b.upper, {arg});
    switch (op) {
      case MetricOp::Eventually: return eventually(b.upper, std::move(arg));
      case MetricOp::Always: return always(b.upper, std::move(arg));
      case MetricOp::Once: return once(b.upper, std::move(arg));
      default: return historically(b.upper, std::move(arg));
    }
  }

  Formula prim() {
    if (at(Tok::HashTrue)) {
      ++i_;
      return verum();
    }
    if (at(Tok::HashFalse)) {
      ++i_;
      return falsum();
    }
    if (at(Tok::HashInitial)) {
      ++i_;
      return initial_state();
    }
    if (at(Tok::HashFinal)) {
      ++i_;
      return final_state();
    }
    if (at(Tok::Ident)) {
      Formula f = atom(cur().text);
      ++i_;
      return f;
    }
    if (at(Tok::LParen)) {
      ++i_;
      Formula f = formula();
      expect(Tok::RParen, "expected ')'");
      ++i_;
      return f;
    }
    throw ParseError("expected a formula", cur().span);
  }

  // bound := "[" NUM "]" | "[" "l" "]" | "[" NUM ";" (NUM|"l") ")"
  ParsedBound opt_bound() {
    ParsedBound b;
    if (!at(Tok::LBracket)) return b;  // bare operator: trace-length bound
    ++i_;
    if (at(Tok::Ident) && cur().text == "l") {
      ++i_;
      expect(Tok::RBracket, "expected ']'");
      ++i_;
      b.upper = Bound::trace_length();
      return b;
    }
    if (!at(Tok::Num)) throw ParseError("expected a bound", cur().span);
    long long first = cur().num;
    ++i_;
    if (at(Tok::RBracket)) {
      ++i_;
      b.upper = Bound::numeral(first);
      return b;
    }
    expect(Tok::Semi, "expected ']' or ';'");
    ++i_;
    b.lower = first;
    if (at(Tok::Ident) && cur().text == "l") {
      ++i_;
      b.upper = Bound::trace_length();
    } else if (at(Tok::Num)) {
      b.upper = Bound::numeral(cur().num);
      ++i_;
    } else {
      throw ParseError("expected interval upper bound", cur().span);
    }
    expect(Tok::RParen, "expected ')' closing the interval");
    ++i_;
    return b;
  }

  bool at(Tok t) const { return toks_[i_].type == t; }
  const Token& cur() const { return toks_[i_]; }
  void expect(Tok t, const char* msg) const {
    if (!at(t)) throw ParseError(msg, cur().span);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  return Parser(Lexer(text).run(), /*keep_newlines=*/false).formula_all();
}

Theory parse_theory(std::string_view text) {
  return Parser(Lexer(text).run(), /*keep_newlines=*/true).theory();
}

namespace {

// Re-sugaring patterns, detected structurally so printing stays canonical.
bool is_iff_shape(const Formula& f) {
  if (f.kind() != Connective::And) return false;
  const Formula l = f.lhs(), r = f.rhs();
  if (l.kind() != Connective::Implies || r.kind() != Connective::Implies)
    return false;
  return l.lhs() == r.rhs() && l.rhs() == r.lhs();
}

bool is_final_shape(const Formula& f) {
  return f.kind() == Connective::Implies &&
         f.rhs().kind() == Connective::Falsum &&
         f.lhs().kind() == Connective::Next &&
         f.lhs().child().kind() == Connective::Verum;
}

bool is_initial_shape(const Formula& f) {
  return f.kind() == Connective::Implies &&
         f.rhs().kind() == Connective::Falsum &&
         f.lhs().kind() == Connective::Prev &&
         f.lhs().child().kind() == Connective::Verum;
}

// Precedence tiers, loosest first:
// -1 <->, 0 ->, 1 |, 2 &, 3 U/R/S/T, 4 unary, 5 atoms.
int tier(const Formula& f) {
  switch (f.kind()) {
    case Connective::Falsum:
    case Connective::Verum:
    case Connective::Atom:
      return 5;
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      return 4;
    case Connective::Implies:
      if (is_initial_shape(f) || is_final_shape(f)) return 5;
      return f.rhs().kind() == Connective::Falsum ? 4 : 0;  // "~" sugar
    case Connective::Until:
      return f.lhs().kind() == Connective::Verum ? 4 : 3;  // "F" sugar
    case Connective::Release:
      return f.lhs().kind() == Connective::Falsum ? 4 : 3;  // "G" sugar
    case Connective::Since:
      return f.lhs().kind() == Connective::Verum ? 4 : 3;  // "O" sugar
    case Connective::Trigger:
      return f.lhs().kind() == Connective::Falsum ? 4 : 3;  // "H" sugar
    case Connective::And:
      return is_iff_shape(f) ? -1 : 2;
    case Connective::Or:
      return 1;
  }
  return 5;
}

std::string bound_suffix(const Bound& b) {
  if (b.is_trace_length()) return "";
  return "[" + std::to_string(b.value()) + "]";
}

void print(const Formula& f, int min_tier, std::string& out) {
  const bool parens = tier(f) < min_tier;
  if (parens) out += '(';
  switch (f.kind()) {
    case Connective::Falsum: out += "#false"; break;
    case Connective::Verum: out += "#true"; break;
    case Connective::Atom: out += f.name(); break;
    case Connective::Next:
      out += "X ";
      print(f.child(), 4, out);
      break;
    case Connective::WeakNext:
      out += "wX ";
      print(f.child(), 4, out);
      break;
    case Connective::Prev:
      out += "Y ";
      print(f.child(), 4, out);
      break;
    case Connective::WeakPrev:
      out += "wY ";
      print(f.child(), 4, out);
      break;
    case Connective::And:
      if (is_iff_shape(f)) {
        print(f.lhs().lhs(), 0, out);
        out += " <-> ";
        print(f.lhs().rhs(), 0, out);
        break;
      }
      print(f.lhs(), 2, out);
      out += " & ";
      print(f.rhs(), 3, out);
      break;
    case Connective::Or:
      print(f.lhs(), 1, out);
      out += " | ";
      print(f.rhs(), 2, out);
      break;
    case Connective::Implies:
      if (is_initial_shape(f)) {
        out += "#initial";
      } else if (is_final_shape(f)) {
        out += "#final";
      } else if (f.rhs().kind() == Connective::Falsum) {
        out += '~';
        print(f.lhs(), 4, out);
      } else {
        print(f.lhs(), 1, out);
        out += " -> ";
        print(f.rhs(), 0, out);
      }
      break;
    case Connective::Until:
    case Connective::Release:
    case Connective::Since:
    case Connective::Trigger: {
      const Connective k = f.kind();
      const bool sugar =
          (k == Connective::Until || k == Connective::Since)
              ? f.lhs().kind() == Connective::Verum
              : f.lhs().kind() == Connective::Falsum;
      const char* mnemonic;
      if (sugar)
        mnemonic = k == Connective::Until     ? "F"
                   : k == Connective::Release ? "G"
                   : k == Connective::Since   ? "O"
                                              : "H";
      else
        mnemonic = k == Connective::Until     ? "U"
                   : k == Connective::Release ? "R"
                   : k == Connective::Since   ? "S"
                                              : "T";
      if (sugar) {
        out += mnemonic;
        out += bound_suffix(f.bound());
        out += ' ';
        print(f.rhs(), 4, out);
      } else {
        print(f.lhs(), 4, out);
        out += ' ';
        out += mnemonic;
        out += bound_suffix(f.bound());
        out += ' ';
        print(f.rhs(), 3, out);
      }
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, -1, out);
  return out;
}

std::string print_theory(const Theory& t) {
  std::string out;
  for (const auto& f : t) {
    out += print_formula(f);
    out += '\n';
  }
  return out;
}

}  // namespace mht
