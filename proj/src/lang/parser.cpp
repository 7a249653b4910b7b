#include "mol/lang/parser.hpp"

#include <cctype>
#include <set>

namespace mol::lang {

namespace {

enum class Tok { Ident, Keyword, Int, Str, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
  std::uint64_t int_value = 0;
};

const std::set<std::string> kKeywords = {
    "class", "extends", "field", "method", "void", "int",  "bool",
    "string", "main",   "var",   "if",     "else", "while", "return",
    "print", "true",    "false", "null",   "new",  "input", "this"};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "end of input", {pos_, pos_}});
        return out;
      }
      out.push_back(next());
    }
  }

private:
  const std::string &src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::size_t at, const std::string &msg) {
    throw CompileError({{{at, at + 1}, position_of(src_, at), msg}});
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          ++pos_;
      } else {
        break;
      }
    }
  }

  Token next() {
    std::size_t start = pos_;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string word = src_.substr(start, pos_ - start);
      Tok kind = kKeywords.count(word) ? Tok::Keyword : Tok::Ident;
      return {kind, word, {start, pos_}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        std::uint64_t d = static_cast<std::uint64_t>(src_[pos_] - '0');
        if (v > (UINT64_MAX - d) / 10)
          fail(start, "integer literal out of range");
        v = v * 10 + d;
        ++pos_;
      }
      // Magnitude up to 2^63 is accepted so that the minimum value can be negated.
      if (v > static_cast<std::uint64_t>(INT64_MAX) + 1)
        fail(start, "integer literal out of range");
      Token t{Tok::Int, src_.substr(start, pos_ - start), {start, pos_}};
      t.int_value = v;
      return t;
    }
    if (c == '"') {
      ++pos_;
      std::string value;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char ch = src_[pos_++];
        if (ch == '\n')
          fail(start, "unterminated string literal");
        if (ch == '\\') {
          if (pos_ >= src_.size())
            break;
          char esc = src_[pos_++];
          switch (esc) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default: fail(pos_ - 2, "unknown escape sequence");
          }
        } else {
          value += ch;
        }
      }
      if (pos_ >= src_.size())
        fail(start, "unterminated string literal");
      ++pos_;
      return {Tok::Str, value, {start, pos_}};
    }
    static const char *two[] = {"==", "!=", "<=", ">=", "&&", "||"};
    for (const char *op : two) {
      if (src_.compare(pos_, 2, op) == 0) {
        pos_ += 2;
        return {Tok::Punct, op, {start, pos_}};
      }
    }
    if (std::string("{}();,.=+-*/%<>!").find(c) != std::string::npos) {
      ++pos_;
      return {Tok::Punct, std::string(1, c), {start, pos_}};
    }
    fail(start, std::string("unexpected character '") + c + "'");
  }
};

class Parser {
public:
  Parser(const std::string &src, std::vector<Token> toks) : src_(src), toks_(std::move(toks)) {}

  Ast program() {
    Ast ast;
    while (is_kw("class"))
      ast.classes.push_back(class_decl());
    std::size_t start = peek().span.begin;
    expect_kw("main", {"'class'", "'main'"});
    ast.main_body_span.begin = peek().span.begin;
    ast.main_block = block();
    ast.main_body_span.end = prev_end_;
    ast.main_span = {start, prev_end_};
    if (peek().kind != Tok::End)
      error_expected({"end of input"});
    return ast;
  }

private:
  const std::string &src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::size_t prev_end_ = 0;

  const Token &peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  const Token &advance() {
    const Token &t = toks_[i_];
    prev_end_ = t.span.end;
    if (i_ + 1 < toks_.size())
      ++i_;
    return t;
  }
  bool is_kw(const char *kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }
  bool is_punct(const char *p) const {
    return peek().kind == Tok::Punct && peek().text == p;
  }

  [[noreturn]] void error_expected(const std::vector<std::string> &expected) {
    const Token &t = peek();
    std::string msg = "syntax error at '" + t.text + "': expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (k)
        msg += k + 1 == expected.size() ? " or " : ", ";
      msg += expected[k];
    }
    throw CompileError({{t.span, position_of(src_, t.span.begin), msg}});
  }

  void expect_punct(const char *p) {
    if (!is_punct(p))
      error_expected({std::string("'") + p + "'"});
    advance();
  }
  void expect_kw(const char *kw, std::vector<std::string> expected = {}) {
    if (!is_kw(kw)) {
      if (expected.empty())
        expected.push_back(std::string("'") + kw + "'");
      error_expected(expected);
    }
    advance();
  }
  std::pair<std::string, Span> ident() {
    if (peek().kind != Tok::Ident)
      error_expected({"identifier"});
    const Token &t = advance();
    return {t.text, t.span};
  }

  Type type(bool allow_void) {
    const Token &t = peek();
    if (t.kind == Tok::Keyword) {
      if (t.text == "int") { advance(); return Type::Int(); }
      if (t.text == "bool") { advance(); return Type::Bool(); }
      if (t.text == "string") { advance(); return Type::String(); }
      if (allow_void && t.text == "void") { advance(); return Type::Void(); }
    }
    if (t.kind == Tok::Ident) {
      advance();
      return Type::Class(t.text);
    }
    error_expected({"type"});
  }

  ClassDecl class_decl() {
    ClassDecl c;
    std::size_t start = peek().span.begin;
    advance(); // class
    c.name = ident().first;
    if (is_kw("extends")) {
      advance();
      c.super = ident().first;
    }
    expect_punct("{");
    for (;;) {
      if (is_kw("field")) {
        std::size_t fs = peek().span.begin;
        advance();
        FieldDecl f;
        f.type = type(false);
        f.name = ident().first;
        expect_punct(";");
        f.span = {fs, prev_end_};
        c.fields.push_back(std::move(f));
      } else if (is_kw("method")) {
        c.methods.push_back(method_decl());
      } else if (is_punct("}")) {
        advance();
        break;
      } else {
        error_expected({"'field'", "'method'", "'}'"});
      }
    }
    c.span = {start, prev_end_};
    return c;
  }

  MethodDecl method_decl() {
    MethodDecl m;
    std::size_t start = peek().span.begin;
    advance(); // method
    m.ret = type(true);
    m.name = ident().first;
    expect_punct("(");
    if (!is_punct(")")) {
      for (;;) {
        Param p;
        std::size_t ps = peek().span.begin;
        p.type = type(false);
        p.name = ident().first;
        p.span = {ps, prev_end_};
        m.params.push_back(std::move(p));
        if (!is_punct(","))
          break;
        advance();
      }
    }
    expect_punct(")");
    m.body_span.begin = peek().span.begin;
    m.body = block();
    m.body_span.end = prev_end_;
    m.span = {start, prev_end_};
    return m;
  }

  Block block() {
    expect_punct("{");
    Block b;
    while (!is_punct("}")) {
      if (peek().kind == Tok::End)
        error_expected({"statement", "'}'"});
      b.push_back(statement());
    }
    advance();
    return b;
  }

  StmtPtr make(Stmt::Kind k, std::size_t start) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->span.begin = start;
    return s;
  }

  StmtPtr statement() {
    std::size_t start = peek().span.begin;
    if (is_kw("var")) {
      advance();
      auto s = make(Stmt::Kind::VarDecl, start);
      s->decl_type = type(false);
      s->name = ident().first;
      if (is_punct("=")) {
        advance();
        s->value = expr();
      }
      expect_punct(";");
      s->span.end = prev_end_;
      return s;
    }
    if (is_kw("if"))
      return if_stmt();
    if (is_kw("while")) {
      advance();
      auto s = make(Stmt::Kind::While, start);
      expect_punct("(");
      s->value = expr();
      expect_punct(")");
      s->then_body = block();
      s->span.end = prev_end_;
      return s;
    }
    if (is_kw("return")) {
      advance();
      auto s = make(Stmt::Kind::Return, start);
      if (!is_punct(";"))
        s->value = expr();
      expect_punct(";");
      s->span.end = prev_end_;
      return s;
    }
    if (is_kw("print")) {
      advance();
      auto s = make(Stmt::Kind::Print, start);
      expect_punct("(");
      s->value = expr();
      expect_punct(")");
      expect_punct(";");
      s->span.end = prev_end_;
      return s;
    }
    auto lhs = expr();
    if (is_punct("=")) {
      advance();
      StmtPtr s;
      if (lhs->kind == Expr::Kind::Var) {
        s = make(Stmt::Kind::Assign, start);
        s->name = lhs->text;
      } else if (lhs->kind == Expr::Kind::Field) {
        s = make(Stmt::Kind::FieldAssign, start);
        s->name = lhs->text;
        s->target = std::move(lhs->children[0]);
      } else {
        throw CompileError({{lhs->span, position_of(src_, lhs->span.begin),
                             "invalid assignment target"}});
      }
      s->value = expr();
      expect_punct(";");
      s->span.end = prev_end_;
      return s;
    }
    if (lhs->kind != Expr::Kind::Call)
      error_expected({"'='"});
    auto s = make(Stmt::Kind::ExprStmt, start);
    s->value = std::move(lhs);
    expect_punct(";");
    s->span.end = prev_end_;
    return s;
  }

  StmtPtr if_stmt() {
    std::size_t start = peek().span.begin;
    advance(); // if
    auto s = make(Stmt::Kind::If, start);
    expect_punct("(");
    s->value = expr();
    expect_punct(")");
    s->then_body = block();
    if (is_kw("else")) {
      s->else_span = peek().span;
      advance();
      s->has_else = true;
      if (is_kw("if"))
        s->else_body.push_back(if_stmt());
      else
        s->else_body = block();
    }
    s->span.end = prev_end_;
    return s;
  }

  ExprPtr node(Expr::Kind k, Span span) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->span = span;
    return e;
  }

  ExprPtr binary(ExprPtr l, BinOp op, ExprPtr r) {
    auto e = node(Expr::Kind::Binary, {l->span.begin, r->span.end});
    e->op = op;
    e->children.push_back(std::move(l));
    e->children.push_back(std::move(r));
    return e;
  }

  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    auto l = and_expr();
    while (is_punct("||")) {
      advance();
      l = binary(std::move(l), BinOp::Or, and_expr());
    }
    return l;
  }
  ExprPtr and_expr() {
    auto l = eq_expr();
    while (is_punct("&&")) {
      advance();
      l = binary(std::move(l), BinOp::And, eq_expr());
    }
    return l;
  }
  ExprPtr eq_expr() {
    auto l = rel_expr();
    while (is_punct("==") || is_punct("!=")) {
      BinOp op = advance().text == "==" ? BinOp::Eq : BinOp::Ne;
      l = binary(std::move(l), op, rel_expr());
    }
    return l;
  }
  ExprPtr rel_expr() {
    auto l = add_expr();
    while (is_punct("<") || is_punct("<=") || is_punct(">") || is_punct(">=")) {
      std::string t = advance().text;
      BinOp op = t == "<" ? BinOp::Lt : t == "<=" ? BinOp::Le : t == ">" ? BinOp::Gt : BinOp::Ge;
      l = binary(std::move(l), op, add_expr());
    }
    return l;
  }
  ExprPtr add_expr() {
    auto l = mul_expr();
    while (is_punct("+") || is_punct("-")) {
      BinOp op = advance().text == "+" ? BinOp::Add : BinOp::Sub;
      l = binary(std::move(l), op, mul_expr());
    }
    return l;
  }
  ExprPtr mul_expr() {
    auto l = unary_expr();
    while (is_punct("*") || is_punct("/") || is_punct("%")) {
      std::string t = advance().text;
      BinOp op = t == "*" ? BinOp::Mul : t == "/" ? BinOp::Div : BinOp::Mod;
      l = binary(std::move(l), op, unary_expr());
    }
    return l;
  }
  ExprPtr unary_expr() {
    if (is_punct("!") || is_punct("-")) {
      std::size_t start = peek().span.begin;
      bool neg = advance().text == "-";
      if (neg && peek().kind == Tok::Int) {
        const Token &t = advance();
        auto e = node(Expr::Kind::IntLit, {start, t.span.end});
        e->int_value = static_cast<std::int64_t>(0 - t.int_value);
        return e;
      }
      auto operand = unary_expr();
      auto e = node(Expr::Kind::Unary, {start, operand->span.end});
      e->op = neg ? BinOp::Neg : BinOp::Not;
      e->children.push_back(std::move(operand));
      return e;
    }
    return postfix_expr();
  }
  ExprPtr postfix_expr() {
    auto e = primary();
    while (is_punct(".")) {
      advance();
      auto [name, nspan] = ident();
      if (is_punct("(")) {
        advance();
        auto call = node(Expr::Kind::Call, {e->span.begin, 0});
        call->text = name;
        call->children.push_back(std::move(e));
        if (!is_punct(")")) {
          for (;;) {
            call->children.push_back(expr());
            if (!is_punct(","))
              break;
            advance();
          }
        }
        expect_punct(")");
        call->span.end = prev_end_;
        e = std::move(call);
      } else {
        auto f = node(Expr::Kind::Field, {e->span.begin, nspan.end});
        f->text = name;
        f->children.push_back(std::move(e));
        e = std::move(f);
      }
    }
    return e;
  }
  ExprPtr primary() {
    const Token &t = peek();
    if (t.kind == Tok::Int) {
      advance();
      if (t.int_value > static_cast<std::uint64_t>(INT64_MAX))
        throw CompileError({{t.span, position_of(src_, t.span.begin), "integer literal out of range"}});
      auto e = node(Expr::Kind::IntLit, t.span);
      e->int_value = static_cast<std::int64_t>(t.int_value);
      return e;
    }
    if (t.kind == Tok::Str) {
      advance();
      auto e = node(Expr::Kind::StrLit, t.span);
      e->text = t.text;
      return e;
    }
    if (t.kind == Tok::Ident) {
      advance();
      auto e = node(Expr::Kind::Var, t.span);
      e->text = t.text;
      return e;
    }
    if (t.kind == Tok::Keyword) {
      if (t.text == "true" || t.text == "false") {
        advance();
        auto e = node(Expr::Kind::BoolLit, t.span);
        e->bool_value = t.text == "true";
        return e;
      }
      if (t.text == "null") {
        advance();
        return node(Expr::Kind::Null, t.span);
      }
      if (t.text == "this") {
        advance();
        return node(Expr::Kind::This, t.span);
      }
      if (t.text == "new") {
        std::size_t start = t.span.begin;
        advance();
        auto [name, nspan] = ident();
        auto e = node(Expr::Kind::New, {start, nspan.end});
        e->text = name;
        return e;
      }
      if (t.text == "input") {
        std::size_t start = t.span.begin;
        advance();
        expect_punct("(");
        if (peek().kind != Tok::Str)
          error_expected({"string literal"});
        std::string key = advance().text;
        expect_punct(")");
        auto e = node(Expr::Kind::Input, {start, prev_end_});
        e->text = key;
        return e;
      }
    }
    if (t.kind == Tok::Punct && t.text == "(") {
      advance();
      auto e = expr();
      expect_punct(")");
      return e;
    }
    error_expected({"expression"});
  }
};

void check_duplicates(const Ast &ast) {
  std::vector<Diagnostic> diags;
  auto dup = [&](Span span, const std::string &what) {
    diags.push_back({span, position_of(ast.source, span.begin), "duplicate declaration of " + what});
  };
  std::set<std::string> classes;
  for (const auto &c : ast.classes) {
    if (c.name == "Main")
      diags.push_back({c.span, position_of(ast.source, c.span.begin), "class name 'Main' is reserved"});
    if (!classes.insert(c.name).second)
      dup(c.span, "class '" + c.name + "'");
    std::set<std::string> fields, methods;
    for (const auto &f : c.fields)
      if (!fields.insert(f.name).second)
        dup(f.span, "field '" + c.name + "." + f.name + "'");
    for (const auto &m : c.methods) {
      if (!methods.insert(m.name).second)
        dup(m.span, "method '" + c.name + "." + m.name + "'");
      std::set<std::string> params;
      for (const auto &p : m.params)
        if (!params.insert(p.name).second)
          dup(p.span, "parameter '" + p.name + "'");
    }
  }
  if (!diags.empty())
    throw CompileError(std::move(diags));
}

} // namespace

Ast parse(std::string source) {
  Lexer lexer(source);
  auto toks = lexer.run();
  Parser parser(source, std::move(toks));
  Ast ast = parser.program();
  ast.source = std::move(source);
  check_duplicates(ast);
  return ast;
}

} // namespace mol::lang
