#include "koszul/model.hpp"

#include <algorithm>
#include <sstream>

namespace koszul {

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(tok_.line, tok_.col, msg);
  }

 private:
  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_, ++line_, col_ = 1;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_, ++col_;
      } else {
        break;
      }
    }
    tok_ = Token{Token::End, "", line_, col_};
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = s_.substr(start, pos_ - start);
    } else if (std::isdigit((unsigned char)c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      tok_.kind = Token::Number;
      tok_.text = s_.substr(start, pos_ - start);
    } else if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
      pos_ += 2;
      tok_.kind = Token::Punct;
      tok_.text = "->";
    } else {
      ++pos_;
      tok_.kind = Token::Punct;
      tok_.text = std::string(1, c);
    }
    col_ += int(tok_.text.size());
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  ModelFile parse() {
    ModelFile m;
    bool have_sig = false;
    std::vector<GeneratorInfo> gens;
    std::size_t named_z2 = 0, named_z = 0;
    while (lx_.peek().kind != Token::End) {
      const Token t = expect_ident("statement keyword");
      if (t.text == "signature") {
        if (have_sig) fail(t, "duplicate signature statement");
        expect_keyword("z2");
        expect_punct("=");
        std::size_t k = std::size_t(nat());
        expect_keyword("z");
        expect_punct("=");
        std::size_t l = std::size_t(nat());
        expect_keyword("convention");
        expect_punct("=");
        Token c = expect_ident("convention name");
        if (c.text == "bl")
          m.conv = SignConvention::BernsteinLeites;
        else if (c.text == "deligne")
          m.conv = SignConvention::Deligne;
        else
          fail(c, "convention must be 'bl' or 'deligne'");
        m.sig = SlotSignature::make(k, l);
        have_sig = true;
      } else if (t.text == "slot") {
        require_sig(t, have_sig);
        Token kind = expect_ident("slot kind (z2 or z)");
        Token name = expect_ident("slot name");
        if (kind.text == "z2") {
          if (named_z2 >= m.sig.z2_count) fail(name, "more z2 slot names than slots");
          m.sig.slot_names[named_z2++] = name.text;
        } else if (kind.text == "z") {
          if (named_z >= m.sig.z_count) fail(name, "more z slot names than slots");
          m.sig.slot_names[m.sig.z2_count + named_z++] = name.text;
        } else {
          fail(kind, "slot kind must be z2 or z");
        }
      } else if (t.text == "gen") {
        require_sig(t, have_sig);
        if (m.ctx) fail(t, "generators must be declared before derivations and expressions");
        Token name = expect_ident("generator name");
        expect_keyword("deg");
        expect_punct("=");
        gens.push_back({name.text, degree(m.sig)});
      } else if (t.text == "der") {
        finalize_ctx(m, gens);
        Token name = expect_ident("derivation name");
        expect_keyword("deg");
        expect_punct("=");
        MultiDegree d = degree(m.sig);
        expect_punct("{");
        std::vector<Polynomial> vals(m.ctx->size(), Polynomial::zero(m.ctx));
        while (!try_punct("}")) {
          Token g = expect_ident("generator name");
          auto gi = m.ctx->find(g.text);
          if (!gi) fail(g, "unknown generator '" + g.text + "'");
          expect_punct("->");
          vals[*gi] = expression(m.ctx);
          if (!try_punct(";")) {
            expect_punct("}");
            break;
          }
        }
        try_emplace(m.derivations, name, Derivation::make(m.ctx, d, vals));
      } else if (t.text == "const") {
        require_sig(t, have_sig);
        Token name = expect_ident("table name");
        ConstTable& tab = m.consts[name.text];
        if (try_keyword("parity")) {
          expect_punct("=");
          expect_punct("(");
          std::vector<int> ps;
          if (!try_punct(")")) {
            ps.push_back(int(integer()));
            while (try_punct(",")) ps.push_back(int(integer()));
            expect_punct(")");
          }
          tab.parities = ps;
          tab.dim = std::max(tab.dim, ps.size());
        } else if (try_keyword("dim")) {
          expect_punct("=");
          tab.dim = std::max(tab.dim, std::size_t(nat()));
        } else {
          expect_punct("[");
          std::size_t a = index1();
          expect_punct(",");
          std::size_t b = index1();
          expect_punct(",");
          std::size_t c = index1();
          expect_punct("]");
          expect_punct("=");
          Rational v = rational();
          tab.entries.push_back({a, b, c, v});
          tab.dim = std::max({tab.dim, a + 1, b + 1, c + 1});
        }
      } else if (t.text == "bivec") {
        finalize_ctx(m, gens);
        Token name = expect_ident("bivector name");
        BivecSpec& bv = m.bivecs[name.text];
        expect_punct("{");
        while (!try_punct("}")) {
          expect_punct("(");
          std::size_t i = index1();
          expect_punct(",");
          std::size_t j = index1();
          expect_punct(")");
          expect_punct("->");
          bv.entries.push_back({i, j, expression(m.ctx)});
          if (!try_punct(";")) {
            expect_punct("}");
            break;
          }
        }
      } else if (t.text == "form") {
        finalize_ctx(m, gens);
        Token name = expect_ident("form name");
        FormSpec fs;
        expect_keyword("matrix");
        expect_punct("{");
        while (!try_punct("}")) {
          expect_punct("(");
          std::size_t i = index1();
          expect_punct(",");
          std::size_t j = index1();
          expect_punct(")");
          expect_punct("=");
          fs.entries.push_back({i, j, rational()});
          if (!try_punct(";")) {
            expect_punct("}");
            break;
          }
        }
        expect_keyword("deg");
        expect_punct("=");
        fs.declared = degree(m.sig);
        try_emplace(m.forms, name, std::move(fs));
      } else if (t.text == "poly") {
        finalize_ctx(m, gens);
        Token name = expect_ident("polynomial name");
        expect_punct("=");
        try_emplace(m.polys, name, expression(m.ctx));
      } else {
        fail(t, "unknown statement '" + t.text + "'");
      }
    }
    finalize_ctx(m, gens);
    return m;
  }

  Polynomial expression(const ContextPtr& ctx) {
    Polynomial r = mul_expr(ctx);
    while (true) {
      if (try_punct("+"))
        r += mul_expr(ctx);
      else if (try_punct("-"))  // "->" is lexed as a single token
        r -= mul_expr(ctx);
      else
        return r;
    }
  }

 private:
  void require_sig(const Token& t, bool have) {
    if (!have) fail(t, "signature must be declared first");
  }

  void finalize_ctx(ModelFile& m, std::vector<GeneratorInfo>& gens) {
    if (!m.ctx) {
      if (m.sig.slot_names.empty() && m.sig.z2_count + m.sig.z_count > 0)
        throw parse_error(1, 1, "internal: signature without names");
      m.ctx = GradedContext::make(m.sig, m.conv, gens);
    }
  }

  template <class M, class V>
  void try_emplace(M& map, const Token& name, V&& v) {
    if (!map.emplace(name.text, std::forward<V>(v)).second)
      fail(name, "duplicate name '" + name.text + "'");
  }

  Token expect_ident(const std::string& what) {
    if (lx_.peek().kind != Token::Ident) lx_.fail("expected " + what);
    return lx_.next();
  }
  void expect_keyword(const std::string& kw) {
    Token t = expect_ident("'" + kw + "'");
    if (t.text != kw) fail(t, "expected '" + kw + "'");
  }
  bool try_keyword(const std::string& kw) {
    if (lx_.peek().kind == Token::Ident && lx_.peek().text == kw) {
      lx_.next();
      return true;
    }
    return false;
  }
  void expect_punct(const std::string& p) {
    if (lx_.peek().kind != Token::Punct || lx_.peek().text != p)
      lx_.fail("expected '" + p + "'");
    lx_.next();
  }
  bool try_punct(const std::string& p) {
    if (lx_.peek().kind == Token::Punct && lx_.peek().text == p) {
      lx_.next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw parse_error(t.line, t.col, msg);
  }

  long long nat() {
    if (lx_.peek().kind != Token::Number) lx_.fail("expected a number");
    Token t = lx_.next();
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      fail(t, "number out of range");
    }
  }
  long long integer() {
    bool neg = try_punct("-");
    long long v = nat();
    return neg ? -v : v;
  }
  std::size_t index1() {
    long long v = nat();
    if (v < 1) lx_.fail("indices are 1-based");
    return std::size_t(v - 1);
  }
  Rational rational() {
    bool neg = try_punct("-");
    long long n = nat();
    long long d = 1;
    if (try_punct("/")) d = nat();
    Rational r = Rational(Integer(n), Integer(d));
    return neg ? -r : r;
  }

  MultiDegree degree(const SlotSignature& sig) {
    expect_punct("(");
    MultiDegree d = MultiDegree::zero(sig);
    std::vector<long long> z2s, zs;
    if (!try_punct("|")) {
      z2s.push_back(integer());
      while (try_punct(",")) z2s.push_back(integer());
      expect_punct("|");
    }
    if (!try_punct(")")) {
      zs.push_back(integer());
      while (try_punct(",")) zs.push_back(integer());
      expect_punct(")");
    }
    if (z2s.size() != sig.z2_count || zs.size() != sig.z_count)
      lx_.fail("degree does not match the signature (" + std::to_string(sig.z2_count) +
               " z2 and " + std::to_string(sig.z_count) + " z entries expected)");
    for (std::size_t i = 0; i < z2s.size(); ++i) d.z2[i] = uint8_t(((z2s[i] % 2) + 2) % 2);
    for (std::size_t i = 0; i < zs.size(); ++i) d.z[i] = zs[i];
    return d;
  }

  Polynomial mul_expr(const ContextPtr& ctx) {
    Polynomial r = unary(ctx);
    while (try_punct("*")) r = r * unary(ctx);
    return r;
  }

  Polynomial unary(const ContextPtr& ctx) {
    if (try_punct("-")) return -unary(ctx);
    return power(ctx);
  }

  Polynomial power(const ContextPtr& ctx) {
    Token at = lx_.peek();
    Polynomial base = atom(ctx);
    if (try_punct("^")) {
      long long e = nat();
      if (e < 0) fail(at, "negative exponent");
      // '^' only on generators (odd squares are a degree-check error)
      std::optional<std::size_t> g;
      if (base.term_count() == 1) {
        const auto& [mono, c] = *base.terms().begin();
        if (c == Rational(1) && mono.factors().size() == 1 && mono.factors()[0].second == 1)
          g = mono.factors()[0].first;
      }
      if (!g && !(base.term_count() == 1 && base.terms().begin()->first.is_one()))
        fail(at, "'^' applies to generators and numbers only");
      if (g && ctx->odd(*g) && e > 1)
        fail(at, "odd generator '" + ctx->gen(*g).name + "' squared (degree-check)");
      Polynomial r = Polynomial::constant(ctx, Rational(1));
      for (long long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  Polynomial atom(const ContextPtr& ctx) {
    const Token t = lx_.peek();
    if (t.kind == Token::Number) {
      return Polynomial::constant(ctx, rational());
    }
    if (t.kind == Token::Ident) {
      lx_.next();
      auto g = ctx->find(t.text);
      if (!g) fail(t, "unknown generator '" + t.text + "'");
      return Polynomial::generator(ctx, *g);
    }
    if (t.kind == Token::Punct && t.text == "(") {
      lx_.next();
      Polynomial r = expression(ctx);
      expect_punct(")");
      return r;
    }
    lx_.fail("expected a number, generator or parenthesized expression");
  }

  Lexer lx_;
};

}  // namespace

SuperLieAlgebra ConstTable::algebra() const {
  std::vector<int> ps = parities;
  if (ps.empty()) ps.assign(dim, 0);
  if (ps.size() < dim) ps.resize(dim, 0);
  return SuperLieAlgebra::make(dim, ps, entries);
}

PoissonBivector BivecSpec::bivector(const ContextPtr& ctx) const {
  const std::size_t n = ctx->size();
  std::vector<std::vector<Polynomial>> comp(n, std::vector<Polynomial>(n, Polynomial::zero(ctx)));
  std::vector<std::vector<uint8_t>> given(n, std::vector<uint8_t>(n, 0));
  const bool bl = ctx->convention() == SignConvention::BernsteinLeites;
  auto close = [&](std::size_t i, std::size_t j, const Polynomial& v) {
    if (given[i][j]) {
      if (!(comp[i][j] == v)) throw kernel_error("conflicting bivector entry");
      return;
    }
    given[i][j] = 1;
    comp[i][j] = v;
  };
  for (const auto& [i, j, v] : entries) {
    if (i >= n || j >= n) throw kernel_error("bivector index out of range");
    const int pi = par(ctx->gen(i).degree), pj = par(ctx->gen(j).degree);
    // pi^{JI} = (-1)^e pi^{IJ} with the convention's antisymmetry exponent
    const int e = bl ? ((pi + 1) * (pj + 1)) % 2 : (pi * pj + 1) % 2;
    close(i, j, v);
    close(j, i, e ? -v : v);
  }
  return PoissonBivector::make(ctx, std::move(comp));
}

ConstantSymplecticForm FormSpec::form(const ContextPtr& ctx) const {
  auto [sctx, d] = shift_tangent(ctx, SlotPolicy::fresh("frm"));
  (void)d;
  const std::size_t n = ctx->size();
  Matrix mat(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::vector<uint8_t>> given(n, std::vector<uint8_t>(n, 0));
  auto close = [&](std::size_t i, std::size_t j, const Rational& v) {
    if (given[i][j]) {
      if (!(mat[i][j] == v)) throw kernel_error("conflicting form entry");
      return;
    }
    given[i][j] = 1;
    mat[i][j] = v;
  };
  for (const auto& [i, j, v] : entries) {
    if (i >= n || j >= n) throw kernel_error("form index out of range");
    const int s = koszul_sign(sctx.full->gen(sctx.partner_of(i)).degree,
                              sctx.full->gen(sctx.partner_of(j)).degree, ctx->convention());
    close(i, j, v);
    close(j, i, v * Rational(s));
  }
  MultiDegree deg = declared.padded(ctx->signature(), sctx.full->signature()) +
                    sctx.shift_degree + sctx.shift_degree;
  return ConstantSymplecticForm::make(std::move(sctx), std::move(mat), std::move(deg));
}

ModelFile parse_model(const std::string& text) { return Parser(text).parse(); }

Polynomial parse_expression(const std::string& text, const ContextPtr& ctx) {
  Parser p(text);
  return p.expression(ctx);
}

std::string print_model(const ModelFile& m) {
  std::ostringstream os;
  os << "signature z2=" << m.sig.z2_count << " z=" << m.sig.z_count
     << " convention=" << to_string(m.conv) << "\n";
  for (std::size_t i = 0; i < m.sig.z2_count; ++i)
    os << "slot z2 " << m.sig.slot_names[i] << "\n";
  for (std::size_t i = 0; i < m.sig.z_count; ++i)
    os << "slot z " << m.sig.slot_names[m.sig.z2_count + i] << "\n";
  for (const auto& g : m.ctx->gens())
    os << "gen " << g.name << " deg=" << g.degree.to_string() << "\n";
  for (const auto& [name, tab] : m.consts) {
    os << "const " << name << " dim=" << tab.dim << "\n";
    if (!tab.parities.empty()) {
      os << "const " << name << " parity = (";
      for (std::size_t i = 0; i < tab.parities.size(); ++i)
        os << (i ? "," : "") << tab.parities[i];
      os << ")\n";
    }
    // canonical entry set: the strictly given data in index order
    SuperLieAlgebra g = tab.algebra();
    for (std::size_t a = 0; a < g.dim(); ++a)
      for (std::size_t b = 0; b < g.dim(); ++b)
        for (std::size_t c = b; c < g.dim(); ++c)
          if (!is_zero(g.c(a, b, c)))
            os << "const " << name << "[" << a + 1 << "," << b + 1 << "," << c + 1
               << "] = " << to_string(g.c(a, b, c)) << "\n";
  }
  for (const auto& [name, bv] : m.bivecs) {
    PoissonBivector pv = bv.bivector(m.ctx);
    os << "bivec " << name << " {";
    bool first = true;
    for (std::size_t i = 0; i < pv.dim(); ++i)
      for (std::size_t j = i; j < pv.dim(); ++j)
        if (!pv.comp(i, j).is_zero()) {
          os << (first ? " " : "; ") << "(" << i + 1 << "," << j + 1 << ") -> "
             << pv.comp(i, j).to_string();
          first = false;
        }
    os << " }\n";
  }
  for (const auto& [name, d] : m.derivations) {
    os << "der " << name << " deg=" << d.degree().to_string() << " {";
    bool first = true;
    for (std::size_t i = 0; i < m.ctx->size(); ++i)
      if (!d.value(i).is_zero()) {
        os << (first ? " " : "; ") << m.ctx->gen(i).name << " -> "
           << d.value(i).to_string();
        first = false;
      }
    os << " }\n";
  }
  for (const auto& [name, fs] : m.forms) {
    ConstantSymplecticForm f = fs.form(m.ctx);
    os << "form " << name << " matrix {";
    bool first = true;
    for (std::size_t i = 0; i < m.ctx->size(); ++i)
      for (std::size_t j = 0; j < m.ctx->size(); ++j)
        if (!is_zero(f.matrix()[i][j])) {
          os << (first ? " " : "; ") << "(" << i + 1 << "," << j + 1
             << ") = " << to_string(f.matrix()[i][j]);
          first = false;
        }
    os << " } deg=" << fs.declared.to_string() << "\n";
  }
  for (const auto& [name, p] : m.polys)
    os << "poly " << name << " = " << p.to_string() << "\n";
  return os.str();
}

}  // namespace koszul
