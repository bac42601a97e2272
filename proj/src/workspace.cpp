#include "singeq/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <variant>

#include "singeq/witness.hpp"

namespace singeq {

namespace detail {

enum class Kind { Algebra, Element, Module, Bimodule, Complex, Hom, Witness };

template <class S>
struct Elem {
  AlgebraPtr<S> alg;
  Vec<S> v;
};

// variant index follows Kind
template <class S>
using Entity = std::variant<AlgebraPtr<S>, Elem<S>, Module<S>, Bimod<S>, Complex<S>, AlgebraHom<S>, Witness<S>>;

struct Symbol {
  Kind kind;
  int task = 0;  // producing task, 0 for declarations
  int order = 0;
};

template <class S>
struct Env {
  FieldSpec field;
  std::map<std::string, Symbol> symbols;
  std::map<std::string, Entity<S>> objects;
};

struct Evaluated {
  std::variant<std::shared_ptr<const Env<Fp>>, std::shared_ptr<const Env<Rational>>> env;
};

}  // namespace detail

using detail::Entity;
using detail::Env;
using detail::Kind;

namespace {

using Json = nlohmann::ordered_json;

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Algebra: return "an algebra";
    case Kind::Element: return "an element";
    case Kind::Module: return "a module";
    case Kind::Bimodule: return "a bimodule";
    case Kind::Complex: return "a complex";
    case Kind::Hom: return "an algebra map";
    case Kind::Witness: return "a witness";
  }
  return "?";
}

const std::set<std::string> kHeads = {"FIELD",   "QUIVER", "ALGEBRA", "ELEMENT", "MODULE",
                                      "BIMODULE", "COMPLEX", "HOM",     "WITNESS", "TASK"};
const std::map<std::string, std::set<std::string>> kBody = {
    {"VERTICES", {"QUIVER", "ALGEBRA"}}, {"ARROW", {"QUIVER"}},   {"REL", {"QUIVER"}},
    {"LABELS", {"ALGEBRA"}},             {"IDEMPOTENT", {"ALGEBRA"}}, {"UNIT", {"ALGEBRA"}},
    {"MUL", {"ALGEBRA"}},                {"DIM", {"MODULE", "BIMODULE"}}, {"ACTION", {"MODULE"}},
    {"LEFT", {"BIMODULE"}},              {"RIGHT", {"BIMODULE"}}, {"TERM", {"COMPLEX"}},
    {"DIFF", {"COMPLEX"}}};
const std::set<std::string> kSymbols = {"->", "=", ":", ";", "*", "+", "-", "^"};
const std::set<std::string> kReserved = {"SEED", "CUTOFF", "AS", "OVER", "PAIR", "LEVEL"};

bool is_symbol(const std::string& s) { return kSymbols.count(s) > 0; }

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_number(const std::string& s) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '/'; });
}

bool is_word(const std::string& s) { return !s.empty() && !is_symbol(s) && !is_number(s); }

bool is_name(const std::string& s) {
  return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') && !kReserved.count(s);
}

struct Tok {
  std::string text;
  int col;
};

bool ident_char(char c, bool dashes) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '|' || c == '\'' ||
         (dashes && c == '-');
}

std::vector<Tok> lex(std::string_view s, int line) {
  // task kinds and option words carry dashes
  const auto first = s.find_first_not_of(" \t\r");
  const bool dashes = first != std::string_view::npos && s.substr(first, 4) == "TASK";
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    std::size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      } else {
        while (j < s.size() && ident_char(s[j], dashes)) ++j;
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && ident_char(s[j], dashes)) ++j;
    } else if (s.substr(i, 2) == "->") {
      j = i + 2;
    } else if (std::string_view("=:;*+-^").find(c) != std::string_view::npos) {
      j = i + 1;
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({std::string(s.substr(i, j - i)), col});
    i = j;
  }
  return out;
}

std::string canonical_number(const Tok& t, int line) {
  const auto slash = t.text.find('/');
  if (slash != std::string::npos && t.text.find_first_not_of('0', slash + 1) == std::string::npos)
    throw ParseError(line, t.col, "zero denominator");
  const FieldSpec q = FieldSpec::rational();
  if (slash == std::string::npos) return ScalarTraits<Rational>::parse(q, t.text).str();
  const Rational r = ScalarTraits<Rational>::parse(q, t.text.substr(0, slash)) /
                     ScalarTraits<Rational>::parse(q, t.text.substr(slash + 1));
  return r.str();
}

// numbers reduced, x^n spelled out as x * ... * x
std::vector<Tok> normalize(const std::vector<Tok>& toks, int line) {
  std::vector<Tok> out;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    const Tok& t = toks[k];
    if (is_number(t.text)) {
      out.push_back({canonical_number(t, line), t.col});
    } else if (t.text == "^") {
      if (out.empty() || !is_word(out.back().text) || k + 1 >= toks.size() || !all_digits(toks[k + 1].text) ||
          toks[k + 1].text.size() > 3 || std::stoi(toks[k + 1].text) < 1)
        throw ParseError(line, t.col, "'^' needs a label and a positive exponent");
      const Tok base = out.back();
      for (int r = 1; r < std::stoi(toks[k + 1].text); ++r) {
        out.push_back({"*", t.col});
        out.push_back({base.text, t.col});
      }
      ++k;
    } else {
      out.push_back(t);
    }
  }
  return out;
}

bool is_derived(const Line& head) {
  return std::find(head.args.begin(), head.args.end(), "=") != head.args.end();
}

std::vector<Statement> structure(std::string_view text) {
  std::vector<Statement> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto toks = normalize(lex(raw, line_no), line_no);
    if (toks.empty()) continue;
    Line l;
    l.keyword = toks[0].text;
    l.line = line_no;
    for (const auto& t : toks) l.cols.push_back(t.col);
    for (std::size_t k = 1; k < toks.size(); ++k) l.args.push_back(toks[k].text);
    if (kHeads.count(l.keyword)) {
      out.push_back({std::move(l), {}});
      continue;
    }
    auto it = kBody.find(l.keyword);
    if (it == kBody.end()) throw ParseError(line_no, toks[0].col, "unknown keyword '" + l.keyword + "'");
    if (out.empty() || !it->second.count(out.back().head.keyword) || is_derived(out.back().head))
      throw ParseError(line_no, toks[0].col, "'" + l.keyword + "' outside a block that takes it");
    out.back().body.push_back(std::move(l));
  }
  return out;
}

struct Cursor {
  const Line& l;
  std::size_t i = 0;

  bool done() const { return i >= l.args.size(); }
  int col() const {
    if (i + 1 < l.cols.size()) return l.cols[i + 1];
    if (l.cols.empty()) return 1;
    return l.cols.back() + static_cast<int>(l.args.empty() ? l.keyword.size() : l.args.back().size());
  }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(l.line, col(), m); }
  const std::string& peek() const {
    static const std::string none;
    return done() ? none : l.args[i];
  }
  bool at(const char* s) const { return !done() && l.args[i] == s; }
  std::string take() { return l.args[i++]; }
  void expect(const char* s) {
    if (!at(s)) fail(std::string("expected '") + s + "'");
    ++i;
  }
  std::string word(const std::string& what) {
    if (done() || !is_word(peek())) fail("expected " + what);
    return take();
  }
  // a vertex or similar tag: any non-symbol token
  std::string tag(const std::string& what) {
    if (done() || is_symbol(peek())) fail("expected " + what);
    return take();
  }
  long long integer(const std::string& what, bool allow_negative = false) {
    const bool neg = allow_negative && at("-");
    if (neg) ++i;
    if (done() || !all_digits(peek()) || peek().size() > 18) fail("expected " + what);
    const long long v = std::stoll(take());
    return neg ? -v : v;
  }
  std::uint64_t unsigned_integer(const std::string& what) {
    if (done() || !all_digits(peek()) || peek().size() > 19) fail("expected " + what);
    return std::stoull(take());
  }
  void end() {
    if (!done()) fail("unexpected '" + peek() + "'");
  }
};

FieldSpec field_from(Cursor& c) {
  if (c.at("rational")) {
    c.take();
    c.end();
    return FieldSpec::rational();
  }
  if (c.at("prime")) {
    c.take();
  } else if (c.at("p")) {
    c.take();
    c.expect("=");
  }
  const int col = c.col();
  const long long p = c.integer("'prime <p>', 'p = <p>' or 'rational'");
  c.end();
  if (p > 0x7fffffffLL || !is_prime(static_cast<std::uint32_t>(p)))
    throw ParseError(c.l.line, col, "not a usable prime: " + std::to_string(p));
  return FieldSpec::prime(static_cast<std::uint32_t>(p));
}

// ---------------------------------------------------------------------------
// Tasks

enum class Arg { Alg, Elem, Mod, Bimod, ModBimod, ModBimodWit, Complex, Hom, Wit, Int, OptInt, OptWord, OptMod };

struct Sig {
  std::vector<Arg> args;
  std::set<std::string> words;
  std::optional<Kind> produces;  // syzygy produces the kind of its argument
  bool produces_arg_kind = false;
};

const std::map<std::string, Sig>& signatures() {
  static const std::map<std::string, Sig> sigs = {
      {"check-algebra", {{Arg::Alg}, {}, {}}},
      {"pd", {{Arg::ModBimod}, {}, {}}},
      {"syzygy", {{Arg::ModBimod, Arg::Int}, {}, {}, true}},
      {"perfect", {{Arg::Complex, Arg::OptWord}, {"algebra", "left", "right", "simples", "direct"}, {}}},
      {"vdim", {{Arg::Alg}, {}, {}}},
      {"gorenstein", {{Arg::Alg}, {}, {}}},
      {"mcm", {{Arg::ModBimodWit}, {}, {}}},
      {"sing-equiv", {{Arg::Complex, Arg::OptWord}, {"simples", "direct", "gorenstein"}, {}}},
      {"hom-check", {{Arg::Hom}, {}, {}}},
      {"idem-check", {{Arg::Alg, Arg::Elem}, {}, {}}},
      {"idem-witness", {{Arg::Alg, Arg::Elem, Arg::OptWord}, {"first", "second"}, Kind::Witness}},
      {"morita-witness",
       {{Arg::Alg, Arg::Alg, Arg::Bimod, Arg::Bimod, Arg::OptWord}, {"top-left", "bottom-right"}, Kind::Witness}},
      {"build-witness", {{Arg::Complex, Arg::OptInt, Arg::OptInt}, {}, Kind::Witness}},
      {"verify-witness", {{Arg::Wit}, {}, {}}},
      {"corollary-witness", {{Arg::Alg, Arg::Alg, Arg::Bimod}, {}, Kind::Witness}},
      {"downstream-check", {{Arg::Wit, Arg::OptMod}, {}, {}}},
  };
  return sigs;
}

std::vector<Kind> accepted(Arg a) {
  switch (a) {
    case Arg::Alg: return {Kind::Algebra};
    case Arg::Elem: return {Kind::Element};
    case Arg::Mod:
    case Arg::OptMod: return {Kind::Module};
    case Arg::Bimod: return {Kind::Bimodule};
    case Arg::ModBimod: return {Kind::Module, Kind::Bimodule};
    case Arg::ModBimodWit: return {Kind::Module, Kind::Bimodule, Kind::Witness};
    case Arg::Complex: return {Kind::Complex};
    case Arg::Hom: return {Kind::Hom};
    case Arg::Wit: return {Kind::Witness};
    default: return {};
  }
}

// ---------------------------------------------------------------------------
// Evaluation of declarations

template <class S>
class Evaluator {
 public:
  explicit Evaluator(const FieldSpec& f) : env_(std::make_shared<Env<S>>()) { env_->field = f; }

  void statement(const Statement& st) {
    const std::string& k = st.head.keyword;
    if (k == "FIELD") return;
    try {
      if (k == "QUIVER") quiver(st);
      else if (k == "ALGEBRA") algebra(st);
      else if (k == "ELEMENT") element(st);
      else if (k == "MODULE") module(st);
      else if (k == "BIMODULE") bimodule(st);
      else if (k == "COMPLEX") complex(st);
      else if (k == "HOM") hom(st);
      else if (k == "WITNESS") witness(st);
      else if (k == "TASK") task(st);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("line " + std::to_string(line_) + ": " + e.kind() + ": " + e.what());
    }
  }

  std::shared_ptr<Env<S>> env_;
  std::vector<TaskSpec> tasks_;

 private:
  int line_ = 0;

  const FieldSpec& f() const { return env_->field; }
  S one() const { return ScalarTraits<S>::from_int(f(), 1); }
  S zero() const { return ScalarTraits<S>::from_int(f(), 0); }
  Vec<S> zero_vec(Index n) const { return Vec<S>::Constant(n, zero()); }

  void declare(Cursor& c, const std::string& name, Entity<S> obj) {
    const Kind k = static_cast<Kind>(obj.index());
    env_->symbols[name] = {k, 0, static_cast<int>(env_->symbols.size())};
    env_->objects.emplace(name, std::move(obj));
    (void)c;
  }

  std::string new_name(Cursor& c) {
    if (c.done() || !is_name(c.peek())) c.fail("expected a name");
    if (env_->symbols.count(c.peek())) c.fail("'" + c.peek() + "' is already declared");
    return c.take();
  }

  const Entity<S>& any(Cursor& c, const std::vector<Kind>& kinds) {
    if (c.done() || !is_word(c.peek())) c.fail("expected a name");
    const std::string& n = c.peek();
    auto it = env_->symbols.find(n);
    if (it == env_->symbols.end()) c.fail("'" + n + "' is not declared before this line");
    if (it->second.task) c.fail("'" + n + "' is a task result and only tasks may use it");
    if (std::find(kinds.begin(), kinds.end(), it->second.kind) == kinds.end())
      c.fail("'" + n + "' is " + kind_name(it->second.kind) + ", expected " + kind_name(kinds.front()));
    ++c.i;
    return env_->objects.at(n);
  }

  template <Kind K>
  const std::variant_alternative_t<static_cast<std::size_t>(K), Entity<S>>& get(Cursor& c) {
    return std::get<static_cast<std::size_t>(K)>(any(c, {K}));
  }

  AlgebraPtr<S> alg(Cursor& c) { return get<Kind::Algebra>(c); }

  Index vertex(Cursor& c, const AlgebraPtr<S>& a) {
    const int col = c.col();
    const std::string v = c.tag("a vertex");
    const Index i = a->find_vertex(v);
    if (i < 0) throw ParseError(c.l.line, col, "unknown vertex '" + v + "'");
    return i;
  }

  S scalar(Cursor& c) {
    const bool neg = c.at("-");
    if (neg) c.take();
    if (c.done() || !is_number(c.peek())) c.fail("expected a scalar");
    if (f().kind == FieldSpec::Kind::Prime && c.peek().find('/') != std::string::npos)
      c.fail("fractions need FIELD rational");
    S v = ScalarTraits<S>::parse(f(), c.take());
    return neg ? -v : v;
  }

  Mat<S> rows(Cursor& c, Index r, Index k) {
    std::vector<std::vector<S>> rs(1);
    while (!c.done()) {
      if (c.at(";")) {
        c.take();
        rs.emplace_back();
        continue;
      }
      rs.back().push_back(scalar(c));
    }
    if (r == 0 || k == 0) {
      if (rs.size() != 1 || !rs[0].empty()) c.fail("expected an empty matrix");
      return Mat<S>::Constant(r, k, zero());
    }
    const std::string shape = std::to_string(r) + " x " + std::to_string(k);
    if (static_cast<Index>(rs.size()) != r) c.fail("expected " + shape + " rows separated by ';'");
    Mat<S> m(r, k);
    for (Index i = 0; i < r; ++i) {
      if (static_cast<Index>(rs[i].size()) != k) c.fail("row " + std::to_string(i + 1) + " of a " + shape + " matrix");
      for (Index j = 0; j < k; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }

  // A linear combination of basis labels. Products of labels need the
  // finished algebra; a bare scalar stands for a multiple of the unit.
  Vec<S> expr(Cursor& c, Index dim, const std::function<Index(const std::string&)>& find, const Algebra<S>* a) {
    Vec<S> out = zero_vec(dim);
    auto basis = [&]() {
      const std::string& lab = c.peek();
      const Index i = find(lab);
      if (i < 0) c.fail("unknown basis label '" + lab + "'");
      c.take();
      Vec<S> v = zero_vec(dim);
      v(i) = one();
      return v;
    };
    if (c.done() || c.at("=")) c.fail("expected an element");
    bool first = true;
    while (!c.done() && !c.at("=")) {
      S sign = one();
      if (c.at("+") || c.at("-")) {
        if (c.take() == "-") sign = -sign;
      } else if (!first) {
        c.fail("expected '+' or '-'");
      }
      S coef = one();
      bool has_coef = false;
      if (is_number(c.peek())) {
        coef = scalar(c);
        has_coef = true;
        if (c.at("*")) c.take();
      }
      Vec<S> mono;
      if (!c.done() && is_word(c.peek())) {
        mono = basis();
        while (c.at("*")) {
          c.take();
          if (!a) c.fail("products need a finished algebra");
          if (c.done() || !is_word(c.peek())) c.fail("expected a basis label");
          mono = a->product(mono, basis());
        }
      } else if (has_coef) {
        if (is_zero(coef)) mono = zero_vec(dim);
        else if (!a) c.fail("a scalar term needs a finished algebra");
        else mono = a->unit();
      } else {
        c.fail("expected a term");
      }
      const S s = sign * coef;
      for (Index i = 0; i < dim; ++i) out(i) = out(i) + s * mono(i);
      first = false;
    }
    return out;
  }

  Vec<S> element_of(Cursor& c, const AlgebraPtr<S>& a) {
    return expr(c, a->dim(), [&](const std::string& l) { return a->find_label(l); }, a.get());
  }

  void quiver(const Statement& st) {
    Cursor h{st.head};
    line_ = st.head.line;
    const std::string name = new_name(h);
    h.end();
    QuiverPresentation q;
    std::set<std::string> vs, arrows;
    for (const Line& l : st.body) {
      Cursor c{l};
      line_ = l.line;
      if (l.keyword == "VERTICES") {
        while (!c.done()) {
          if (vs.count(c.peek())) c.fail("vertex '" + c.peek() + "' listed twice");
          vs.insert(c.peek());
          q.vertices.push_back(c.tag("a vertex"));
        }
      } else if (l.keyword == "ARROW") {
        if (arrows.count(c.peek())) c.fail("arrow '" + c.peek() + "' declared twice");
        QuiverArrow a;
        a.label = c.word("an arrow label");
        c.expect(":");
        if (!vs.count(c.peek())) c.fail("'" + c.peek() + "' is not a vertex declared before this line");
        a.source = c.take();
        c.expect("->");
        if (!vs.count(c.peek())) c.fail("'" + c.peek() + "' is not a vertex declared before this line");
        a.target = c.take();
        c.end();
        arrows.insert(a.label);
        q.arrows.push_back(a);
      } else {
        QuiverRelation rel;
        bool first = true;
        while (!c.done()) {
          long long sign = 1;
          if (c.at("+") || c.at("-")) {
            if (c.take() == "-") sign = -1;
          } else if (!first) {
            c.fail("expected '+' or '-'");
          }
          RelationTerm t;
          if (is_number(c.peek())) {
            const std::string n = c.peek();
            const auto slash = n.find('/');
            if (n.size() > 18) c.fail("coefficient too large");
            t.num = std::stoll(n.substr(0, slash));
            if (slash != std::string::npos) t.den = std::stoll(n.substr(slash + 1));
            c.take();
            if (c.at("*")) c.take();
          }
          t.num *= sign;
          do {
            if (c.at("*")) c.take();
            if (!arrows.count(c.peek())) c.fail("'" + c.peek() + "' is not an arrow declared before this line");
            t.path.push_back(c.take());
          } while (c.at("*"));
          rel.terms.push_back(std::move(t));
          first = false;
        }
        if (rel.terms.empty()) c.fail("empty relation");
        q.relations.push_back(std::move(rel));
      }
    }
    line_ = st.head.line;
    declare(h, name, algebra_from_quiver<S>(f(), q));
  }

  void algebra(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    if (!c.at("=")) {
      c.end();
      return declare(c, name, raw_algebra(st));
    }
    c.take();
    const int col = c.col();
    const std::string form = c.word("an algebra form");
    AlgebraPtr<S> out;
    if (form == "FIELD") {
      out = field_algebra<S>(f());
    } else if (form == "PRODUCT" || form == "TENSOR") {
      auto a = alg(c);
      auto b = alg(c);
      out = form == "PRODUCT" ? product_algebra<S>(a, b) : tensor_algebra<S>(a, b);
    } else if (form == "OPPOSITE") {
      out = opposite<S>(alg(c));
    } else if (form == "ENVELOPING") {
      out = enveloping<S>(alg(c));
    } else if (form == "CORNER") {
      auto a = alg(c);
      const auto& e = get<Kind::Element>(c);
      if (e.alg != a) c.fail("the element lives over another algebra");
      out = corner<S>(a, e.v).algebra;
    } else if (form == "MORITA") {
      auto a = alg(c);
      auto b = alg(c);
      const auto& m = get<Kind::Bimodule>(c);
      const auto& n = get<Kind::Bimodule>(c);
      if (m.left != b || m.right != a) throw ValidationError("M must be a B-A bimodule");
      if (n.left != a || n.right != b) throw ValidationError("N must be an A-B bimodule");
      const Index dim = a->dim() * b->dim();
      std::vector<Mat<S>> ma, na;
      for (Index i = 0; i < dim; ++i) {
        ma.push_back(m.module.dim() ? m.module.action(i) : Mat<S>(0, 0));
        na.push_back(n.module.dim() ? n.module.action(i) : Mat<S>(0, 0));
      }
      out = morita_ring<S>(a, b, ma, na);
    } else {
      throw ParseError(c.l.line, col, "unknown algebra form '" + form + "'");
    }
    c.end();
    declare(c, name, out);
  }

  AlgebraPtr<S> raw_algebra(const Statement& st) {
    std::vector<std::string> labels, vertices;
    std::map<std::string, Index> index;
    std::vector<Mat<S>> left;
    std::map<std::string, Vec<S>> idem;
    std::optional<Vec<S>> unit;
    auto find = [&](const std::string& l) -> Index {
      auto it = index.find(l);
      return it == index.end() ? -1 : it->second;
    };
    for (const Line& l : st.body) {
      Cursor c{l};
      line_ = l.line;
      if (l.keyword == "LABELS") {
        if (!labels.empty()) c.fail("LABELS given twice");
        while (!c.done()) {
          if (index.count(c.peek())) c.fail("label '" + c.peek() + "' listed twice");
          index[c.peek()] = static_cast<Index>(labels.size());
          labels.push_back(c.word("a basis label"));
        }
        for (std::size_t i = 0; i < labels.size(); ++i)
          left.push_back(Mat<S>::Constant(labels.size(), labels.size(), zero()));
        continue;
      }
      if (labels.empty()) c.fail("LABELS must come first");
      const Index n = static_cast<Index>(labels.size());
      if (l.keyword == "VERTICES") {
        while (!c.done()) vertices.push_back(c.tag("a vertex"));
      } else if (l.keyword == "IDEMPOTENT") {
        const std::string v = c.tag("a vertex");
        if (std::find(vertices.begin(), vertices.end(), v) == vertices.end())
          c.fail("'" + v + "' is not a vertex declared before this line");
        if (idem.count(v)) c.fail("idempotent of '" + v + "' given twice");
        c.expect("=");
        idem[v] = expr(c, n, find, nullptr);
      } else if (l.keyword == "UNIT") {
        c.expect("=");
        unit = expr(c, n, find, nullptr);
      } else {
        Index ij[2];
        for (Index& x : ij) {
          x = find(c.peek());
          if (x < 0) c.fail("expected a basis label");
          c.take();
        }
        c.expect("=");
        left[ij[0]].col(ij[1]) = expr(c, n, find, nullptr);
      }
    }
    line_ = st.head.line;
    if (labels.empty()) throw ValidationError("raw algebra without LABELS");
    std::vector<Vec<S>> idems;
    for (const auto& v : vertices) {
      if (!idem.count(v)) throw ValidationError("vertex " + v + " has no IDEMPOTENT");
      idems.push_back(idem[v]);
    }
    if (!unit) {
      unit = zero_vec(static_cast<Index>(labels.size()));
      for (const auto& e : idems) *unit += e;
    }
    return algebra_from_structure<S>(f(), labels, left, *unit, idems, vertices);
  }

  void element(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    c.expect("OVER");
    auto a = alg(c);
    c.expect("=");
    Vec<S> v = element_of(c, a);
    declare(c, name, detail::Elem<S>{a, v});
  }

  Index dim_line(const Statement& st) {
    std::optional<Index> dim;
    for (const Line& l : st.body)
      if (l.keyword == "DIM") {
        Cursor c{l};
        if (dim) c.fail("DIM given twice");
        dim = c.integer("a dimension");
        c.end();
      }
    if (!dim) throw ParseError(st.head.line, 1, st.head.keyword + " block without DIM");
    return *dim;
  }

  void module(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    if (c.at("OVER")) {
      c.take();
      auto a = alg(c);
      c.end();
      const Index dim = dim_line(st);
      std::vector<std::pair<Vec<S>, Mat<S>>> gens = {{a->unit(), identity<S>(f(), dim)}};
      for (const Line& l : st.body) {
        if (l.keyword != "ACTION") continue;
        Cursor b{l};
        line_ = l.line;
        Vec<S> x = element_of(b, a);
        b.expect("=");
        gens.emplace_back(x, rows(b, dim, dim));
      }
      line_ = st.head.line;
      return declare(c, name, dim == 0 ? zero_module<S>(a) : module_from_generators<S>(a, dim, gens));
    }
    c.expect("=");
    const int col = c.col();
    const std::string form = c.word("a module form");
    Module<S> out;
    if (form == "REGULAR") {
      out = regular_module<S>(alg(c));
    } else if (form == "SIMPLE") {
      auto a = alg(c);
      out = simple_module<S>(a, vertex(c, a));
    } else if (form == "PROJECTIVE") {
      auto a = alg(c);
      std::vector<Index> vs;
      do vs.push_back(vertex(c, a));
      while (!c.done());
      out = projective_sum<S>(a, vs);
    } else if (form == "ZERO") {
      out = zero_module<S>(alg(c));
    } else if (form == "SYZYGY") {
      auto m = get<Kind::Module>(c);
      out = syzygy<S>(m, static_cast<int>(c.integer("a syzygy index")));
    } else if (form == "SUM") {
      std::vector<Module<S>> parts;
      do parts.push_back(get<Kind::Module>(c));
      while (!c.done());
      for (const auto& p : parts) require_same<S>(p.algebra(), parts[0].algebra(), "SUM");
      out = direct_sum<S>(parts);
    } else if (form == "RESTRICT") {
      const auto& b = get<Kind::Bimodule>(c);
      const std::string side = c.word("LEFT or RIGHT");
      if (side != "LEFT" && side != "RIGHT") c.fail("expected LEFT or RIGHT");
      out = restrict_side<S>(b, side == "LEFT" ? Side::Left : Side::Right);
    } else {
      throw ParseError(c.l.line, col, "unknown module form '" + form + "'");
    }
    c.end();
    declare(c, name, out);
  }

  void bimodule(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    if (c.at("OVER")) {
      c.take();
      auto b = alg(c);
      auto a = alg(c);
      c.end();
      const Index dim = dim_line(st);
      auto t = sides_algebra<S>(f(), b, a);
      const Index na = a->dim();
      auto kron_vec = [&](const Vec<S>& x, const Vec<S>& y) {
        Vec<S> v(x.size() * y.size());
        for (Index i = 0; i < x.size(); ++i)
          for (Index j = 0; j < y.size(); ++j) v(i * y.size() + j) = x(i) * y(j);
        return v;
      };
      std::vector<std::pair<Vec<S>, Mat<S>>> gens = {{t->unit(), identity<S>(f(), dim)}};
      for (const Line& l : st.body) {
        if (l.keyword == "DIM") continue;
        Cursor r{l};
        line_ = l.line;
        const bool left = l.keyword == "LEFT";
        Vec<S> x = element_of(r, left ? b : a);
        r.expect("=");
        Vec<S> g = left ? kron_vec(x, a->unit()) : kron_vec(b->unit(), x);
        if (g.size() != b->dim() * na) throw ShapeMismatch("tensor basis size");
        gens.emplace_back(g, rows(r, dim, dim));
      }
      line_ = st.head.line;
      Module<S> m = dim == 0 ? zero_module<S>(t) : module_from_generators<S>(t, dim, gens);
      return declare(c, name, Bimod<S>{m, b, a});
    }
    c.expect("=");
    const int col = c.col();
    const std::string form = c.word("a bimodule form");
    Bimod<S> out;
    if (form == "REGULAR") {
      auto a = alg(c);
      out = {regular_bimodule<S>(a), a, a};
    } else if (form == "FREE" || form == "PROJECTIVE") {
      auto b = alg(c);
      auto a = alg(c);
      auto t = sides_algebra<S>(f(), b, a);
      if (form == "FREE") {
        out = {regular_module<S>(t), b, a};
      } else {
        std::vector<Index> vs;
        do {
          const Index vb = vertex(c, b);
          vs.push_back(vb * a->num_vertices() + vertex(c, a));
        } while (!c.done());
        out = {projective_sum<S>(t, vs), b, a};
      }
    } else if (form == "SYZYGY") {
      const auto& x = get<Kind::Bimodule>(c);
      out = bimod_syzygy<S>(x, static_cast<int>(c.integer("a syzygy index")));
    } else if (form == "SUM") {
      std::vector<Bimod<S>> parts;
      do parts.push_back(get<Kind::Bimodule>(c));
      while (!c.done());
      std::vector<Module<S>> mods;
      for (const auto& p : parts) {
        if (p.left != parts[0].left || p.right != parts[0].right) throw TagMismatch("SUM of bimodules with other sides");
        mods.push_back(p.module);
      }
      out = {direct_sum<S>(mods), parts[0].left, parts[0].right};
    } else if (form == "DUAL") {
      out = dual<S>(get<Kind::Bimodule>(c));
    } else if (form == "HOM") {
      out = hom_into_regular<S>(get<Kind::Bimodule>(c)).result;
    } else if (form == "TENSOR") {
      const auto& x = get<Kind::Bimodule>(c);
      const auto& y = get<Kind::Bimodule>(c);
      out = tensor_over<S>(x, y).result;
    } else if (form == "TARGET") {
      const auto& h = get<Kind::Hom>(c);
      const std::string side = c.word("LEFT or RIGHT");
      if (side != "LEFT" && side != "RIGHT") c.fail("expected LEFT or RIGHT");
      out = target_as_bimodule<S>(h, side == "LEFT");
    } else if (form == "ALONG") {
      const auto& h = get<Kind::Hom>(c);
      out = {bimodule_from_hom<S>(h), h.source, h.source};
    } else {
      throw ParseError(c.l.line, col, "unknown bimodule form '" + form + "'");
    }
    c.end();
    declare(c, name, out);
  }

  void complex(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    if (!c.at("OVER")) {
      c.expect("=");
      if (c.peek() != "STALK") c.fail("expected STALK");
      c.take();
      const auto& x = any(c, {Kind::Module, Kind::Bimodule});
      const int deg = c.done() ? 0 : static_cast<int>(c.integer("a degree", true));
      c.end();
      if (const auto* m = std::get_if<Module<S>>(&x)) return declare(c, name, stalk<S>(*m, deg));
      const auto& b = std::get<Bimod<S>>(x);
      return declare(c, name, stalk<S>(b.module, deg).with_sides(b.left, b.right));
    }
    c.take();
    AlgebraPtr<S> l = alg(c), r;
    if (!c.done()) r = alg(c);
    c.end();
    if (!r) std::swap(l, r);
    // OVER A reads a one-sided complex over A
    auto t = l ? sides_algebra<S>(f(), l, r) : r;
    std::map<int, Module<S>> terms;
    std::map<int, std::pair<const Line*, std::size_t>> diffs;
    for (const Line& ln : st.body) {
      Cursor b{ln};
      line_ = ln.line;
      const int deg = static_cast<int>(b.integer("a degree", true));
      b.expect("=");
      if (ln.keyword == "TERM") {
        if (terms.count(deg)) b.fail("term in degree " + std::to_string(deg) + " given twice");
        const auto& x = any(b, {Kind::Module, Kind::Bimodule});
        if (const auto* m = std::get_if<Module<S>>(&x)) {
          if (l) b.fail("terms of a bimodule complex must be bimodules");
          terms[deg] = *m;
        } else {
          const auto& bm = std::get<Bimod<S>>(x);
          if (!l || bm.left != l || bm.right != r) b.fail("term has the wrong sides");
          terms[deg] = bm.module;
        }
        b.end();
      } else {
        if (diffs.count(deg)) b.fail("d_" + std::to_string(deg) + " given twice");
        diffs[deg] = {&ln, b.i};
      }
    }
    line_ = st.head.line;
    if (terms.empty()) {
      auto z = zero_complex<S>(t);
      return declare(c, name, l ? z.with_sides(l, r) : z);
    }
    const int lo = terms.begin()->first, hi = terms.rbegin()->first;
    std::vector<Module<S>> ts;
    std::vector<Mat<S>> ds;
    for (int n = lo; n <= hi; ++n) ts.push_back(terms.count(n) ? terms[n] : zero_module<S>(t));
    for (int n = lo; n <= hi; ++n) {
      const Index rows_n = n > lo ? ts[n - 1 - lo].dim() : 0;
      const Index cols_n = ts[n - lo].dim();
      auto it = diffs.find(n);
      if (it == diffs.end()) {
        ds.push_back(Mat<S>::Constant(rows_n, cols_n, zero()));
        continue;
      }
      Cursor b{*it->second.first, it->second.second};
      line_ = b.l.line;
      if (n == lo) b.fail("no term below degree " + std::to_string(n));
      ds.push_back(rows(b, rows_n, cols_n));
    }
    for (const auto& [n, d] : diffs)
      if (n < lo || n > hi) throw ParseError(d.first->line, 1, "DIFF outside the range of TERMs");
    line_ = st.head.line;
    Complex<S> cx(t, lo, ts, ds);
    declare(c, name, l ? cx.with_sides(l, r) : cx);
  }

  void hom(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    c.expect(":");
    auto a = alg(c);
    c.expect("->");
    auto b = alg(c);
    c.expect("=");
    Mat<S> m = rows(c, b->dim(), a->dim());
    declare(c, name, algebra_hom<S>(a, b, m));
  }

  void witness(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    const std::string name = new_name(c);
    c.expect("OVER");
    auto a = alg(c);
    auto b = alg(c);
    c.expect("PAIR");
    const auto& m = get<Kind::Bimodule>(c);
    const auto& n = get<Kind::Bimodule>(c);
    c.expect("LEVEL");
    const int level = static_cast<int>(c.integer("a level"));
    c.end();
    if (m.left != b || m.right != a) throw TagMismatch("M must be a B-A bimodule");
    if (n.left != a || n.right != b) throw TagMismatch("N must be an A-B bimodule");
    declare(c, name, Witness<S>{a, b, m, n, level});
  }

  void task(const Statement& st) {
    Cursor c{st.head};
    line_ = st.head.line;
    TaskSpec t;
    t.index = static_cast<int>(tasks_.size()) + 1;
    t.line = st.head.line;
    const int kind_col = c.col();
    t.kind = c.word("a task kind");
    auto sit = signatures().find(t.kind);
    if (sit == signatures().end()) throw ParseError(c.l.line, kind_col, "unknown task kind '" + t.kind + "'");
    const Sig& sig = sit->second;
    std::vector<std::pair<std::string, int>> args;
    while (!c.done()) {
      if (c.at("SEED")) {
        c.take();
        t.seed = c.unsigned_integer("a seed");
      } else if (c.at("CUTOFF")) {
        c.take();
        t.cutoff = static_cast<int>(c.integer("a cutoff"));
      } else if (c.at("AS")) {
        c.take();
        if (!sig.produces && !sig.produces_arg_kind) c.fail("'" + t.kind + "' produces nothing to name");
        t.as = new_name(c);
      } else {
        args.emplace_back(c.peek(), c.col());
        c.take();
      }
    }
    std::size_t k = 0;
    std::optional<Kind> first_kind;
    std::vector<const Entity<S>*> objs;
    for (Arg a : sig.args) {
      const bool optional = a == Arg::OptInt || a == Arg::OptWord || a == Arg::OptMod;
      if (k >= args.size()) {
        if (optional) continue;
        c.fail("'" + t.kind + "' needs more arguments");
      }
      const auto& [tok, col] = args[k];
      if (a == Arg::Int || a == Arg::OptInt) {
        if (!all_digits(tok) || tok.size() > 6) {
          if (optional) continue;
          throw ParseError(c.l.line, col, "expected a non-negative integer");
        }
        ++k;
        continue;
      }
      if (a == Arg::OptWord) {
        if (sig.words.count(tok)) ++k;
        continue;
      }
      auto it = env_->symbols.find(tok);
      if (it == env_->symbols.end())
        throw ParseError(c.l.line, col, "'" + tok + "' is not declared before this line");
      const auto kinds = accepted(a);
      if (std::find(kinds.begin(), kinds.end(), it->second.kind) == kinds.end())
        throw ParseError(c.l.line, col,
                         "'" + tok + "' is " + kind_name(it->second.kind) + ", expected " + kind_name(kinds.front()));
      if (!first_kind) first_kind = it->second.kind;
      if (it->second.task) {
        if (std::find(t.deps.begin(), t.deps.end(), it->second.task) == t.deps.end())
          t.deps.push_back(it->second.task);
        objs.push_back(nullptr);
      } else {
        objs.push_back(&env_->objects.at(tok));
      }
      ++k;
    }
    if (k < args.size()) throw ParseError(c.l.line, args[k].second, "unexpected argument '" + args[k].first + "'");
    for (const auto& a : args) t.args.push_back(a.first);
    if ((t.kind == "idem-check" || t.kind == "idem-witness") && objs[0] && objs[1] &&
        std::get<detail::Elem<S>>(*objs[1]).alg != std::get<AlgebraPtr<S>>(*objs[0]))
      throw ValidationError("the idempotent lives over another algebra");
    if (t.as) env_->symbols[*t.as] = {sig.produces_arg_kind ? *first_kind : *sig.produces, t.index};
    tasks_.push_back(std::move(t));
  }
};

// ---------------------------------------------------------------------------
// Running tasks

Status status_of(Verdict v) {
  return v == Verdict::Pass ? Status::Pass : v == Verdict::Fail ? Status::Fail : Status::Unresolved;
}

void fill(TaskReport& r, const Report& rep) {
  r.verdict = to_string(rep.verdict);
  r.status = status_of(rep.verdict);
  r.level = rep.level;
  r.checks = rep.checks;
}

Json certificate(const std::optional<Periodicity>& p) {
  return Json{{"first", p->first}, {"second", p->second}};
}

template <class S>
class Runner {
 public:
  Runner(const Env<S>& env, const RunOptions& opt) : env_(env), opt_(opt) {}

  TaskReport run(const TaskSpec& t) {
    TaskReport r;
    r.index = t.index;
    r.kind = t.kind;
    r.args = t.args;
    r.as = t.as;
    r.cutoff = t.cutoff ? *t.cutoff : opt_.cutoff.value_or(50);
    r.seed = t.seed ? *t.seed : opt_.seed.value_or(0);
    const auto start = std::chrono::steady_clock::now();
    try {
      exec(t, r);
    } catch (const HypothesisFailed& e) {
      r.verdict = "hypothesis_failed";
      r.status = Status::Fail;
      r.checks.push_back({"hypotheses", Verdict::Fail, e.what()});
    } catch (const ConstructionExhausted& e) {
      r.verdict = "construction_exhausted";
      r.status = Status::Unresolved;
      r.checks.push_back({"construction", Verdict::Unresolved, e.what()});
    } catch (const Error& e) {
      r.verdict = "error";
      r.status = Status::Error;
      r.error = e.kind() + ": " + e.what();
    } catch (const std::exception& e) {
      r.verdict = "error";
      r.status = Status::Error;
      r.error = e.what();
    }
    if (opt_.timing)
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  const Env<S>& env_;
  RunOptions opt_;
  std::mutex mu_;
  std::map<std::string, Entity<S>> produced_;

  Entity<S> lookup(const std::string& name) {
    auto it = env_.objects.find(name);
    if (it != env_.objects.end()) return it->second;
    std::lock_guard<std::mutex> lock(mu_);
    auto p = produced_.find(name);
    if (p == produced_.end())
      throw ConstructionExhausted("'" + name + "' is unavailable: the task producing it did not finish");
    return p->second;
  }

  void store(const TaskSpec& t, Entity<S> e) {
    if (!t.as) return;
    std::lock_guard<std::mutex> lock(mu_);
    produced_[*t.as] = std::move(e);
  }

  AlgebraPtr<S> alg(const std::string& n) { return std::get<AlgebraPtr<S>>(lookup(n)); }
  Witness<S> wit(const std::string& n) { return std::get<Witness<S>>(lookup(n)); }
  Bimod<S> bimod(const std::string& n) { return std::get<Bimod<S>>(lookup(n)); }
  Complex<S> cx(const std::string& n) { return std::get<Complex<S>>(lookup(n)); }
  Module<S> module_of(const std::string& n) {
    auto e = lookup(n);
    if (auto* m = std::get_if<Module<S>>(&e)) return *m;
    return std::get<Bimod<S>>(e).module;
  }

  static Json witness_dims(const Witness<S>& w) {
    return {{"a", w.a->dim()}, {"b", w.b->dim()}, {"m", w.m.module.dim()}, {"n", w.n.module.dim()}};
  }

  void exec(const TaskSpec& t, TaskReport& r) {
    const auto& k = t.kind;
    const auto& a = t.args;
    const int cutoff = r.cutoff;
    const std::uint64_t seed = r.seed;
    auto word = [&](std::size_t i, const char* dflt) -> std::string { return i < a.size() ? a[i] : dflt; };

    if (k == "check-algebra") {
      check_algebra(alg(a[0]), r);
    } else if (k == "pd") {
      auto m = module_of(a[0]);
      auto pd = projective_dimension<S>(m, cutoff, seed);
      r.extra["dimensions"] = {{"module", m.dim()}};
      if (pd.finite()) {
        r.verdict = "finite";
        r.status = Status::Pass;
        r.level = pd.level();
      } else if (pd.periodic) {
        r.verdict = "infinite";
        r.status = Status::Fail;
        r.extra["certificate"] = certificate(pd.periodic);
      } else {
        r.verdict = "exceeds_cutoff";
        r.status = Status::Unresolved;
      }
      r.checks.push_back({"projective dimension", status_verdict(r.status), pd.describe()});
    } else if (k == "syzygy") {
      const int n = std::stoi(a[1]);
      auto e = lookup(a[0]);
      Module<S> m, out;
      if (auto* x = std::get_if<Module<S>>(&e)) {
        m = *x;
        out = syzygy<S>(m, n);
        store(t, out);
      } else {
        const auto& b = std::get<Bimod<S>>(e);
        m = b.module;
        auto s = bimod_syzygy<S>(b, n);
        out = s.module;
        store(t, s);
      }
      r.verdict = "computed";
      r.status = Status::Pass;
      r.extra["dimensions"] = {
          {"module", m.dim()}, {"syzygy", out.dim()}, {"stable_core", strip_projectives<S>(out).core.dim()}};
    } else if (k == "perfect") {
      auto c = cx(a[0]);
      const std::string mode = word(1, "algebra");
      Perfection p;
      if (mode == "left" || mode == "right")
        p = is_perfect<S>(restrict_complex<S>(c, mode == "left" ? Side::Left : Side::Right), cutoff, seed);
      else if (mode == "simples")
        p = perf_env_simples<S>(c, cutoff, seed);
      else if (mode == "direct")
        p = perf_env_direct<S>(c, cutoff, seed);
      else
        p = is_perfect<S>(c, cutoff, seed);
      r.verdict = p.perfect() ? "perfect" : "not_perfect_within_cutoff";
      r.status = status_of(from_perfection(p));
      r.extra["mode"] = mode;
      if (p.perfect()) {
        r.extra["bound"] = p.bound;
        r.extra["zero"] = p.zero;
      }
      if (p.periodic) r.extra["certificate"] = certificate(p.periodic);
      Json dims = Json::object();
      for (int n = c.lo(); n <= c.hi(); ++n) dims[std::to_string(n)] = c.term(n).dim();
      r.extra["dimensions"] = dims;
      r.checks.push_back({"perfect", from_perfection(p), describe(p)});
    } else if (k == "vdim") {
      auto v = vdim<S>(alg(a[0]), cutoff);
      r.verdict = v ? "gorenstein" : "exceeds_cutoff";
      r.status = v ? Status::Pass : Status::Unresolved;
      if (v) r.level = *v;
    } else if (k == "gorenstein") {
      auto al = alg(a[0]);
      ProjDim left = inj_dim<S>(regular_module<S>(al), cutoff, seed);
      ProjDim right = inj_dim<S>(regular_module<S>(opposite<S>(al)), cutoff, seed);
      r.checks.push_back({"injective dimension of A as a left module", left.finite() ? Verdict::Pass : left.periodic ? Verdict::Fail : Verdict::Unresolved, left.describe()});
      r.checks.push_back({"injective dimension of A as a right module", right.finite() ? Verdict::Pass : right.periodic ? Verdict::Fail : Verdict::Unresolved, right.describe()});
      if (left.finite() && right.finite() && left.level() != right.level())
        throw ZaksViolated("injective dimensions " + std::to_string(left.level()) + " and " +
                           std::to_string(right.level()) + " differ");
      if (left.finite() && right.finite()) {
        r.verdict = "gorenstein";
        r.status = Status::Pass;
        r.level = left.level();
      } else if (left.periodic || right.periodic) {
        r.verdict = "not_gorenstein";
        r.status = Status::Fail;
      } else {
        r.verdict = "not_gorenstein_within_cutoff";
        r.status = Status::Unresolved;
      }
    } else if (k == "mcm") {
      auto e = lookup(a[0]);
      Tri res;
      if (auto* w = std::get_if<Witness<S>>(&e)) {
        res = mcm_bimodule_check<S>(w->m, w->n, cutoff);
        r.extra["dimensions"] = witness_dims(*w);
      } else {
        auto m = module_of(a[0]);
        res = is_mcm<S>(m, cutoff) ? Tri::True : Tri::False;
        r.extra["dimensions"] = {{"module", m.dim()}};
      }
      r.verdict = res == Tri::True ? "mcm" : res == Tri::False ? "not_mcm" : "unknown";
      r.status = status_of(from_tri(res));
    } else if (k == "sing-equiv") {
      const std::string mode = word(1, "simples");
      const EnvMode em = mode == "direct" ? EnvMode::Direct : mode == "gorenstein" ? EnvMode::Gorenstein : EnvMode::Simples;
      fill(r, singular_equivalence_check<S>(cx(a[0]), cutoff, em, seed));
      r.extra["mode"] = mode;
    } else if (k == "hom-check") {
      fill(r, hom_singular_check<S>(std::get<AlgebraHom<S>>(lookup(a[0])), cutoff, seed));
    } else if (k == "idem-check") {
      fill(r, idempotent_singular_check<S>(alg(a[0]), std::get<detail::Elem<S>>(lookup(a[1])).v, cutoff, seed));
    } else if (k == "idem-witness") {
      const std::string w = word(2, "");
      std::optional<IdempotentRoute> route;
      if (w == "first") route = IdempotentRoute::First;
      if (w == "second") route = IdempotentRoute::Second;
      auto iw = idempotent_witness<S>(alg(a[0]), std::get<detail::Elem<S>>(lookup(a[1])).v, cutoff, seed, route);
      fill(r, iw.built.report);
      r.extra["route"] = to_string(iw.route);
      r.extra["dimensions"] = witness_dims(iw.built.witness);
      r.extra["pd"] = {{"lambda_e_over_corner", iw.data.pd_lam_e_right.describe()},
                       {"e_lambda_over_corner", iw.data.pd_e_lam_left.describe()},
                       {"quotient_over_enveloping", iw.data.pd_quotient.describe()}};
      store(t, iw.built.witness);
    } else if (k == "morita-witness") {
      const MoritaCorner corner = word(4, "top-left") == "bottom-right" ? MoritaCorner::BottomRight : MoritaCorner::TopLeft;
      auto mw = morita_witness<S>(alg(a[0]), alg(a[1]), bimod(a[2]).module, bimod(a[3]).module, corner, cutoff, seed);
      fill(r, mw.idem.built.report);
      r.extra["route"] = to_string(mw.idem.route);
      r.extra["ring_dim"] = mw.ring->dim();
      if (mw.formula_level) {
        r.extra["formula_level"] = *mw.formula_level;
        r.extra["formula_verdict"] = to_string(mw.formula_report->verdict);
      }
      r.extra["dimensions"] = witness_dims(mw.idem.built.witness);
      store(t, mw.idem.built.witness);
    } else if (k == "build-witness") {
      BuildOptions bo;
      if (a.size() > 1) bo.s = std::stoi(a[1]);
      if (a.size() > 2) bo.s_prime = std::stoi(a[2]);
      auto bw = build_witness<S>(cx(a[0]), cutoff, seed, bo);
      fill(r, bw.report);
      r.extra["s"] = bw.s;
      r.extra["s_prime"] = bw.s_prime;
      r.extra["dimensions"] = witness_dims(bw.witness);
      store(t, bw.witness);
    } else if (k == "verify-witness") {
      auto w = wit(a[0]);
      fill(r, verify_witness<S>(w, seed, cutoff));
      r.extra["dimensions"] = witness_dims(w);
    } else if (k == "corollary-witness") {
      auto cw = corollary_witness<S>(alg(a[0]), alg(a[1]), bimod(a[2]), cutoff, seed);
      fill(r, cw.report);
      r.extra["dimensions"] = witness_dims(cw.witness);
      store(t, cw.witness);
    } else if (k == "downstream-check") {
      auto w = wit(a[0]);
      std::vector<std::pair<std::string, Module<S>>> xs;
      if (a.size() > 1)
        xs.emplace_back(a[1], module_of(a[1]));
      else
        for (Index v = 0; v < w.a->num_vertices(); ++v)
          xs.emplace_back("simple " + w.a->vertex_label(v), simple_module<S>(w.a, v));
      Report rep;
      rep.level = w.level;
      for (const auto& [name, x] : xs)
        rep.add("N (x) M (x) " + name + " = Omega^l", from_tri(downstream_check<S>(w, x, seed)));
      rep.verdict = rep.conjunction();
      fill(r, rep);
    } else {
      throw UnknownTask("no task kind '" + k + "'");
    }
  }

  static Verdict status_verdict(Status s) {
    return s == Status::Pass ? Verdict::Pass : s == Status::Fail ? Verdict::Fail : Verdict::Unresolved;
  }

  void check_algebra(const AlgebraPtr<S>& a, TaskReport& r) {
    const FieldSpec& f = a->field();
    const Index n = a->dim();
    bool assoc = true;
    for (Index i = 0; i < n && assoc; ++i)
      for (Index j = 0; j < n && assoc; ++j)
        assoc = equal<S>(a->left_matrix(a->product(a->basis_vector(i), a->basis_vector(j))),
                         mul<S>(a->left(i), a->left(j)));
    r.checks.push_back({"associative", assoc ? Verdict::Pass : Verdict::Fail, ""});
    const bool unit = equal<S>(a->left_matrix(a->unit()), identity<S>(f, n)) &&
                      equal<S>(a->right_matrix(a->unit()), identity<S>(f, n));
    r.checks.push_back({"two-sided unit", unit ? Verdict::Pass : Verdict::Fail, ""});
    bool idem = true;
    Vec<S> sum = Vec<S>::Constant(n, ScalarTraits<S>::from_int(f, 0));
    for (Index v = 0; v < a->num_vertices(); ++v) {
      sum += a->idempotent(v);
      for (Index w = 0; w < a->num_vertices(); ++w) {
        Vec<S> p = a->product(a->idempotent(v), a->idempotent(w));
        Vec<S> want = v == w ? a->idempotent(v) : Vec<S>::Constant(n, ScalarTraits<S>::from_int(f, 0));
        idem = idem && equal<S>(Mat<S>(p), Mat<S>(want));
      }
    }
    idem = idem && equal<S>(Mat<S>(sum), Mat<S>(a->unit()));
    r.checks.push_back({"orthogonal idempotents summing to 1", idem ? Verdict::Pass : Verdict::Fail, ""});
    const Mat<S>& rad = a->radical();
    const bool codim = n - rad.cols() == a->num_vertices();
    r.checks.push_back({"A / rad A = k^n", codim ? Verdict::Pass : Verdict::Fail,
                        std::to_string(n - rad.cols()) + " vs " + std::to_string(a->num_vertices())});
    // Loewy length: rad^L = 0
    Mat<S> power = rad;
    int loewy = 1;
    while (power.cols() > 0 && loewy <= n + 1) {
      std::vector<Mat<S>> blocks;
      for (Index i = 0; i < rad.cols(); ++i) blocks.push_back(mul<S>(a->left_matrix(rad.col(i)), power));
      power = column_space<S>(hcat<S>(blocks, n));
      ++loewy;
    }
    const bool nil = power.cols() == 0;
    r.checks.push_back({"radical nilpotent", nil ? Verdict::Pass : Verdict::Fail,
                        nil ? "Loewy length " + std::to_string(loewy) : ""});
    Report rep;
    rep.checks = r.checks;
    r.status = status_of(rep.conjunction());
    r.verdict = r.status == Status::Pass ? "valid" : "invalid";
    r.extra["dimensions"] = {{"algebra", n}, {"vertices", a->num_vertices()}, {"radical", rad.cols()}};
    if (nil) r.extra["loewy_length"] = loewy;
  }
};

std::string line_text(const Line& l) {
  std::string s = l.keyword;
  for (const auto& a : l.args) s += " " + a;
  return s;
}

std::vector<int> closure(const std::vector<TaskSpec>& tasks, int target) {
  std::vector<char> need(tasks.size() + 1, 0);
  std::vector<int> stack = {target};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (need[i]) continue;
    need[i] = 1;
    for (int d : tasks[i - 1].deps) stack.push_back(d);
  }
  std::vector<int> out;
  for (int i = 1; i <= static_cast<int>(tasks.size()); ++i)
    if (need[i]) out.push_back(i);
  return out;
}

template <class S>
std::vector<TaskReport> run_indices(const Env<S>& env, const std::vector<TaskSpec>& tasks,
                                    const std::vector<int>& which, const RunOptions& opt) {
  Runner<S> runner(env, opt);
  std::vector<TaskReport> out;
  if (!opt.parallel) {
    for (int i : which) out.push_back(runner.run(tasks[i - 1]));
    return out;
  }
  // waves by dependency depth; reports keep file order
  std::map<int, int> depth;
  int max_depth = 0;
  for (int i : which) {
    int d = 0;
    for (int p : tasks[i - 1].deps) d = std::max(d, depth[p] + 1);
    depth[i] = d;
    max_depth = std::max(max_depth, d);
  }
  std::map<int, TaskReport> done;
  for (int d = 0; d <= max_depth; ++d) {
    std::vector<std::pair<int, std::future<TaskReport>>> wave;
    for (int i : which)
      if (depth[i] == d)
        wave.emplace_back(i, std::async(std::launch::async, [&runner, &tasks, i] { return runner.run(tasks[i - 1]); }));
    for (auto& [i, fut] : wave) done[i] = fut.get();
  }
  for (int i : which) out.push_back(std::move(done[i]));
  return out;
}

std::vector<TaskReport> dispatch(const Workspace& w, const std::vector<int>& which, const RunOptions& opt) {
  return std::visit([&](const auto& env) { return run_indices(*env, w.tasks(), which, opt); }, w.evaluated().env);
}

}  // namespace

Workspace build_workspace(std::vector<Statement> statements, FieldSpec declared, std::optional<FieldSpec> override) {
  Workspace w;
  w.declared_ = declared;
  w.field_ = override.value_or(declared);
  w.statements_ = std::move(statements);
  auto ev = std::make_shared<detail::Evaluated>();
  auto run = [&](auto tag) {
    using S = decltype(tag);
    Evaluator<S> e(w.field_);
    for (const auto& st : w.statements_) e.statement(st);
    ev->env = std::shared_ptr<const Env<S>>(e.env_);
    w.tasks_ = std::move(e.tasks_);
  };
  if (w.field_.kind == FieldSpec::Kind::Prime)
    run(Fp{});
  else
    run(Rational{});
  w.env_ = ev;
  return w;
}

Workspace Workspace::with_field(const FieldSpec& f) const { return build_workspace(statements_, declared_, f); }

FieldSpec parse_field(std::string_view text) {
  auto toks = normalize(lex(text, 1), 1);
  Line l;
  l.keyword = "FIELD";
  l.cols.push_back(1);
  for (const auto& t : toks) {
    l.args.push_back(t.text);
    l.cols.push_back(t.col);
  }
  if (l.args.size() == 1 && all_digits(l.args[0])) {
    l.args.insert(l.args.begin(), "prime");
    l.cols.insert(l.cols.begin() + 1, 1);
  }
  Cursor c{l};
  return field_from(c);
}

Workspace parse_workspace(std::string_view text, std::optional<FieldSpec> field_override) {
  auto statements = structure(text);
  FieldSpec declared;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    Line& h = statements[i].head;
    if (h.keyword != "FIELD") continue;
    if (i != 0) throw ParseError(h.line, h.cols[0], "FIELD must be the first statement");
    Cursor c{h};
    declared = field_from(c);
    if (declared.kind == FieldSpec::Kind::Rational) {
      h.args = {"rational"};
    } else {
      h.args = {"prime", std::to_string(declared.p)};
    }
    h.cols.resize(1 + h.args.size(), h.cols[0]);
  }
  return build_workspace(std::move(statements), declared, field_override);
}

std::string serialize(const Workspace& w) {
  std::string out;
  for (const auto& st : w.statements()) {
    out += line_text(st.head) + "\n";
    for (const auto& l : st.body) out += "  " + line_text(l) + "\n";
  }
  return out;
}

std::vector<Declared> declarations(const Workspace& w) {
  static const char* names[] = {"algebra", "element", "module", "bimodule", "complex", "hom", "witness"};
  return std::visit(
      [](const auto& env) {
        std::vector<std::pair<int, Declared>> out;
        for (const auto& [name, obj] : env->objects) {
          long dim = std::visit(
              [](const auto& x) -> long {
                if constexpr (requires { x->dim(); }) return x->dim();
                else if constexpr (requires { x.v; }) return x.v.size();
                else if constexpr (requires { x.dim(); }) return x.dim();
                else if constexpr (requires { x.module; }) return x.module.dim();
                else if constexpr (requires { x.lo(); }) {
                  long s = 0;
                  for (int n = x.lo(); n <= x.hi(); ++n) s += x.term(n).dim();
                  return s;
                } else if constexpr (requires { x.matrix; }) return x.source->dim();
                else return x.level;
              },
              obj);
          out.push_back({env->symbols.at(name).order, {name, names[obj.index()], dim}});
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Declared> res;
        for (auto& p : out) res.push_back(p.second);
        return res;
      },
      w.evaluated().env);
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Unresolved: return "unresolved";
    case Status::Error: return "error";
  }
  return "?";
}

nlohmann::ordered_json TaskReport::json() const {
  Json j;
  j["task"] = index;
  j["kind"] = kind;
  j["args"] = args;
  if (as) j["as"] = *as;
  j["verdict"] = verdict;
  j["status"] = to_string(status);
  if (level) j["level"] = *level;
  j["cutoff"] = cutoff;
  j["seed"] = seed;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json cj{{"name", c.name}, {"verdict", to_string(c.verdict)}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cs.push_back(cj);
  }
  j["checks"] = cs;
  if (!error.empty()) j["error"] = error;
  if (seconds) j["seconds"] = *seconds;
  return j;
}

std::string TaskReport::text() const {
  std::string s = "[" + std::to_string(index) + "] " + kind;
  for (const auto& a : args) s += " " + a;
  s += ": " + verdict;
  if (verdict != to_string(status)) s += std::string(" (") + to_string(status) + ")";
  if (level) s += ", level " + std::to_string(*level);
  s += "\n";
  for (const auto& c : checks) {
    std::string v = to_string(c.verdict);
    v.resize(11, ' ');
    s += "    " + v + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]") + "\n";
  }
  if (!error.empty()) s += "    " + error + "\n";
  if (seconds) s += "    " + std::to_string(*seconds) + " s\n";
  return s;
}

TaskReport run_task(const Workspace& w, const std::string& task, const RunOptions& opt) {
  int target = 0;
  const int n = static_cast<int>(w.tasks().size());
  if (all_digits(task) && task.size() < 9 && std::stoi(task) >= 1 && std::stoi(task) <= n) target = std::stoi(task);
  for (const auto& t : w.tasks())
    if (t.as && *t.as == task) target = t.index;
  if (!target) throw UnknownTask("no task '" + task + "'");
  RunOptions seq = opt;
  seq.parallel = false;
  return dispatch(w, closure(w.tasks(), target), seq).back();
}

std::vector<TaskReport> run_all(const Workspace& w, const RunOptions& opt) {
  std::vector<int> all;
  for (const auto& t : w.tasks()) all.push_back(t.index);
  return dispatch(w, all, opt);
}

std::string reports_json(const Workspace& w, const std::vector<TaskReport>& reports) {
  Json j;
  j["schema"] = 1;
  j["field"] = w.field().describe();
  Json rs = Json::array();
  for (const auto& r : reports) rs.push_back(r.json());
  j["reports"] = rs;
  return j.dump(2) + "\n";
}

int exit_code(const std::vector<TaskReport>& reports) {
  bool fail = false, open = false;
  for (const auto& r : reports) {
    if (r.status == Status::Error) return 3;
    fail = fail || r.status == Status::Fail;
    open = open || r.status == Status::Unresolved;
  }
  return fail ? 1 : open ? 2 : 0;
}

}  // namespace singeq
