#include "twocat/catml.hpp"

#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace twocat {

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

struct Block {
  std::string source;
  int line = 0;
  std::vector<Token> header;  // inside the brackets
  std::vector<Line> body;
};

std::string where(const std::string& source, int line, int column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": ";
}

[[noreturn]] void syntax_error(const std::string& source, int line, int column, const std::string& message) {
  throw Error(ErrorCode::SyntaxError, where(source, line, column) + message);
}

std::vector<Token> tokenize(std::string_view text, int first_column) {
  std::vector<Token> out;
  std::size_t n = 0;
  while (n < text.size()) {
    while (n < text.size() && (text[n] == ' ' || text[n] == '\t' || text[n] == '\r')) ++n;
    if (n >= text.size() || text[n] == '#') break;
    const std::size_t start = n;
    while (n < text.size() && text[n] != ' ' && text[n] != '\t' && text[n] != '\r') ++n;
    out.push_back({std::string(text.substr(start, n - start)), first_column + static_cast<int>(start)});
  }
  return out;
}

std::vector<Block> lex(std::string_view text, const std::string& source) {
  std::vector<Block> blocks;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (raw[first] == '[') {
      const std::size_t close = raw.find(']', first);
      if (close == std::string_view::npos) syntax_error(source, number, static_cast<int>(first) + 1, "unclosed block header");
      if (!tokenize(raw.substr(close + 1), static_cast<int>(close) + 2).empty())
        syntax_error(source, number, static_cast<int>(close) + 2, "text after block header");
      Block b;
      b.source = source;
      b.line = number;
      b.header = tokenize(raw.substr(first + 1, close - first - 1), static_cast<int>(first) + 2);
      if (b.header.size() < 2) syntax_error(source, number, static_cast<int>(first) + 1, "block header needs a kind and a name");
      blocks.push_back(std::move(b));
    } else {
      if (blocks.empty()) syntax_error(source, number, static_cast<int>(first) + 1, "statement outside of a block");
      blocks.back().body.push_back({number, tokenize(raw, 1)});
    }
    if (end == text.size()) break;
  }
  return blocks;
}

// "x=m" entries after a ':' token.
Assignments parse_entries(const Block& b, const Line& l, std::size_t from) {
  Assignments out;
  for (std::size_t n = from; n < l.tokens.size(); ++n) {
    const auto& t = l.tokens[n];
    const auto eq = t.text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == t.text.size())
      syntax_error(b.source, l.number, t.column, "expected name=morphism, got '" + t.text + "'");
    out.emplace_back(t.text.substr(0, eq), t.text.substr(eq + 1));
  }
  return out;
}

void expect(const Block& b, const Line& l, std::size_t index, std::string_view text) {
  if (index >= l.tokens.size() || l.tokens[index].text != text) {
    const int col = index < l.tokens.size() ? l.tokens[index].column
                                            : (l.tokens.empty() ? 1 : l.tokens.back().column + 1);
    syntax_error(b.source, l.number, col, "expected '" + std::string(text) + "'");
  }
}

void expect_size(const Block& b, const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    syntax_error(b.source, l.number, l.tokens.front().column,
                 "'" + l.tokens.front().text + "' takes " + std::to_string(n - 1) + " tokens");
}

std::string identity_aware_name(const FinCategory& c, MorId m) {
  return c.is_identity(m) ? "id_" + c.object_name(c.dom(m)) : c.morphism_name(m);
}

// A word is a path of generators in application order.
struct Word {
  ObjId dom = 0;
  ObjId cod = 0;
  std::vector<int> letters;
  auto operator<=>(const Word&) const = default;
};

class Presentation {
 public:
  Presentation(const Block& b, int max_elab) : block_(b), max_elab_(max_elab) {}

  CatRef elaborate() {
    const std::string& name = block_.header[1].text;
    for (const auto& l : block_.body) {
      const std::string& kw = l.tokens.front().text;
      if (kw == "objects") {
        expect(block_, l, 1, "=");
        for (std::size_t n = 2; n < l.tokens.size(); ++n) add_object(l, l.tokens[n]);
      } else if (kw == "gen") {
        expect_size(block_, l, 6);
        expect(block_, l, 2, ":");
        expect(block_, l, 4, "->");
        if (gen_index_.contains(l.tokens[1].text))
          throw Error(ErrorCode::DuplicateIdentifier,
                      where(block_.source, l.number, l.tokens[1].column) + "generator " + l.tokens[1].text +
                          " declared twice",
                      {l.tokens[1].text});
        gen_index_[l.tokens[1].text] = static_cast<int>(gens_.size());
        gens_.push_back({l.tokens[1].text, object(l, l.tokens[3]), object(l, l.tokens[5])});
      } else if (kw == "rel") {
        expect_size(block_, l, 4);
        expect(block_, l, 2, "=");
        Word lhs = path(l, l.tokens[1]);
        Word rhs = path(l, l.tokens[3]);
        if (lhs.dom != rhs.dom || lhs.cod != rhs.cod)
          throw Error(ErrorCode::BadEndpoints,
                      where(block_.source, l.number, l.tokens[1].column) + "relation sides have different endpoints");
        if (lhs.letters.empty())
          syntax_error(block_.source, l.number, l.tokens[1].column, "relation must rewrite a nonempty path");
        rules_.emplace_back(std::move(lhs.letters), std::move(rhs.letters));
      } else {
        syntax_error(block_.source, l.number, l.tokens.front().column, "unknown statement '" + kw + "' in presentation");
      }
    }

    std::vector<Word> words;
    std::map<Word, MorId> index;
    std::deque<MorId> queue;
    auto add = [&](Word w) {
      if (index.contains(w)) return;
      if (static_cast<int>(words.size()) >= max_elab_)
        throw Error(ErrorCode::ElaborationDiverges,
                    where(block_.source, block_.line, 1) + "presentation " + name + " has more than " +
                        std::to_string(max_elab_) + " morphisms");
      index[w] = static_cast<MorId>(words.size());
      queue.push_back(static_cast<MorId>(words.size()));
      words.push_back(std::move(w));
    };
    for (ObjId o = 0; o < static_cast<ObjId>(objects_.size()); ++o) add({o, o, {}});
    while (!queue.empty()) {
      const Word w = words[queue.front()];
      queue.pop_front();
      for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
        if (gens_[g].dom != w.cod) continue;
        Word next = w;
        next.letters.push_back(g);
        next.cod = gens_[g].cod;
        normalize(next.letters);
        add(std::move(next));
      }
    }

    CategoryBuilder builder(name);
    for (const auto& o : objects_) builder.add_object(o);
    for (const Word& w : words) {
      if (w.letters.empty()) {
        builder.add_identity(w.dom);
        continue;
      }
      std::string label;
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        label += (label.empty() ? "" : ".") + gens_[*it].name;
      builder.add_morphism(label, w.dom, w.cod);
    }
    for (const Word& f : words)
      for (const Word& g : words) {
        if (g.dom != f.cod) continue;
        Word h{f.dom, g.cod, f.letters};
        h.letters.insert(h.letters.end(), g.letters.begin(), g.letters.end());
        normalize(h.letters);
        auto it = index.find(h);
        if (it == index.end()) throw Error(ErrorCode::InternalInvariant, "normal form missing from elaboration");
        builder.set_compose(index.at(g), index.at(f), it->second);
      }
    return std::move(builder).build();
  }

 private:
  struct Gen {
    std::string name;
    ObjId dom, cod;
  };

  void add_object(const Line& l, const Token& t) {
    for (const auto& o : objects_)
      if (o == t.text)
        throw Error(ErrorCode::DuplicateIdentifier,
                    where(block_.source, l.number, t.column) + "object " + t.text + " declared twice", {t.text});
    objects_.push_back(t.text);
  }

  ObjId object(const Line& l, const Token& t) const {
    for (std::size_t o = 0; o < objects_.size(); ++o)
      if (objects_[o] == t.text) return static_cast<ObjId>(o);
    throw Error(ErrorCode::UnresolvedReference,
                where(block_.source, l.number, t.column) + "unknown object " + t.text, {t.text});
  }

  Word path(const Line& l, const Token& t) const {
    if (t.text.starts_with("id_")) {
      for (std::size_t o = 0; o < objects_.size(); ++o)
        if ("id_" + objects_[o] == t.text) return {static_cast<ObjId>(o), static_cast<ObjId>(o), {}};
    }
    std::vector<std::string> parts;
    std::stringstream ss(t.text);
    for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
    Word w;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      auto g = gen_index_.find(*it);
      if (g == gen_index_.end())
        throw Error(ErrorCode::UnresolvedReference,
                    where(block_.source, l.number, t.column) + "unknown generator " + *it, {*it});
      const Gen& gen = gens_[g->second];
      if (w.letters.empty())
        w.dom = gen.dom;
      else if (gen.dom != w.cod)
        throw Error(ErrorCode::BadEndpoints,
                    where(block_.source, l.number, t.column) + "path " + t.text + " is not composable");
      w.cod = gen.cod;
      w.letters.push_back(g->second);
    }
    return w;
  }

  void normalize(std::vector<int>& letters) const {
    for (int steps = 0;; ++steps) {
      if (steps > 100 * max_elab_)
        throw Error(ErrorCode::ElaborationDiverges,
                    where(block_.source, block_.line, 1) + "rewriting does not terminate");
      bool changed = false;
      for (std::size_t at = 0; at < letters.size() && !changed; ++at)
        for (const auto& [lhs, rhs] : rules_) {
          if (at + lhs.size() > letters.size() || !std::equal(lhs.begin(), lhs.end(), letters.begin() + at))
            continue;
          std::vector<int> next(letters.begin(), letters.begin() + at);
          next.insert(next.end(), rhs.begin(), rhs.end());
          next.insert(next.end(), letters.begin() + at + lhs.size(), letters.end());
          letters = std::move(next);
          changed = true;
          break;
        }
      if (!changed) return;
    }
  }

  const Block& block_;
  int max_elab_;
  std::vector<std::string> objects_;
  std::vector<Gen> gens_;
  std::map<std::string, int> gen_index_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> rules_;
};

}  // namespace

MorId resolve_morphism(const FinCategory& c, std::string_view token) {
  if (auto m = c.find_morphism(token)) return *m;
  if (token.starts_with("id_"))
    if (auto o = c.find_object(token.substr(3))) return c.id(*o);
  if (token.find('.') == std::string_view::npos)
    throw Error(ErrorCode::UnresolvedReference, "no morphism " + std::string(token) + " in " + c.name(),
                {std::string(token)});
  std::optional<MorId> acc;
  std::string rest(token);
  std::vector<std::string> parts;
  std::stringstream ss(rest);
  for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    const MorId m = resolve_morphism(c, *it);
    if (acc && !c.composable(m, *acc))
      throw Error(ErrorCode::BadEndpoints, "path " + std::string(token) + " is not composable in " + c.name(),
                  {std::string(token)});
    acc = acc ? c.compose(m, *acc) : m;
  }
  return *acc;
}

// ---------------------------------------------------------------------------

class WorkspaceBuilder {
 public:
  explicit WorkspaceBuilder(ParseOptions options) : options_(options) {}

  void add(std::vector<Block> blocks) {
    for (auto& b : blocks) {
      const std::string& kind = b.header[0].text;
      static const std::set<std::string> kinds{"category", "presentation", "functor", "nat",
                                               "pseudofunctor", "cocone", "cone"};
      if (!kinds.contains(kind)) syntax_error(b.source, b.line, b.header[0].column, "unknown block kind '" + kind + "'");
      for (const auto& l : b.body)
        if (l.tokens.empty()) syntax_error(b.source, l.number, 1, "empty statement");
      blocks_.push_back(std::move(b));
    }
  }

  Workspace finish() && {
    for (const char* kind : {"category", "presentation", "functor", "nat", "pseudofunctor", "cocone", "cone"})
      for (const auto& b : blocks_)
        if (b.header[0].text == kind) resolve(b);
    return std::move(w_);
  }

 private:
  [[noreturn]] void unresolved(const Block& b, int line, int column, const std::string& what) const {
    throw Error(ErrorCode::UnresolvedReference, where(b.source, line, column) + what);
  }

  void claim(const Block& b, char kind, std::size_t slot) {
    const Token& name = b.header[1];
    if (w_.names_.contains(name.text))
      throw Error(ErrorCode::DuplicateIdentifier,
                  where(b.source, b.line, name.column) + "name " + name.text + " is already defined", {name.text});
    w_.names_[name.text] = {kind, slot};
  }

  // Wraps module errors with the block location.
  template <class F>
  auto located(const Block& b, int line, F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      if (e.message().starts_with(b.source + ":")) throw;
      throw Error(e.code(), where(b.source, line, 1) + e.message(), e.witness());
    }
  }

  void header_shape(const Block& b, std::initializer_list<std::string_view> fixed) const {
    // fixed lists the tokens after the name, "" meaning any identifier
    std::size_t n = 2;
    for (auto want : fixed) {
      if (n >= b.header.size()) syntax_error(b.source, b.line, b.header.back().column, "incomplete block header");
      if (!want.empty() && b.header[n].text != want)
        syntax_error(b.source, b.line, b.header[n].column, "expected '" + std::string(want) + "' in block header");
      ++n;
    }
    if (n != b.header.size()) syntax_error(b.source, b.line, b.header[n].column, "unexpected text in block header");
  }

  const CatRef& category_ref(const Block& b, const Token& t) const {
    auto it = w_.names_.find(t.text);
    if (it == w_.names_.end() || it->second.first != 'C') unresolved(b, b.line, t.column, "unknown category " + t.text);
    return w_.categories_[it->second.second].second;
  }

  const FunctorEntry& functor_ref(const Block& b, int line, const Token& t) const {
    auto it = w_.names_.find(t.text);
    if (it == w_.names_.end() || it->second.first != 'F') unresolved(b, line, t.column, "unknown functor " + t.text);
    return w_.functors_[it->second.second];
  }

  const FunctorEntry& functor_ref(const Block& b, int line, const std::string& name) const {
    return functor_ref(b, line, Token{name, 1});
  }

  ObjId object_in(const Block& b, int line, int column, const FinCategory& c, const std::string& name) const {
    auto o = c.find_object(name);
    if (!o) unresolved(b, line, column, "no object " + name + " in " + c.name());
    return *o;
  }

  MorId morphism_in(const Block& b, int line, int column, const FinCategory& c, const std::string& name) const {
    try {
      return resolve_morphism(c, name);
    } catch (const Error& e) {
      throw Error(e.code(), where(b.source, line, column) + e.message(), e.witness());
    }
  }

  void resolve(const Block& b) {
    const std::string& kind = b.header[0].text;
    if (kind == "category") return category(b);
    if (kind == "presentation") return presentation(b);
    if (kind == "functor") return functor(b);
    if (kind == "nat") return nat(b);
    if (kind == "pseudofunctor") return pseudofunctor(b);
    if (kind == "cocone") return cocone(b);
    return cone(b);
  }

  void category(const Block& b) {
    header_shape(b, {});
    RawCategory raw;
    raw.name = b.header[1].text;
    std::set<std::string> objects, morphisms;
    for (const auto& l : b.body) {
      const std::string& kw = l.tokens.front().text;
      if (kw == "objects") {
        expect(b, l, 1, "=");
        for (std::size_t n = 2; n < l.tokens.size(); ++n) {
          if (!objects.insert(l.tokens[n].text).second)
            throw Error(ErrorCode::DuplicateIdentifier,
                        where(b.source, l.number, l.tokens[n].column) + "object " + l.tokens[n].text + " declared twice",
                        {l.tokens[n].text});
          raw.objects.push_back(l.tokens[n].text);
        }
      } else if (kw == "mor") {
        expect_size(b, l, 6);
        expect(b, l, 2, ":");
        expect(b, l, 4, "->");
        for (int n : {3, 5})
          if (!objects.contains(l.tokens[n].text))
            unresolved(b, l.number, l.tokens[n].column, "unknown object " + l.tokens[n].text);
        if (!morphisms.insert(l.tokens[1].text).second || l.tokens[1].text.starts_with("id_"))
          throw Error(ErrorCode::DuplicateIdentifier,
                      where(b.source, l.number, l.tokens[1].column) + "morphism " + l.tokens[1].text +
                          " declared twice or shadows an identity",
                      {l.tokens[1].text});
        raw.morphisms.push_back({l.tokens[1].text, l.tokens[3].text, l.tokens[5].text});
      } else if (kw == "compose") {
        expect_size(b, l, 5);
        expect(b, l, 3, "=");
        for (int n : {1, 2, 4}) {
          const std::string& t = l.tokens[n].text;
          const bool ident = t.starts_with("id_") && objects.contains(t.substr(3));
          if (!ident && !morphisms.contains(t)) unresolved(b, l.number, l.tokens[n].column, "unknown morphism " + t);
        }
        raw.composites.push_back({l.tokens[1].text, l.tokens[2].text, l.tokens[4].text});
      } else {
        syntax_error(b.source, l.number, l.tokens.front().column, "unknown statement '" + kw + "' in category");
      }
    }
    CatRef c = located(b, b.line, [&] { return validate_category(raw); });
    claim(b, 'C', w_.categories_.size());
    w_.categories_.emplace_back(raw.name, std::move(c));
  }

  void presentation(const Block& b) {
    header_shape(b, {});
    Presentation p(b, options_.max_elab);
    CatRef c = located(b, b.line, [&] { return p.elaborate(); });
    claim(b, 'C', w_.categories_.size());
    w_.categories_.emplace_back(b.header[1].text, std::move(c));
  }

  void functor(const Block& b) {
    header_shape(b, {":", "", "->", ""});
    const CatRef& src = category_ref(b, b.header[3]);
    const CatRef& dst = category_ref(b, b.header[5]);
    Assignments objs, mors;
    std::vector<ObjId> om(src->num_objects(), -1);
    std::vector<MorId> mm(src->num_morphisms(), -1);
    for (const auto& l : b.body) {
      const std::string& kw = l.tokens.front().text;
      if (kw != "obj" && kw != "mor")
        syntax_error(b.source, l.number, l.tokens.front().column, "unknown statement '" + kw + "' in functor");
      expect_size(b, l, 4);
      expect(b, l, 2, "=");
      if (kw == "obj") {
        om[object_in(b, l.number, l.tokens[1].column, *src, l.tokens[1].text)] =
            object_in(b, l.number, l.tokens[3].column, *dst, l.tokens[3].text);
        objs.emplace_back(l.tokens[1].text, l.tokens[3].text);
      } else {
        mm[morphism_in(b, l.number, l.tokens[1].column, *src, l.tokens[1].text)] =
            morphism_in(b, l.number, l.tokens[3].column, *dst, l.tokens[3].text);
        mors.emplace_back(l.tokens[1].text, l.tokens[3].text);
      }
    }
    for (ObjId o = 0; o < src->num_objects(); ++o)
      if (om[o] < 0) unresolved(b, b.line, 1, "functor " + b.header[1].text + " has no image for object " + src->object_name(o));
    for (MorId m = 0; m < src->num_morphisms(); ++m) {
      if (mm[m] >= 0) continue;
      if (src->is_identity(m)) {
        mm[m] = dst->id(om[src->dom(m)]);
        continue;
      }
      // composites of a presentation are named g.f; use the images of the parts
      std::optional<MorId> image;
      std::stringstream parts(src->morphism_name(m));
      for (std::string part; std::getline(parts, part, '.');) {
        auto p = src->find_morphism(part);
        if (!p || *p >= m || mm[*p] < 0 || part == src->morphism_name(m)) {
          image.reset();
          break;
        }
        image = image ? dst->compose(*image, mm[*p]) : mm[*p];
      }
      if (!image)
        unresolved(b, b.line, 1, "functor " + b.header[1].text + " has no image for morphism " + src->morphism_name(m));
      mm[m] = *image;
    }
    FinFunctor f = located(b, b.line, [&] { return validate_functor(src, dst, om, mm); });
    claim(b, 'F', w_.functors_.size());
    w_.functors_.push_back({b.header[1].text, b.header[3].text, b.header[5].text, std::move(objs), std::move(mors),
                            std::move(f)});
  }

  void nat(const Block& b) {
    header_shape(b, {":", "", "=>", ""});
    const FunctorEntry& f = functor_ref(b, b.line, b.header[3]);
    const FunctorEntry& g = functor_ref(b, b.line, b.header[5]);
    const auto& src = *f.value.source();
    const auto& dst = *f.value.target();
    Assignments comps;
    std::vector<MorId> cm(src.num_objects(), -1);
    for (const auto& l : b.body) {
      if (l.tokens.front().text != "at")
        syntax_error(b.source, l.number, l.tokens.front().column, "unknown statement '" + l.tokens.front().text + "' in nat");
      expect_size(b, l, 4);
      expect(b, l, 2, "=");
      cm[object_in(b, l.number, l.tokens[1].column, src, l.tokens[1].text)] =
          morphism_in(b, l.number, l.tokens[3].column, dst, l.tokens[3].text);
      comps.emplace_back(l.tokens[1].text, l.tokens[3].text);
    }
    for (ObjId o = 0; o < src.num_objects(); ++o)
      if (cm[o] < 0) unresolved(b, b.line, 1, "nat " + b.header[1].text + " has no component at " + src.object_name(o));
    NatTransformation n = located(b, b.line, [&] { return validate_nat(f.value, g.value, cm); });
    claim(b, 'N', w_.nats_.size());
    w_.nats_.push_back({b.header[1].text, f.name, g.name, std::move(comps), std::move(n)});
  }

  std::vector<MorId> cell_components(const Block& b, const Line& l, const Assignments& entries, const FinCategory& objs,
                                     const FinCategory& mors) const {
    std::vector<MorId> out(objs.num_objects(), -1);
    for (const auto& [x, m] : entries) out[object_in(b, l.number, 1, objs, x)] = morphism_in(b, l.number, 1, mors, m);
    for (ObjId o = 0; o < objs.num_objects(); ++o)
      if (out[o] < 0) unresolved(b, l.number, 1, "cell has no component at " + objs.object_name(o));
    return out;
  }

  void pseudofunctor(const Block& b) {
    std::optional<std::string> right;
    CatRef index;
    std::optional<ProductIndex> shape;
    if (b.header.size() == 8) {
      header_shape(b, {":", "", "x", "", "->", "CAT"});
      const std::string& op = b.header[5].text;
      if (!op.ends_with("^op")) syntax_error(b.source, b.line, b.header[5].column, "expected J^op");
      const Token jt{op.substr(0, op.size() - 3), b.header[5].column};
      right = jt.text;
      shape = product_index(category_ref(b, b.header[3]), category_ref(b, jt));
      index = shape->category;
    } else {
      header_shape(b, {":", "", "->", "CAT"});
      index = category_ref(b, b.header[3]);
    }
    const auto& idx = *index;
    const std::string& name = b.header[1].text;
    Assignments at, on;
    std::vector<CellTable> units, comps;
    PseudoFunctorSpec spec;
    spec.index = index;
    std::vector<CatRef> cats(idx.num_objects());
    std::vector<std::optional<FinFunctor>> funs(idx.num_morphisms());
    std::vector<const Line*> unit_lines, comp_lines;
    for (const auto& l : b.body) {
      const std::string& kw = l.tokens.front().text;
      if (kw == "at") {
        expect_size(b, l, 4);
        expect(b, l, 2, "=");
        cats[object_in(b, l.number, l.tokens[1].column, idx, l.tokens[1].text)] = category_ref(b, l.tokens[3]);
        at.emplace_back(l.tokens[1].text, l.tokens[3].text);
      } else if (kw == "on") {
        expect_size(b, l, 4);
        expect(b, l, 2, "=");
        auto m = idx.find_morphism(l.tokens[1].text);
        if (!m) unresolved(b, l.number, l.tokens[1].column, "no morphism " + l.tokens[1].text + " in " + idx.name());
        funs[*m] = functor_ref(b, l.number, l.tokens[3]).value;
        on.emplace_back(l.tokens[1].text, l.tokens[3].text);
      } else if (kw == "unit") {
        expect(b, l, 2, ":");
        units.push_back({{l.tokens[1].text}, parse_entries(b, l, 3)});
        unit_lines.push_back(&l);
      } else if (kw == "comp") {
        expect(b, l, 3, ":");
        comps.push_back({{l.tokens[1].text, l.tokens[2].text}, parse_entries(b, l, 4)});
        comp_lines.push_back(&l);
      } else {
        syntax_error(b.source, l.number, l.tokens.front().column, "unknown statement '" + kw + "' in pseudofunctor");
      }
    }
    for (ObjId o = 0; o < idx.num_objects(); ++o) {
      if (!cats[o]) unresolved(b, b.line, 1, "pseudofunctor " + name + " has no category at " + idx.object_name(o));
      spec.at.push_back(cats[o]);
    }
    for (MorId m = 0; m < idx.num_morphisms(); ++m) {
      if (!funs[m]) {
        if (!idx.is_identity(m))
          unresolved(b, b.line, 1, "pseudofunctor " + name + " has no functor on " + idx.morphism_name(m));
        funs[m] = identity_functor(cats[idx.dom(m)]);
      }
      spec.on.push_back(*funs[m]);
    }
    for (std::size_t n = 0; n < units.size(); ++n) {
      const Line& l = *unit_lines[n];
      const ObjId i = object_in(b, l.number, l.tokens[1].column, idx, units[n].key[0]);
      spec.unit[i] = cell_components(b, l, units[n].entries, *cats[i], *cats[i]);
    }
    for (std::size_t n = 0; n < comps.size(); ++n) {
      const Line& l = *comp_lines[n];
      auto t = idx.find_morphism(comps[n].key[0]);
      auto s = idx.find_morphism(comps[n].key[1]);
      if (!t) unresolved(b, l.number, l.tokens[1].column, "no morphism " + comps[n].key[0] + " in " + idx.name());
      if (!s) unresolved(b, l.number, l.tokens[2].column, "no morphism " + comps[n].key[1] + " in " + idx.name());
      if (idx.dom(*t) != idx.cod(*s))
        throw Error(ErrorCode::BadEndpoints, where(b.source, l.number, l.tokens[1].column) + "comp of non-composable pair");
      spec.comp[{*t, *s}] = cell_components(b, l, comps[n].entries, *cats[idx.dom(*s)], *cats[idx.cod(*t)]);
    }
    PseudoFunctor p = located(b, b.line, [&] { return validate_pseudofunctor(std::move(spec)); });
    std::optional<BiIndexedPseudoFunctor> bi;
    if (shape) bi = located(b, b.line, [&] { return make_biindexed(shape->left, shape->right, p, false); });
    claim(b, 'P', w_.pseudofunctors_.size());
    w_.pseudofunctors_.push_back({name, b.header[3].text, right, std::move(at), std::move(on), std::move(units), std::move(comps),
                                  std::move(p), std::move(bi)});
  }

  const PseudoEntry& pseudo_ref(const Block& b, const Token& t) const {
    auto it = w_.names_.find(t.text);
    if (it == w_.names_.end() || it->second.first != 'P') unresolved(b, b.line, t.column, "unknown pseudofunctor " + t.text);
    return w_.pseudofunctors_[it->second.second];
  }

  // Shared body of cocone and cone blocks: legs by index object, cells by
  // index morphism.
  void legs_and_cells(const Block& b, const FinCategory& idx, Assignments& legs, std::vector<CellTable>& cells,
                      std::vector<std::optional<FinFunctor>>& leg_funs, std::vector<const Line*>& cell_lines) const {
    leg_funs.assign(idx.num_objects(), std::nullopt);
    for (const auto& l : b.body) {
      const std::string& kw = l.tokens.front().text;
      if (kw == "leg") {
        expect_size(b, l, 4);
        expect(b, l, 2, "=");
        leg_funs[object_in(b, l.number, l.tokens[1].column, idx, l.tokens[1].text)] =
            functor_ref(b, l.number, l.tokens[3]).value;
        legs.emplace_back(l.tokens[1].text, l.tokens[3].text);
      } else if (kw == "cell") {
        expect(b, l, 2, ":");
        if (!idx.find_morphism(l.tokens[1].text))
          unresolved(b, l.number, l.tokens[1].column, "no morphism " + l.tokens[1].text + " in " + idx.name());
        cells.push_back({{l.tokens[1].text}, parse_entries(b, l, 3)});
        cell_lines.push_back(&l);
      } else {
        syntax_error(b.source, l.number, l.tokens.front().column, "unknown statement '" + kw + "'");
      }
    }
    for (ObjId o = 0; o < idx.num_objects(); ++o)
      if (!leg_funs[o]) unresolved(b, b.line, 1, b.header[1].text + " has no leg at " + idx.object_name(o));
  }

  void cocone(const Block& b) {
    header_shape(b, {":", "", "->", ""});
    const PseudoEntry& p = pseudo_ref(b, b.header[3]);
    const CatRef& target = category_ref(b, b.header[5]);
    const auto& idx = *p.value.index();
    Assignments legs;
    std::vector<CellTable> cells;
    std::vector<std::optional<FinFunctor>> leg_funs;
    std::vector<const Line*> lines;
    legs_and_cells(b, idx, legs, cells, leg_funs, lines);
    std::vector<FinFunctor> lf;
    for (auto& f : leg_funs) lf.push_back(*f);
    std::map<MorId, std::vector<MorId>> cm;
    for (std::size_t n = 0; n < cells.size(); ++n) {
      const MorId s = *idx.find_morphism(cells[n].key[0]);
      cm[s] = cell_components(b, *lines[n], cells[n].entries, *p.value.at(idx.dom(s)), *target);
    }
    PseudoCocone c = located(b, b.line, [&] { return validate_cocone(p.value, target, std::move(lf), std::move(cm)); });
    claim(b, 'K', w_.cocones_.size());
    w_.cocones_.push_back({b.header[1].text, p.name, b.header[5].text, std::move(legs), std::move(cells), std::move(c)});
  }

  void cone(const Block& b) {
    header_shape(b, {":", "", "->", ""});
    const CatRef& source = category_ref(b, b.header[3]);
    const PseudoEntry& p = pseudo_ref(b, b.header[5]);
    const auto& idx = *p.value.index();
    Assignments legs;
    std::vector<CellTable> cells;
    std::vector<std::optional<FinFunctor>> leg_funs;
    std::vector<const Line*> lines;
    legs_and_cells(b, idx, legs, cells, leg_funs, lines);
    std::vector<FinFunctor> lf;
    for (auto& f : leg_funs) lf.push_back(*f);
    std::map<MorId, std::vector<MorId>> cm;
    for (std::size_t n = 0; n < cells.size(); ++n) {
      const MorId m = *idx.find_morphism(cells[n].key[0]);
      cm[m] = cell_components(b, *lines[n], cells[n].entries, *source, *p.value.at(idx.cod(m)));
    }
    PseudoCone c = located(b, b.line, [&] { return validate_cone(p.value, source, std::move(lf), std::move(cm)); });
    claim(b, 'Q', w_.cones_.size());
    w_.cones_.push_back({b.header[1].text, b.header[3].text, p.name, std::move(legs), std::move(cells), std::move(c)});
  }

  ParseOptions options_;
  std::vector<Block> blocks_;
  Workspace w_;
};

// ---------------------------------------------------------------------------

namespace {

template <class T>
const T& lookup(const std::map<std::string, std::pair<char, std::size_t>>& names, const std::vector<T>& v,
                const std::string& name, char kind, const char* what) {
  auto it = names.find(name);
  if (it == names.end() || it->second.first != kind)
    throw Error(ErrorCode::UnresolvedReference, std::string("unknown ") + what + " " + name, {name});
  return v[it->second.second];
}

}  // namespace

const CatRef& Workspace::category(const std::string& name) const {
  return lookup(names_, categories_, name, 'C', "category").second;
}
const FunctorEntry& Workspace::functor(const std::string& name) const {
  return lookup(names_, functors_, name, 'F', "functor");
}
const NatEntry& Workspace::nat(const std::string& name) const { return lookup(names_, nats_, name, 'N', "nat"); }
const PseudoEntry& Workspace::pseudofunctor(const std::string& name) const {
  return lookup(names_, pseudofunctors_, name, 'P', "pseudofunctor");
}
const CoconeEntry& Workspace::cocone(const std::string& name) const {
  return lookup(names_, cocones_, name, 'K', "cocone");
}
const ConeEntry& Workspace::cone(const std::string& name) const { return lookup(names_, cones_, name, 'Q', "cone"); }

Workspace parse_catml(std::string_view text, std::string source, ParseOptions options) {
  WorkspaceBuilder b(options);
  b.add(lex(text, source));
  return std::move(b).finish();
}

Workspace parse_catml_files(const std::vector<std::string>& paths, ParseOptions options) {
  WorkspaceBuilder b(options);
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::UnresolvedReference, "cannot read " + path, {path});
    std::stringstream ss;
    ss << in.rdbuf();
    b.add(lex(ss.str(), path));
  }
  return std::move(b).finish();
}

// ---------------------------------------------------------------------------

std::string print_category(const FinCategory& c, const std::string& name) {
  std::ostringstream out;
  out << "[category " << name << "]\n";
  out << "objects =";
  for (ObjId o = 0; o < c.num_objects(); ++o) out << ' ' << c.object_name(o);
  out << '\n';
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m))
      out << "mor " << c.morphism_name(m) << " : " << c.object_name(c.dom(m)) << " -> " << c.object_name(c.cod(m))
          << '\n';
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (ObjId o = 0; o < c.num_objects(); ++o)
      for (MorId g : c.hom(c.cod(f), o))
        if (!c.is_identity(g))
          out << "compose " << c.morphism_name(g) << ' ' << c.morphism_name(f) << " = "
              << identity_aware_name(c, c.compose(g, f)) << '\n';
  }
  return out.str();
}

std::string print_functor(const std::string& name, const std::string& source, const std::string& target,
                          const FinFunctor& f) {
  const auto& s = *f.source();
  const auto& t = *f.target();
  std::ostringstream out;
  out << "[functor " << name << " : " << source << " -> " << target << "]\n";
  for (ObjId o = 0; o < s.num_objects(); ++o) out << "obj " << s.object_name(o) << " = " << t.object_name(f.obj(o)) << '\n';
  for (MorId m = 0; m < s.num_morphisms(); ++m)
    if (!s.is_identity(m)) out << "mor " << s.morphism_name(m) << " = " << identity_aware_name(t, f.mor(m)) << '\n';
  return out.str();
}

namespace {

void print_assignments(std::ostream& out, const char* kw, const Assignments& a) {
  for (const auto& [k, v] : a) out << kw << ' ' << k << " = " << v << '\n';
}

void print_cells(std::ostream& out, const char* kw, const std::vector<CellTable>& cells) {
  for (const auto& c : cells) {
    out << kw;
    for (const auto& k : c.key) out << ' ' << k;
    out << " :";
    for (const auto& [x, m] : c.entries) out << ' ' << x << '=' << m;
    out << '\n';
  }
}

}  // namespace

std::string print_catml(const Workspace& w) {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << '\n';
    first = false;
  };
  for (const auto& [name, c] : w.categories()) {
    sep();
    out << print_category(*c, name);
  }
  for (const auto& f : w.functors()) {
    sep();
    out << print_functor(f.name, f.source, f.target, f.value);
  }
  for (const auto& n : w.nats()) {
    sep();
    out << "[nat " << n.name << " : " << n.source << " => " << n.target << "]\n";
    print_assignments(out, "at", n.components);
  }
  for (const auto& p : w.pseudofunctors()) {
    sep();
    out << "[pseudofunctor " << p.name << " : " << p.left;
    if (p.right) out << " x " << *p.right << "^op";
    out << " -> CAT]\n";
    print_assignments(out, "at", p.at);
    print_assignments(out, "on", p.on);
    print_cells(out, "unit", p.units);
    print_cells(out, "comp", p.comps);
  }
  for (const auto& c : w.cocones()) {
    sep();
    out << "[cocone " << c.name << " : " << c.pseudofunctor << " -> " << c.target << "]\n";
    print_assignments(out, "leg", c.legs);
    print_cells(out, "cell", c.cells);
  }
  for (const auto& c : w.cones()) {
    sep();
    out << "[cone " << c.name << " : " << c.source << " -> " << c.pseudofunctor << "]\n";
    print_assignments(out, "leg", c.legs);
    print_cells(out, "cell", c.cells);
  }
  return out.str();
}

}  // namespace twocat
