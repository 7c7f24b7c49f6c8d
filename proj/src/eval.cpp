#include "qcrf/eval.hpp"

#include <cctype>
#include <variant>

#include "qcrf/error.hpp"

namespace qcrf {

namespace {

struct ZeroLiteral {};

using Value = std::variant<ZeroLiteral, Poly, Multivector, DiffForm, Endomorphism, GenSection>;

const char* kind(const Value& v) {
  switch (v.index()) {
    case 0: return "0";
    case 1: return "function";
    case 2: return std::get<Multivector>(v).degree() == 1 ? "vector field" : "multivector";
    case 3: return std::get<DiffForm>(v).degree() == 1 ? "1-form" : "form";
    case 4: return "endomorphism";
    default: return "section";
  }
}

std::string print(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZeroLiteral>) {
          return "0";
        } else {
          return x.str();
        }
      },
      v);
}

class Evaluator {
 public:
  Evaluator(const InstanceDocument& doc, std::string_view text) : doc_(doc), patch_(doc.instance.patch), text_(text) {}

  Value run() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input", pos_);
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'", pos_);
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Value expr() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of expression", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      std::size_t at_first = pos_;
      Value first = expr();
      expect(',');
      std::size_t at_second = pos_;
      Value second = expr();
      expect(')');
      return GenSection{as_vector(first, at_first, true), as_form(second, at_second, true)};
    }
    if (text_.substr(pos_, 3) == "d/d") {
      pos_ += 3;
      std::string name = identifier();
      return basis_vector(patch_, coordinate(name, start));
    }
    if (text_[pos_] == '0' && (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return ZeroLiteral{};
    }
    std::string name = identifier();
    if (name.empty()) fail("expected an expression", start);
    if (accept('(')) {
      std::vector<std::pair<Value, std::size_t>> args;
      if (!accept(')')) {
        do {
          skip_space();
          std::size_t at = pos_;
          args.emplace_back(expr(), at);
        } while (accept(','));
        expect(')');
      }
      return call(name, args, start);
    }
    return lookup(name, start);
  }

  std::size_t coordinate(const std::string& name, std::size_t at) const {
    const auto& names = patch_->names();
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k] == name) return k;
    }
    fail("unknown coordinate '" + name + "'", at);
  }

  Value lookup(const std::string& name, std::size_t at) const {
    const StructureInstance& inst = doc_.instance;
    if (auto it = inst.vectors.find(name); it != inst.vectors.end()) return it->second;
    if (auto it = inst.forms.find(name); it != inst.forms.end()) return it->second;
    if (name == "A") return instance_A(at);
    if (name == "pi") return instance_pi(at);
    if (name == "P") {
      if (!inst.projector_P) fail("the instance declares no P", at);
      return *inst.projector_P;
    }
    if (name.size() > 1 && name[0] == 'd') {
      for (std::size_t k = 0; k < patch_->names().size(); ++k) {
        if (patch_->names()[k] == name.substr(1)) return basis_form(patch_, k);
      }
    }
    fail("unknown name '" + name + "'", at);
  }

  Endomorphism instance_A(std::size_t at) const {
    if (!doc_.has_A) fail("the instance declares no A", at);
    return doc_.instance.A;
  }

  Multivector instance_pi(std::size_t at) const {
    if (!doc_.has_pi) fail("the instance declares no pi", at);
    return doc_.instance.pi;
  }

  Multivector as_vector(const Value& v, std::size_t at, bool zero_ok = false) const {
    if (zero_ok && std::holds_alternative<ZeroLiteral>(v)) return Multivector(patch_, 1);
    if (auto* m = std::get_if<Multivector>(&v); m && m->degree() == 1) return *m;
    fail(std::string("expected a vector field, got a ") + kind(v), at);
  }

  DiffForm as_form(const Value& v, std::size_t at, bool zero_ok = false) const {
    if (zero_ok && std::holds_alternative<ZeroLiteral>(v)) return DiffForm(patch_, 1);
    if (auto* f = std::get_if<DiffForm>(&v); f && f->degree() == 1) return *f;
    fail(std::string("expected a 1-form, got a ") + kind(v), at);
  }

  Multivector as_multivector(const Value& v, std::size_t at) const {
    if (auto* m = std::get_if<Multivector>(&v)) return *m;
    fail(std::string("expected a multivector, got a ") + kind(v), at);
  }

  DiffForm as_any_form(const Value& v, std::size_t at) const {
    if (auto* f = std::get_if<DiffForm>(&v)) return *f;
    fail(std::string("expected a form, got a ") + kind(v), at);
  }

  Endomorphism as_endomorphism(const Value& v, std::size_t at) const {
    if (auto* e = std::get_if<Endomorphism>(&v)) return *e;
    fail(std::string("expected an endomorphism, got a ") + kind(v), at);
  }

  GenSection as_section(const Value& v, std::size_t at) const {
    if (auto* s = std::get_if<GenSection>(&v)) return *s;
    if (auto* m = std::get_if<Multivector>(&v); m && m->degree() == 1) return GenSection::of_vector(*m);
    if (auto* f = std::get_if<DiffForm>(&v); f && f->degree() == 1) return GenSection::of_form(*f);
    fail(std::string("expected a section (X, a), got a ") + kind(v), at);
  }

  Value call(const std::string& op, const std::vector<std::pair<Value, std::size_t>>& args, std::size_t at) {
    auto arity = [&](std::size_t n) {
      if (args.size() != n) fail(op + " takes " + std::to_string(n) + " arguments", at);
    };
    auto arg = [&](std::size_t k) -> const Value& { return args[k].first; };
    auto pos = [&](std::size_t k) { return args[k].second; };
    try {
      if (op == "lie") {
        arity(2);
        return lie_bracket(as_vector(arg(0), pos(0)), as_vector(arg(1), pos(1)));
      }
      if (op == "courant") {
        arity(2);
        return courant_bracket(as_section(arg(0), pos(0)), as_section(arg(1), pos(1)));
      }
      if (op == "schouten") {
        arity(2);
        return schouten_bracket(as_multivector(arg(0), pos(0)), as_multivector(arg(1), pos(1)));
      }
      if (op == "d") {
        arity(1);
        return exterior_derivative(as_any_form(arg(0), pos(0)));
      }
      if (op == "L") {
        arity(2);
        Multivector X = as_vector(arg(0), pos(0));
        if (auto* f = std::get_if<DiffForm>(&arg(1))) return lie_derivative(X, *f);
        if (auto* m = std::get_if<Multivector>(&arg(1))) return lie_derivative(X, *m);
        return lie_derivative(X, as_endomorphism(arg(1), pos(1)));
      }
      if (op == "i") {
        arity(2);
        if (auto* f = std::get_if<DiffForm>(&arg(0)); f && f->degree() == 1) {
          return interior(*f, as_multivector(arg(1), pos(1)));
        }
        return interior(as_vector(arg(0), pos(0)), as_any_form(arg(1), pos(1)));
      }
      if (op == "sharp") {
        if (args.size() == 1) return sharp(instance_pi(at), as_form(arg(0), pos(0)));
        arity(2);
        return sharp(as_multivector(arg(0), pos(0)), as_form(arg(1), pos(1)));
      }
      if (op == "wedge") {
        arity(2);
        if (std::holds_alternative<DiffForm>(arg(0))) return wedge(as_any_form(arg(0), pos(0)), as_any_form(arg(1), pos(1)));
        return wedge(as_multivector(arg(0), pos(0)), as_multivector(arg(1), pos(1)));
      }
      if (op == "apply") {
        arity(2);
        return as_endomorphism(arg(0), pos(0)).apply(as_vector(arg(1), pos(1)));
      }
      if (op == "compose") {
        arity(2);
        return compose(as_form(arg(0), pos(0)), as_endomorphism(arg(1), pos(1)));
      }
      if (op == "nijenhuis") {
        if (args.size() == 2) return nijenhuis(instance_A(at), as_vector(arg(0), pos(0)), as_vector(arg(1), pos(1)));
        arity(3);
        return nijenhuis(as_endomorphism(arg(0), pos(0)), as_vector(arg(1), pos(1)), as_vector(arg(2), pos(2)));
      }
      if (op == "S_A") {
        arity(2);
        return cr_tensor(instance_A(at), as_vector(arg(0), pos(0)), as_vector(arg(1), pos(1)));
      }
      if (op == "S_Phi") {
        arity(2);
        return s_phi(GenEndomorphism::quasi_classical(instance_A(at), instance_pi(at)), as_section(arg(0), pos(0)),
                     as_section(arg(1), pos(1)));
      }
      if (op == "phi") {
        arity(1);
        return apply_phi(GenEndomorphism::quasi_classical(instance_A(at), instance_pi(at)), as_section(arg(0), pos(0)));
      }
      if (op == "R") {
        arity(2);
        return schouten_concomitant(instance_pi(at), instance_A(at), as_vector(arg(0), pos(0)), as_form(arg(1), pos(1)));
      }
      if (op == "pb1") {
        arity(2);
        return poisson_bracket_1forms(instance_pi(at), as_form(arg(0), pos(0)), as_form(arg(1), pos(1)));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(op + ": " + e.what(), at);
    }
    fail("unknown operator '" + op + "'", at);
  }

  const InstanceDocument& doc_;
  PatchPtr patch_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string eval_expression(const InstanceDocument& doc, std::string_view expression) {
  Evaluator ev(doc, expression);
  return print(ev.run());
}

}  // namespace qcrf
