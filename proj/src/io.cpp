#include "qcrf/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qcrf/error.hpp"

namespace qcrf {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class Reader {
 public:
  explicit Reader(PatchPtr patch) : patch_(std::move(patch)) {}

  Poly expr(const json& j, const std::string& path) const {
    if (j.is_number_integer()) return Poly(patch_, GaussRational(j.get<long>()));
    if (!j.is_string()) throw ParseError(path + ": expected an expression string", 0);
    const std::string text = j.get<std::string>();
    try {
      return parse_poly(text, patch_);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what() + " in \"" + text + "\"", e.position());
    }
  }

  std::vector<Poly> list(const json& j, const std::string& path) const {
    if (!j.is_array() || j.size() != patch_->dim()) {
      throw ParseError(path + ": expected " + std::to_string(patch_->dim()) + " expressions", 0);
    }
    std::vector<Poly> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(expr(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
  }

  Multivector vector(const json& j, const std::string& path) const { return vector_field(patch_, list(j, path)); }
  DiffForm form(const json& j, const std::string& path) const { return one_form(patch_, list(j, path)); }

  Endomorphism matrix(const json& j, const std::string& path) const {
    if (!j.is_array() || j.size() != patch_->dim()) {
      throw ParseError(path + ": expected a " + std::to_string(patch_->dim()) + "x" + std::to_string(patch_->dim()) +
                           " matrix",
                       0);
    }
    std::vector<std::vector<Poly>> rows;
    for (std::size_t r = 0; r < j.size(); ++r) rows.push_back(list(j[r], path + "[" + std::to_string(r) + "]"));
    return Endomorphism(patch_, std::move(rows));
  }

  std::size_t coordinate(const json& j, const std::string& path) const {
    if (!j.is_string()) throw ParseError(path + ": expected a coordinate name", 0);
    const auto& names = patch_->names();
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k] == j.get<std::string>()) return k;
    }
    throw ParseError(path + ": unknown coordinate '" + j.get<std::string>() + "'", 0);
  }

  GaussRational constant(const json& j, const std::string& path) const {
    Poly p = expr(j, path);
    if (!p.is_constant()) throw ParseError(path + ": expected a constant", 0);
    return p.constant_term();
  }

 private:
  PatchPtr patch_;
};

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw ParseError(path + ": unknown key '" + key + "'", 0);
  }
}

ordered_json list_json(const std::vector<Poly>& comps) {
  ordered_json out = ordered_json::array();
  for (const Poly& p : comps) out.push_back(p.str());
  return out;
}

ordered_json matrix_json(const Endomorphism& A) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < A.dim(); ++j) row.push_back(A(i, j).str());
    out.push_back(row);
  }
  return out;
}

}  // namespace

InstanceDocument parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw ParseError("instance: expected a JSON object", 0);
  require_keys(j,
               {"name", "description", "coordinates", "A", "P", "pi", "contact", "frame", "base_point", "vectors",
                "forms", "expect"},
               "instance");
  if (!j.contains("coordinates") || !j["coordinates"].is_array() || j["coordinates"].empty()) {
    throw ParseError("coordinates: expected a nonempty list of names", 0);
  }
  std::vector<std::string> names;
  for (const json& n : j["coordinates"]) {
    if (!n.is_string()) throw ParseError("coordinates: names must be strings", 0);
    names.push_back(n.get<std::string>());
  }
  PatchPtr patch;
  try {
    patch = make_patch(names);
  } catch (const Error& e) {
    throw ParseError(std::string("coordinates: ") + e.what(), 0);
  }
  Reader rd(patch);
  InstanceDocument doc;
  doc.instance = StructureInstance(j.value("name", std::string("unnamed")), patch);
  doc.description = j.value("description", std::string());
  StructureInstance& inst = doc.instance;
  if (j.contains("A")) {
    inst.A = rd.matrix(j["A"], "A");
    doc.has_A = true;
  }
  if (j.contains("P")) inst.projector_P = rd.matrix(j["P"], "P");
  if (j.contains("pi")) {
    doc.has_pi = true;
    const json& entries = j["pi"];
    if (!entries.is_array()) throw ParseError("pi: expected a list of [i, j, expr] entries", 0);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string path = "pi[" + std::to_string(k) + "]";
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 3) throw ParseError(path + ": expected [i, j, expr]", 0);
      std::size_t a = rd.coordinate(e[0], path + "[0]"), b = rd.coordinate(e[1], path + "[1]");
      if (a == b) throw ParseError(path + ": repeated coordinate", 0);
      inst.pi.add({static_cast<int>(a), static_cast<int>(b)}, rd.expr(e[2], path + "[2]"));
    }
  }
  if (j.contains("contact")) {
    const json& c = j["contact"];
    if (!c.is_array()) throw ParseError("contact: expected a list", 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::string path = "contact[" + std::to_string(k) + "]";
      require_keys(c[k], {"Z", "xi"}, path);
      if (!c[k].contains("Z") || !c[k].contains("xi")) throw ParseError(path + ": needs Z and xi", 0);
      inst.contact.push_back({rd.vector(c[k]["Z"], path + ".Z"), rd.form(c[k]["xi"], path + ".xi")});
    }
  }
  if (j.contains("frame")) {
    const json& f = j["frame"];
    require_keys(f, {"h", "q", "kappa"}, "frame");
    AdaptedFrame fr;
    for (const char* key : {"h", "q", "kappa"}) {
      const json& items = f.value(key, json::array());
      for (std::size_t k = 0; k < items.size(); ++k) {
        const std::string path = std::string("frame.") + key + "[" + std::to_string(k) + "]";
        if (std::string(key) == "kappa") {
          fr.kappa.push_back(rd.form(items[k], path));
        } else {
          (std::string(key) == "h" ? fr.h : fr.q).push_back(rd.vector(items[k], path));
        }
      }
    }
    inst.frame = std::move(fr);
  }
  if (j.contains("base_point")) {
    const json& bp = j["base_point"];
    if (!bp.is_array() || bp.size() != patch->dim()) {
      throw ParseError("base_point: expected " + std::to_string(patch->dim()) + " constants", 0);
    }
    for (std::size_t k = 0; k < bp.size(); ++k) {
      inst.base_point.push_back(rd.constant(bp[k], "base_point[" + std::to_string(k) + "]"));
    }
  }
  for (const char* key : {"vectors", "forms"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_object()) throw ParseError(std::string(key) + ": expected an object", 0);
    for (const auto& [name, value] : j[key].items()) {
      const std::string path = std::string(key) + "." + name;
      if (std::string(key) == "vectors") {
        inst.vectors.emplace(name, rd.vector(value, path));
      } else {
        inst.forms.emplace(name, rd.form(value, path));
      }
    }
  }
  if (j.contains("expect")) {
    if (!j["expect"].is_object()) throw ParseError("expect: expected an object", 0);
    for (const auto& [level, verdict] : j["expect"].items()) {
      if (!verdict.is_string() || (verdict != "pass" && verdict != "fail")) {
        throw ParseError("expect." + level + ": expected \"pass\" or \"fail\"", 0);
      }
      doc.expect.emplace(level, verdict.get<std::string>());
    }
  }
  try {
    inst.validate();
  } catch (const InstanceError& e) {
    throw ParseError(std::string("instance: ") + e.what(), 0);
  }
  return doc;
}

InstanceDocument load_instance(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open '" + file.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(file.filename().string() + ": " + e.what(), e.position());
  }
}

std::string format_instance(const InstanceDocument& doc) {
  const StructureInstance& inst = doc.instance;
  ordered_json j;
  j["name"] = inst.name;
  if (!doc.description.empty()) j["description"] = doc.description;
  j["coordinates"] = inst.patch->names();
  if (doc.has_A) j["A"] = matrix_json(inst.A);
  if (inst.projector_P) j["P"] = matrix_json(*inst.projector_P);
  if (doc.has_pi) {
    ordered_json entries = ordered_json::array();
    for (const auto& [idx, c] : inst.pi.components()) {
      entries.push_back({inst.patch->names()[static_cast<std::size_t>(idx[0])],
                         inst.patch->names()[static_cast<std::size_t>(idx[1])], c.str()});
    }
    j["pi"] = entries;
  }
  if (!inst.contact.empty()) {
    ordered_json c = ordered_json::array();
    for (const ContactPair& p : inst.contact) {
      ordered_json e;
      e["Z"] = list_json(p.Z.as_list());
      e["xi"] = list_json(p.xi.as_list());
      c.push_back(e);
    }
    j["contact"] = c;
  }
  if (inst.frame) {
    ordered_json f;
    for (const auto& [key, items] : {std::pair{"h", &inst.frame->h}, std::pair{"q", &inst.frame->q}}) {
      ordered_json arr = ordered_json::array();
      for (const Multivector& v : *items) arr.push_back(list_json(v.as_list()));
      f[key] = arr;
    }
    ordered_json arr = ordered_json::array();
    for (const DiffForm& k : inst.frame->kappa) arr.push_back(list_json(k.as_list()));
    f["kappa"] = arr;
    j["frame"] = f;
  }
  if (!inst.base_point.empty()) {
    ordered_json bp = ordered_json::array();
    for (const GaussRational& c : inst.point()) bp.push_back(c.str());
    j["base_point"] = bp;
  }
  if (!inst.vectors.empty()) {
    ordered_json v;
    for (const auto& [name, X] : inst.vectors) v[name] = list_json(X.as_list());
    j["vectors"] = v;
  }
  if (!inst.forms.empty()) {
    ordered_json v;
    for (const auto& [name, a] : inst.forms) v[name] = list_json(a.as_list());
    j["forms"] = v;
  }
  if (!doc.expect.empty()) {
    ordered_json e;
    for (const auto& [level, verdict] : doc.expect) e[level] = verdict;
    j["expect"] = e;
  }
  return j.dump(2) + "\n";
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string instance_digest(const InstanceDocument& doc) { return fnv1a_hex(format_instance(doc)); }

ordered_json report_json(const CheckReport& report) {
  ordered_json conds = ordered_json::array();
  for (const Condition& c : report.conditions()) {
    ordered_json e;
    e["id"] = c.id;
    e["pass"] = c.pass;
    e["failures"] = c.failures;
    ordered_json ws = ordered_json::array();
    for (const Witness& w : c.witnesses) ws.push_back({{"args", w.args}, {"value", w.value}});
    e["witnesses"] = ws;
    if (!c.note.empty()) e["note"] = c.note;
    conds.push_back(e);
  }
  ordered_json out;
  out["verdict"] = report.verdict() ? "pass" : "fail";
  out["conditions"] = conds;
  return out;
}

}  // namespace qcrf
