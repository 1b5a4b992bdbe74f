#include "cuspidal/scenario_io.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace cuspidal {

namespace {

// Line of every value in a syntactically valid document, keyed by JSON pointer.
class LineIndex
{
public:
  explicit LineIndex(std::string const &text) : text_(text) { value(""); }

  int line(std::string const &pointer) const
  {
    auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

private:
  std::string const &text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;

  void skip()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n')
        ++line_;
      ++pos_;
    }
  }

  std::string string()
  {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\')
        out += text_[pos_++];
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape(std::string const &key)
  {
    std::string out;
    for (char c : key)
      out += c == '~' ? std::string("~0") : c == '/' ? std::string("~1") : std::string(1, c);
    return out;
  }

  void value(std::string const &pointer)
  {
    skip();
    lines_[pointer] = line_;
    if (pos_ >= text_.size())
      return;
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        std::string key = string();
        skip();
        ++pos_; // ':'
        value(pointer + "/" + escape(key));
        skip();
        if (text_[pos_] == ',') {
          ++pos_;
          skip();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip();
      for (std::size_t i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(pointer + "/" + std::to_string(i));
        skip();
        if (text_[pos_] == ',') {
          ++pos_;
          skip();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string();
    } else {
      while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_]))
        ++pos_;
    }
  }
};

class Reader
{
public:
  Reader(Json const &doc, LineIndex const &lines) : doc_(doc), lines_(lines) {}

  [[noreturn]] void fail(std::string const &pointer, std::string const &what) const
  {
    throw Error("parse-error", "line " + std::to_string(lines_.line(pointer)) + ": " +
                                   (pointer.empty() ? "document" : pointer) + ": " + what);
  }

  Json const &at(std::string const &pointer) const { return doc_.at(Json::json_pointer(pointer)); }
  bool has(std::string const &pointer) const { return doc_.contains(Json::json_pointer(pointer)); }

  Perm perm(std::string const &pointer, std::size_t degree) const
  {
    auto const &j = at(pointer);
    if (!j.is_array())
      fail(pointer, "permutation must be an array of 0-based images");
    Perm p;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_unsigned() || j[i].get<std::uint64_t>() >= degree)
        fail(pointer + "/" + std::to_string(i), "image must be an integer in [0, " + std::to_string(degree) + ")");
      p.push_back(j[i].get<std::uint32_t>());
    }
    if (p.size() != degree)
      fail(pointer, "permutation has " + std::to_string(p.size()) + " images, degree is " + std::to_string(degree));
    if (!is_permutation(p))
      fail(pointer, "images are not a bijection");
    return p;
  }

  std::vector<Perm> perms(std::string const &pointer, std::size_t degree) const
  {
    if (!has(pointer))
      return {};
    auto const &j = at(pointer);
    if (!j.is_array())
      fail(pointer, "expected a list of permutations");
    std::vector<Perm> out;
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(perm(pointer + "/" + std::to_string(i), degree));
    return out;
  }

private:
  Json const &doc_;
  LineIndex const &lines_;
};

std::string rational_str(Rational const &r) { return r.str(); }

} // namespace

Json cyclotomic_to_json(Cyclotomic const &x)
{
  auto r = x.reduced();
  Json coeffs = Json::array();
  for (auto const &c : r.coefficients())
    coeffs.push_back(rational_str(c));
  return Json{{"conductor", r.field()}, {"coefficients", coeffs}};
}

Cyclotomic cyclotomic_from_json(Json const &j)
{
  if (j.is_number_integer())
    return Cyclotomic(j.get<std::int64_t>());
  if (j.is_string())
    return parse_cyclotomic(j.get<std::string>());
  if (j.is_object() && j.contains("conductor") && j.contains("coefficients") && j["conductor"].is_number_integer() &&
      j["coefficients"].is_array()) {
    int n = j["conductor"].get<int>();
    if (n < 1)
      throw Error("parse-error", "conductor must be positive");
    auto const &c = j["coefficients"];
    if (c.size() != static_cast<std::size_t>(euler_phi(n)))
      throw Error("parse-error", "conductor " + std::to_string(n) + " needs " + std::to_string(euler_phi(n)) +
                                     " coefficients");
    std::vector<Rational> a;
    for (auto const &x : c)
      a.push_back(cyclotomic_from_json(x).to_rational());
    return Cyclotomic::from_exponents(n, a);
  }
  throw Error("parse-error", "expected a cyclotomic number");
}

ScenarioData parse_scenario(std::string const &text)
{
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (Json::parse_error const &e) {
    int line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size()); ++i)
      line += text[i] == '\n';
    throw Error("parse-error", "line " + std::to_string(line) + ": " + e.what());
  }
  LineIndex lines(text);
  Reader rd(doc, lines);
  if (!doc.is_object())
    rd.fail("", "scenario must be an object");

  ScenarioData d;
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      rd.fail("/name", "expected a string");
    d.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("degree") || !doc["degree"].is_number_unsigned() || doc["degree"].get<std::uint64_t>() == 0)
    rd.fail(doc.contains("degree") ? "/degree" : "", "degree must be a positive integer");
  d.degree = doc["degree"].get<std::size_t>();
  d.generators = rd.perms("/generators", d.degree);
  d.wse_generators = rd.perms("/wse_generators", d.degree);
  d.frobenius = rd.perms("/frobenius", d.degree);
  if (doc.contains("w1"))
    d.w1 = rd.perm("/w1", d.degree);
  if (doc.contains("coxeter_times_abelian")) {
    if (!doc["coxeter_times_abelian"].is_boolean())
      rd.fail("/coxeter_times_abelian", "expected true or false");
    d.coxeter_times_abelian = doc["coxeter_times_abelian"].get<bool>();
  }
  if (!doc.contains("blocks") || !doc["blocks"].is_array())
    rd.fail(doc.contains("blocks") ? "/blocks" : "", "blocks must be a list");
  for (std::size_t j = 0; j < doc["blocks"].size(); ++j) {
    std::string p = "/blocks/" + std::to_string(j);
    if (!doc["blocks"][j].is_object())
      rd.fail(p, "block must be an object");
    ScenarioBlock b;
    b.whm_generators = rd.perms(p + "/whm_generators", d.degree);
    if (rd.has(p + "/a"))
      b.a = rd.perm(p + "/a", d.degree);
    d.blocks.push_back(std::move(b));
  }
  if (doc.contains("character_tables")) {
    auto const &t = doc["character_tables"];
    if (!t.is_object())
      rd.fail("/character_tables", "expected an object keyed by subgroup");
    for (auto const &[key, rows] : t.items()) {
      std::string p = "/character_tables/" + key;
      if (!rows.is_array())
        rd.fail(p, "expected a list of characters");
      std::vector<std::vector<Cyclotomic>> table;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array())
          rd.fail(p + "/" + std::to_string(i), "expected a list of class values");
        std::vector<Cyclotomic> row;
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
          try {
            row.push_back(cyclotomic_from_json(rows[i][c]));
          } catch (Error const &e) {
            rd.fail(p + "/" + std::to_string(i) + "/" + std::to_string(c), e.what());
          }
        }
        table.push_back(std::move(row));
      }
      d.character_tables[key] = std::move(table);
    }
  }
  return d;
}

ScenarioData load_scenario(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("io-error", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str());
  } catch (Error const &e) {
    throw Error(e.kind(), path + ": " + std::string(e.what()).substr(e.kind().size() + 2));
  }
}

Json scenario_to_json(ScenarioData const &d)
{
  Json blocks = Json::array();
  for (auto const &b : d.blocks)
    blocks.push_back(Json{{"whm_generators", b.whm_generators}, {"a", b.a.empty() ? identity_perm(d.degree) : b.a}});
  Json j{{"name", d.name},
         {"degree", d.degree},
         {"generators", d.generators},
         {"wse_generators", d.wse_generators},
         {"frobenius", d.frobenius},
         {"w1", d.w1.empty() ? identity_perm(d.degree) : d.w1},
         {"blocks", blocks},
         {"coxeter_times_abelian", d.coxeter_times_abelian}};
  if (!d.character_tables.empty()) {
    Json t = Json::object();
    for (auto const &[key, rows] : d.character_tables) {
      Json r = Json::array();
      for (auto const &row : rows) {
        Json values = Json::array();
        for (auto const &x : row)
          values.push_back(cyclotomic_to_json(x));
        r.push_back(values);
      }
      t[key] = r;
    }
    j["character_tables"] = t;
  }
  return j;
}

Json conventions_json()
{
  return Json{
      {"permutations", "0-based image arrays; (x y) composes right to left"},
      {"twisted_classes", "u ~ phi(w) u w^-1; classes ordered by smallest element index"},
      {"element_order", "elements sorted lexicographically by image array"},
      {"character_order", "trivial first, then by degree, then by values"},
      {"extension_choice",
       "rational coset values if possible, else least argument in [0, 2 pi) of the first nonzero coset value"},
      {"extended_group", "phi^-1 w phi = phi(w); coset value Tr(phi w)"},
      {"gamma1", "w -> w1^-1 F^-1(w) w1 on wse"},
      {"eta_j", "w -> a_j^-1 F^-1(w) a_j on whm_j"},
      {"pairing", "1/|W(nu)| sum conj Tr(gamma1 kappa(wbar), E~) Tr(eta_j lambda(wbar), E'~); 0 if W(nu) is empty"},
      {"double_coset_representative", "smallest element index of the double coset"},
      {"cyclotomic", "{conductor, coefficients} on the power basis of the reduced field"},
  };
}

namespace {

Json subgroup_json(TwistedSubgroup const &t)
{
  Json classes = Json::array();
  for (std::size_t c = 0; c < t.classes.size(); ++c)
    classes.push_back(Json{{"representative", perm_to_cycles(t.group.element(t.classes.representative(c)))},
                           {"size", t.classes.classes[c].size()}});
  Json ext = Json::array();
  for (std::size_t k = 0; k < t.extensions.size(); ++k) {
    Json values = Json::array();
    for (auto const &v : t.extensions.values[k])
      values.push_back(cyclotomic_to_json(v));
    ext.push_back(Json{{"character", t.extensions.base[k]},
                       {"degree", t.table.degrees[t.extensions.base[k]]},
                       {"normalization", t.extensions.normalization[k]},
                       {"coset_values", values}});
  }
  return Json{{"order", t.group.order()},
              {"characters", t.table.size()},
              {"table", t.supplied_table ? "supplied" : "computed"},
              {"twisted_classes", classes},
              {"extensions", ext}};
}

Json scenario_summary(Scenario const &s)
{
  Json blocks = Json::array();
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    auto b = subgroup_json(s.whm[j]);
    b["a"] = perm_to_cycles(s.omega.element(s.a[j]));
    blocks.push_back(b);
  }
  return Json{{"name", s.name},
              {"omega_order", s.omega.order()},
              {"frobenius_order", s.frobenius.order},
              {"w1", perm_to_cycles(s.omega.element(s.w1))},
              {"coxeter_times_abelian_asserted", s.coxeter_times_abelian},
              {"wse", subgroup_json(s.wse)},
              {"blocks", blocks}};
}

} // namespace

Json verification_to_json(Scenario const &s, VerificationReport const &r)
{
  Json checks = Json::array();
  for (auto const &c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"checked", c.checked}, {"detail", c.detail}});
  Json study = Json::array();
  for (auto const &p : r.prefactors)
    study.push_back(Json{{"prefactor", prefactor_name(p.candidate)},
                         {"mismatches", p.mismatches},
                         {"consistent", p.consistent()}});
  return Json{{"scenario", scenario_summary(s)},
              {"checks", checks},
              {"prefactor_study", study},
              {"all_pass", r.all_pass()},
              {"conventions", conventions_json()}};
}

Json pairing_to_json(Scenario const &s, PairingMatrix const &m)
{
  auto matrix = [](std::vector<std::vector<Cyclotomic>> const &rows) {
    Json out = Json::array();
    for (auto const &row : rows) {
      Json r = Json::array();
      for (auto const &x : row)
        r.push_back(cyclotomic_to_json(x));
      out.push_back(r);
    }
    return out;
  };
  Json columns = Json::array();
  for (auto const &[j, k] : m.columns)
    columns.push_back(Json{{"block", j}, {"extension", k}});
  Json per_nu = Json::array();
  for (std::size_t j = 0; j < m.per_nu.size(); ++j)
    for (std::size_t nu = 0; nu < m.per_nu[j].size(); ++nu) {
      int rep = m.cosets[j].representatives[nu];
      per_nu.push_back(Json{{"block", j},
                            {"representative", perm_to_cycles(s.omega.element(rep))},
                            {"coset_size", m.cosets[j].cosets[nu].size()},
                            {"w_nu_size", coset_intersection(s, j, rep).size()},
                            {"values", matrix(m.per_nu[j][nu])}});
    }
  return Json{{"scenario", scenario_summary(s)},
              {"rows", s.wse.extensions.size()},
              {"columns", columns},
              {"total", matrix(m.total)},
              {"per_double_coset", per_nu},
              {"conventions", conventions_json()}};
}

} // namespace cuspidal
