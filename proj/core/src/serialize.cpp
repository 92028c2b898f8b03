#include "boolelim/serialize.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

#include "boolelim/error.hpp"

namespace boolelim {

using nlohmann::json;

namespace {

// ---- small helpers --------------------------------------------------------

Rel parse_rel(const std::string& text) {
  if (text == "=") return Rel::eq;
  if (text == "!=") return Rel::neq;
  if (text == ">") return Rel::gt;
  throw Error(Errc::bad_input, "unknown relation '" + text + "'");
}

ClauseKind parse_kind(const std::string& text) {
  if (text == "DNF") return ClauseKind::dnf;
  if (text == "CNF") return ClauseKind::cnf;
  throw Error(Errc::bad_input, "unknown clause kind '" + text + "'");
}

Quantifier parse_quantifier(const std::string& text) {
  if (text == "exists") return Quantifier::exists;
  if (text == "forall") return Quantifier::forall;
  throw Error(Errc::bad_input, "unknown quantifier '" + text + "'");
}

Decider parse_decider(const std::string& text) {
  for (Decider d : {Decider::ea_c, Decider::ae_c, Decider::e_r, Decider::ed_r, Decider::ae_r_structured,
                    Decider::e3d_q_structured, Decider::ae3_q_structured})
    if (to_string(d) == text) return d;
  throw Error(Errc::bad_input, "unknown decider '" + text + "'");
}

std::string str(std::string_view s) { return std::string(s); }

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(Errc::bad_input, std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::bad_input, std::string("unexpected JSON layout: ") + e.what());
  }
}

// ---- JSON trees -----------------------------------------------------------

json matrix_json(const ClauseMatrix& m) {
  json clauses = json::array();
  for (const auto& c : m.clauses) {
    json literals = json::array();
    for (const auto& a : c) literals.push_back({{"term", a.term.str()}, {"rel", str(to_string(a.rel))}});
    clauses.push_back(std::move(literals));
  }
  return {{"kind", str(to_string(m.kind))},
          {"field", str(to_string(m.field))},
          {"syntactic_clauses", m.syntactic_clauses},
          {"clauses", std::move(clauses)}};
}

ClauseMatrix matrix_from(const json& j) {
  ClauseMatrix m;
  m.kind = parse_kind(j.at("kind").get<std::string>());
  m.field = parse_field(j.at("field").get<std::string>());
  m.syntactic_clauses = j.at("syntactic_clauses").get<std::size_t>();
  const ScalarField sf = scalar_field(m.field);
  for (const auto& c : j.at("clauses")) {
    Clause clause;
    for (const auto& a : c)
      clause.push_back(Atom{parse_polynomial(a.at("term").get<std::string>(), sf),
                            parse_rel(a.at("rel").get<std::string>())});
    m.clauses.push_back(std::move(clause));
  }
  return m;
}

json equation_json(const QuantifiedEquation& qe) {
  json prefix = json::array();
  for (const auto& qv : qe.prefix)
    prefix.push_back({{"quantifier", str(to_string(qv.quantifier))}, {"var", qv.var.name()}});
  json j = {{"field", str(to_string(qe.field))},
            {"prefix", std::move(prefix)},
            {"equation", qe.equation.str()},
            {"shape", qe.shape ? json(str(to_string(*qe.shape))) : json(nullptr)}};
  json brackets = json::array();
  for (const auto& b : qe.layout.brackets) brackets.push_back(b.str());
  j["layout"] = {{"kind", qe.layout.kind == Layout::Kind::product ? "product" : "sum_of_squares"},
                 {"brackets", std::move(brackets)}};
  j["provenance"] = qe.provenance ? matrix_json(*qe.provenance) : json(nullptr);
  return j;
}

json degree_json(const DegreeReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"var", e.var.name()},
                       {"measured", e.measured ? json(*e.measured) : json("-inf")},
                       {"bound", e.bound},
                       {"exact", e.exact},
                       {"ok", e.ok}});
  return {{"shape", str(to_string(r.shape))},
          {"d", r.d},
          {"syntactic_d", r.syntactic_d},
          {"e_total", r.e_total},
          {"e_max", r.e_max},
          {"f_max", r.f_max},
          {"satisfied", r.satisfied},
          {"entries", std::move(entries)},
          {"notes", r.notes}};
}

json point_json(const Point& x) {
  json j = json::object();
  for (const auto& [v, value] : x) j[v.name()] = value.str();
  return j;
}

json disagreement_json(const Disagreement& d) {
  return {{"formula", d.formula}, {"equation", d.equation}, {"point", point_json(d.point)},
          {"expected", d.expected}, {"got", d.got},         {"seed", d.seed}};
}

json equivalence_json(const EquivalenceReport& r) {
  json records = json::array();
  for (const auto& d : r.disagreements) records.push_back(disagreement_json(d));
  return {{"decider", str(to_string(r.decider))},
          {"seed", r.seed},
          {"points", r.points},
          {"agreements", r.agreements},
          {"disagreements", std::move(records)}};
}

std::string field_latex(Field f) {
  switch (f) {
    case Field::C: return "\\mathbb{C}";
    case Field::R: return "\\mathbb{R}";
    case Field::Q: return "\\mathbb{Q}";
  }
  return "?";
}

std::string latex_var(const Var& v) {
  const std::string& n = v.name();
  std::size_t k = n.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
  if (k == 0 || k == n.size()) return n;
  return n.substr(0, k) + "_{" + n.substr(k) + "}";
}

}  // namespace

// ---- public API -----------------------------------------------------------

std::string to_json(const QuantifiedEquation& qe, int indent) { return equation_json(qe).dump(indent); }
std::string to_json(const DegreeReport& r, int indent) { return degree_json(r).dump(indent); }
std::string to_json(const EquivalenceReport& r, int indent) { return equivalence_json(r).dump(indent); }
std::string to_json(const Disagreement& d, int indent) { return disagreement_json(d).dump(indent); }

std::string to_json(const Verdict& v, int indent) {
  json j = {{"verdict", v.str()}};
  switch (v.kind()) {
    case Verdict::Kind::truth: j["kind"] = "TRUE"; break;
    case Verdict::Kind::falsity: j["kind"] = "FALSE"; break;
    case Verdict::Kind::refuted:
      j["kind"] = "REFUTED";
      j["sample"] = v.sample().str();
      break;
    case Verdict::Kind::unresolved:
      j["kind"] = "UNRESOLVED";
      j["samples_tried"] = v.samples_tried();
      break;
  }
  return j.dump(indent);
}

QuantifiedEquation quantified_equation_from_json(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    QuantifiedEquation qe;
    qe.field = parse_field(j.at("field").get<std::string>());
    const ScalarField sf = scalar_field(qe.field);
    for (const auto& qv : j.at("prefix"))
      qe.prefix.push_back({parse_quantifier(qv.at("quantifier").get<std::string>()),
                           Var(qv.at("var").get<std::string>())});
    qe.equation = parse_polynomial(j.at("equation").get<std::string>(), sf);
    if (j.contains("shape") && !j.at("shape").is_null()) qe.shape = parse_shape(j.at("shape").get<std::string>());
    if (j.contains("layout")) {
      const auto& l = j.at("layout");
      qe.layout.kind = l.at("kind").get<std::string>() == "product" ? Layout::Kind::product
                                                                    : Layout::Kind::sum_of_squares;
      for (const auto& b : l.at("brackets")) qe.layout.brackets.push_back(parse_polynomial(b.get<std::string>(), sf));
    }
    if (j.contains("provenance") && !j.at("provenance").is_null()) qe.provenance = matrix_from(j.at("provenance"));
    return qe;
  });
}

DegreeReport degree_report_from_json(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    DegreeReport r;
    r.shape = parse_shape(j.at("shape").get<std::string>());
    r.d = j.at("d").get<std::size_t>();
    r.syntactic_d = j.at("syntactic_d").get<std::size_t>();
    r.e_total = j.at("e_total").get<std::size_t>();
    r.e_max = j.at("e_max").get<std::size_t>();
    r.f_max = j.at("f_max").get<std::size_t>();
    r.satisfied = j.at("satisfied").get<bool>();
    for (const auto& e : j.at("entries")) {
      DegreeEntry entry;
      entry.var = Var(e.at("var").get<std::string>());
      if (e.at("measured").is_number()) entry.measured = e.at("measured").get<unsigned>();
      entry.bound = e.at("bound").get<long>();
      entry.exact = e.at("exact").get<bool>();
      entry.ok = e.at("ok").get<bool>();
      r.entries.push_back(std::move(entry));
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  });
}

EquivalenceReport equivalence_report_from_json(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    EquivalenceReport r;
    r.decider = parse_decider(j.at("decider").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.points = j.at("points").get<std::size_t>();
    r.agreements = j.at("agreements").get<std::size_t>();
    for (const auto& d : j.at("disagreements")) {
      Disagreement rec;
      rec.formula = d.at("formula").get<std::string>();
      rec.equation = d.at("equation").get<std::string>();
      for (const auto& [name, value] : d.at("point").items())
        rec.point.emplace(Var(name), parse_scalar(value.get<std::string>()));
      rec.expected = d.at("expected").get<bool>();
      rec.got = d.at("got").get<bool>();
      rec.seed = d.at("seed").get<std::uint64_t>();
      r.disagreements.push_back(std::move(rec));
    }
    return r;
  });
}

std::string to_text(const QuantifiedEquation& qe) {
  std::string s;
  for (const auto& qv : qe.prefix) s += str(to_string(qv.quantifier)) + " " + qv.var.name() + " ";
  if (!qe.prefix.empty()) s.back() = ':', s += " ";
  return s + qe.equation.str() + " = 0";
}

std::string to_text(const DegreeReport& r) {
  std::ostringstream os;
  os << "shape " << to_string(r.shape) << ": d = " << r.d << " (distributed " << r.syntactic_d
     << "), e = " << r.e_total << ", max e_i = " << r.e_max << ", max f_i = " << r.f_max << "\n";
  for (const auto& e : r.entries) {
    os << "  deg_" << e.var.name() << " = " << (e.measured ? std::to_string(*e.measured) : "-inf")
       << (e.exact ? "  (expected exactly " : "  (bound ") << e.bound << ")  " << (e.ok ? "ok" : "VIOLATED")
       << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  os << "bounds " << (r.satisfied ? "satisfied" : "violated") << "\n";
  return os.str();
}

std::string to_text(const EquivalenceReport& r) {
  std::ostringstream os;
  os << to_string(r.decider) << ": " << r.agreements << "/" << r.points << " points agree (seed " << r.seed
     << ")\n";
  for (const auto& d : r.disagreements) {
    os << "  disagreement at {";
    bool first = true;
    for (const auto& [v, value] : d.point) {
      os << (first ? "" : ", ") << v.name() << " = " << value.str();
      first = false;
    }
    os << "}: formula " << (d.expected ? "true" : "false") << ", decider " << (d.got ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string to_latex(const QuantifiedEquation& qe) {
  std::string s;
  for (const auto& qv : qe.prefix)
    s += std::string("(") + (qv.quantifier == Quantifier::exists ? "\\exists " : "\\forall ") +
         latex_var(qv.var) + " \\in " + field_latex(qe.field) + ")";
  if (!s.empty()) s += "\\;";
  const auto& brackets = qe.layout.brackets;
  if (brackets.empty()) return s + qe.equation.latex() + " = 0";
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    if (qe.layout.kind == Layout::Kind::sum_of_squares && i > 0) s += " + ";
    s += "\\Big[" + brackets[i].latex() + "\\Big]";
    if (qe.layout.kind == Layout::Kind::sum_of_squares) s += "^2";
  }
  return s + " = 0";
}

QuantifiedEquation parse_quantified_equation(std::string_view text, Field field) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    QuantifiedEquation qe = quantified_equation_from_json(text);
    if (qe.field != field)
      throw Error(Errc::incompatible_field, "equation is over " + str(to_string(qe.field)) + ", not " +
                                                str(to_string(field)));
    return qe;
  }
  QuantifiedEquation qe;
  qe.field = field;
  const ScalarField sf = scalar_field(field);
  std::string_view body = text;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    std::istringstream words{std::string(text.substr(0, colon))};
    std::string word;
    std::optional<Quantifier> current;
    while (words >> word) {
      if (word == "exists" || word == "forall") {
        current = parse_quantifier(word);
        continue;
      }
      if (!current) throw Error(Errc::syntax_error, "expected 'exists' or 'forall' before '" + word + "'");
      std::istringstream names(word);
      std::string name;
      while (std::getline(names, name, ','))
        if (!name.empty()) qe.prefix.push_back({*current, Var(name)});
    }
    body = text.substr(colon + 1);
  }
  if (const auto eq = body.find('='); eq != std::string_view::npos) {
    qe.equation = parse_polynomial(body.substr(0, eq), sf) - parse_polynomial(body.substr(eq + 1), sf);
  } else {
    qe.equation = parse_polynomial(body, sf);
  }
  return qe;
}

}  // namespace boolelim
