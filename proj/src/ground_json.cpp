#include "gam/ground_json.hpp"

#include <fstream>

namespace gam {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw GroundFileError(where + ": missing \"" + key + "\"");
  return *it;
}

AtomSet atom_list(AtomTable& table, const json& j, const std::string& where) {
  if (!j.is_array()) throw GroundFileError(where + ": expected an array of atom names");
  AtomSet out;
  for (const auto& a : j) {
    if (!a.is_string() || a.get_ref<const std::string&>().empty()) {
      throw GroundFileError(where + ": atom names must be non-empty strings");
    }
    out.push_back(table.intern(a.get<std::string>()));
  }
  return out;
}

AtomSet optional_list(AtomTable& table, const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return {};
  return atom_list(table, *it, where + "." + key);
}

json names(const AtomTable& table, const AtomSet& s) {
  json out = json::array();
  for (auto a : s) out.push_back(table.name(a));
  return out;
}

}  // namespace

PlanningProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw GroundFileError("ground problem must be a JSON object");
  PlanningProblem p;
  if (j.contains("atoms")) atom_list(p.atoms, j.at("atoms"), "atoms");
  AtomSet init = atom_list(p.atoms, field(j, "init", "problem"), "init");

  const auto& acts = field(j, "actions", "problem");
  if (!acts.is_array()) throw GroundFileError("actions: expected an array");
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const auto& a = acts[i];
    std::string where = "actions[" + std::to_string(i) + "]";
    if (!a.is_object()) throw GroundFileError(where + ": expected an object");
    const auto& name_j = field(a, "name", where);
    if (!name_j.is_string()) throw GroundFileError(where + ".name: expected a string");
    std::string name = name_j.get<std::string>();
    try {
      if (a.contains("effects")) {
        const auto& effs = a.at("effects");
        if (!effs.is_array() || effs.empty()) {
          throw GroundFileError(where + ".effects: expected a non-empty array");
        }
        std::vector<ConditionalEffect> list;
        for (std::size_t k = 0; k < effs.size(); ++k) {
          std::string ew = where + ".effects[" + std::to_string(k) + "]";
          if (!effs[k].is_object()) throw GroundFileError(ew + ": expected an object");
          ConditionalEffect e;
          e.condition = optional_list(p.atoms, effs[k], "condition", ew);
          e.adds = optional_list(p.atoms, effs[k], "add", ew);
          e.dels = optional_list(p.atoms, effs[k], "del", ew);
          list.push_back(std::move(e));
        }
        p.actions.push_back(Action::adl(std::move(name), std::move(list)));
      } else {
        auto pre = optional_list(p.atoms, a, "pre", where);
        auto add = optional_list(p.atoms, a, "add", where);
        auto del = optional_list(p.atoms, a, "del", where);
        p.actions.push_back(Action::strips(std::move(name), std::move(pre), std::move(add), std::move(del)));
      }
    } catch (const std::invalid_argument& e) {
      throw GroundFileError(where + ": " + e.what());
    }
  }
  p.goals = sets::normalized(atom_list(p.atoms, field(j, "goals", "problem"), "goals"));
  p.init = State(p.atoms.size(), init);
  return p;
}

json problem_to_json(const PlanningProblem& p) {
  json j;
  j["atoms"] = p.atoms.names();
  json acts = json::array();
  for (const auto& a : p.actions) {
    json o;
    o["name"] = a.name();
    if (a.is_strips()) {
      o["pre"] = names(p.atoms, a.pre());
      o["add"] = names(p.atoms, a.add());
      o["del"] = names(p.atoms, a.del());
    } else {
      json effs = json::array();
      for (const auto& e : a.effects()) {
        effs.push_back({{"condition", names(p.atoms, e.condition)},
                        {"add", names(p.atoms, e.adds)},
                        {"del", names(p.atoms, e.dels)}});
      }
      o["effects"] = std::move(effs);
    }
    acts.push_back(std::move(o));
  }
  j["actions"] = std::move(acts);
  j["init"] = names(p.atoms, p.init.atoms());
  j["goals"] = names(p.atoms, p.goals);
  return j;
}

PlanningProblem load_ground_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroundFileError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw GroundFileError(path + ": " + e.what());
  }
  return problem_from_json(j);
}

}  // namespace gam
