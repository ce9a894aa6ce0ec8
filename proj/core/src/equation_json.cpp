#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tailwave/equation.hpp"
#include "tailwave/grid.hpp"

namespace tailwave {

namespace {

using ordered_json = nlohmann::ordered_json;

double require_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

WaveEquation WaveEquation::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("equation file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("equation file must be a JSON object");
  for (const char* key : {"U", "V", "W"})
    if (!j.contains(key) || !j[key].is_string())
      throw ValidationError(std::string("equation field '") + key +
                            "' must be a coefficient string");

  EquationDomain domain;
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    for (const char* axis : {"u", "v"}) {
      if (!d.contains(axis) || !d[axis].is_array() || d[axis].size() != 2)
        throw ValidationError("domain axes must be [lo, hi] pairs");
    }
    domain.rect.u_lo = require_number(d["u"][0], "domain.u[0]");
    domain.rect.u_hi = require_number(d["u"][1], "domain.u[1]");
    domain.rect.v_lo = require_number(d["v"][0], "domain.v[0]");
    domain.rect.v_hi = require_number(d["v"][1], "domain.v[1]");
  }
  if (j.contains("singular_lines")) {
    if (!j["singular_lines"].is_array())
      throw ValidationError("singular_lines must be an array");
    for (const auto& line : j["singular_lines"]) {
      if (!line.is_object() || !line.contains("offset"))
        throw ValidationError("singular_lines entries must be {\"offset\": c}");
      domain.singular_lines.push_back(
          SingularLine{require_number(line["offset"], "singular line offset")});
    }
  }
  if (j.contains("margin")) domain.margin = require_number(j["margin"], "margin");

  return WaveEquation(parse(j["U"].get<std::string>()), parse(j["V"].get<std::string>()),
                      parse(j["W"].get<std::string>()), std::move(domain));
}

WaveEquation WaveEquation::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open equation file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return from_json_text(buf.str());
}

std::string WaveEquation::to_json_text() const {
  ordered_json j;
  j["U"] = U_.str();
  j["V"] = V_.str();
  j["W"] = W_.str();
  j["domain"]["u"] = {domain_.rect.u_lo, domain_.rect.u_hi};
  j["domain"]["v"] = {domain_.rect.v_lo, domain_.rect.v_hi};
  j["singular_lines"] = ordered_json::array();
  for (const SingularLine& line : domain_.singular_lines)
    j["singular_lines"].push_back({{"offset", line.offset}});
  if (domain_.margin != 0.05) j["margin"] = domain_.margin;
  return j.dump(2) + "\n";
}

}  // namespace tailwave
