#include "fhtp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fhtp/errors.hpp"

namespace fhtp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(key, "missing field");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "expected a finite number");
  return x;
}

std::vector<double> numbers(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> matrix(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(numbers(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void expect_length(std::size_t got, std::size_t want, const std::string& field) {
  if (got != want) {
    fail(field, "expected " + std::to_string(want) + " entries, got " + std::to_string(got));
  }
}

}  // namespace

void validate(const Scenario& s) {
  const std::size_t n = s.num_pairs;
  if (n == 0) fail("num_pairs", "must be positive");
  if (s.horizon < 1) fail("horizon", "must be at least 1");
  if (!(s.slot_duration > 0.0)) fail("slot_duration", "must be positive");
  expect_length(s.power_sets.size(), n, "power_sets");
  expect_length(s.noise.size(), n, "noise");
  expect_length(s.gains.size(), n, "gains");
  expect_length(s.target_rate.size(), n, "target_rate");
  expect_length(s.gamma.size(), n, "gamma");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string at = "[" + std::to_string(i) + "]";
    expect_length(s.gains[i].size(), n, "gains" + at);
    for (std::size_t j = 0; j < n; ++j) {
      if (s.gains[i][j] < 0.0) fail("gains" + at + "[" + std::to_string(j) + "]", "negative gain");
    }
    if (!(s.gains[i][i] > 0.0)) fail("gains" + at + at, "direct gain must be positive");
    if (!(s.noise[i] > 0.0)) fail("noise" + at, "must be positive");
    if (s.target_rate[i] < 0.0) fail("target_rate" + at, "negative rate");
    if (!(s.gamma[i] >= 1.0)) fail("gamma" + at, "must be at least 1");
    if (s.power_sets[i].empty()) fail("power_sets" + at, "empty power set");
    bool has_zero = false;
    for (std::size_t k = 0; k < s.power_sets[i].size(); ++k) {
      const double p = s.power_sets[i][k];
      if (p < 0.0) fail("power_sets" + at + "[" + std::to_string(k) + "]", "negative power");
      has_zero = has_zero || p == 0.0;
    }
    if (!has_zero) fail("power_sets" + at, "must contain 0");
  }
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  Scenario s;
  const json& n = require(doc, "num_pairs");
  if (!n.is_number_integer() || n.get<long long>() < 1) fail("num_pairs", "expected a positive integer");
  s.num_pairs = n.get<std::size_t>();
  const json& t = require(doc, "horizon");
  if (!t.is_number_integer() || t.get<long long>() < 1) fail("horizon", "expected a positive integer");
  s.horizon = t.get<int>();
  s.slot_duration = number(require(doc, "slot_duration"), "slot_duration");
  s.power_sets = matrix(require(doc, "power_sets"), "power_sets");
  s.noise = numbers(require(doc, "noise"), "noise");
  s.gains = matrix(require(doc, "gains"), "gains");
  s.target_rate = numbers(require(doc, "target_rate"), "target_rate");
  if (auto it = doc.find("gamma"); it != doc.end()) {
    s.gamma = numbers(*it, "gamma");
  } else {
    s.gamma.assign(s.num_pairs, 1.0);
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["num_pairs"] = s.num_pairs;
  doc["horizon"] = s.horizon;
  doc["slot_duration"] = s.slot_duration;
  doc["power_sets"] = s.power_sets;
  doc["noise"] = s.noise;
  doc["gains"] = s.gains;
  doc["target_rate"] = s.target_rate;
  doc["gamma"] = s.gamma;
  return doc.dump(2);
}

ChannelModel Scenario::channel() const {
  validate(*this);
  auto g = gains;
  for (std::size_t i = 0; i < num_pairs; ++i) g[i][i] /= gamma[i];
  return ChannelModel(std::move(g), noise, power_sets, slot_duration);
}

namespace {

Scenario three_pair(double d1, double d2, double d3, double cross) {
  Scenario s;
  s.num_pairs = 3;
  s.horizon = 5;
  s.slot_duration = 1.0;
  s.power_sets = {{0.0, 2.0}, {0.0, 2.0}, {0.0, 2.0}};
  s.noise = {0.1, 0.1, 0.1};
  s.gains = {{d1, cross, cross}, {cross, d2, cross}, {cross, cross, d3}};
  s.target_rate = {1.0, 1.0, 1.0};
  s.gamma = {1.0, 1.0, 1.0};
  return s;
}

}  // namespace

Scenario example1_scenario() { return three_pair(0.5, 0.6, 0.7, 0.2); }

Scenario example2_scenario() { return three_pair(0.2, 0.2, 0.2, 0.5); }

Scenario counterexample_scenario() {
  Scenario s;
  s.num_pairs = 2;
  s.horizon = 1;
  s.slot_duration = 1.0;
  s.power_sets = {{0.0, 2.0}, {0.0, 2.0}};
  s.noise = {0.1, 0.1};
  s.gains = {{0.5, 0.2}, {0.2, 0.6}};
  s.target_rate = {1.5, 1.7};
  s.gamma = {1.0, 1.0};
  return s;
}

}  // namespace fhtp
