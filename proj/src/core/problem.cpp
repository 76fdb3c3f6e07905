#include "core/problem.hpp"

#include <algorithm>

#include <json.hpp>

#include "core/errors.hpp"

namespace hegrad {

using nlohmann::json;

std::string participant_name(ParticipantId id) {
  if (id == kSystemOperator) return "SO";
  return "agent" + std::to_string(id);
}

CoefficientPartition build_partition(
    const std::vector<std::set<ParticipantId>>& holders) {
  CoefficientPartition partition;
  partition.owner.reserve(holders.size());
  for (std::size_t i = 0; i < holders.size(); ++i) {
    if (holders[i].empty()) {
      throw Error(ErrorCode::unowned_coefficient,
                  "coefficient " + std::to_string(i + 1) + " has no holder");
    }
    // SO has the lowest identity index (0), so *std::min_element keeps
    // property (i): the operator retains everything it holds.
    partition.owner.push_back(*holders[i].begin());
  }
  return partition;
}

StepSchedule StepSchedule::constant(ScaledDecimal gamma) {
  StepSchedule s;
  s.constant_ = true;
  s.values_ = {std::move(gamma)};
  return s;
}

StepSchedule StepSchedule::table(std::vector<ScaledDecimal> gammas) {
  if (gammas.empty()) {
    throw Error(ErrorCode::invalid_argument, "empty step-size table");
  }
  StepSchedule s;
  s.constant_ = false;
  s.values_ = std::move(gammas);
  return s;
}

const ScaledDecimal& StepSchedule::at(std::size_t k) const {
  if (constant_) return values_.front();
  if (k >= values_.size()) {
    throw Error(ErrorCode::out_of_range,
                "step-size table has no entry for step " + std::to_string(k));
  }
  return values_[k];
}

std::vector<ScaledDecimal> gradient_update(const std::vector<ScaledDecimal>& x,
                                           const ScaledDecimal& gamma,
                                           const std::vector<ScaledDecimal>& phi,
                                           const FeasibleSet& set) {
  if (x.size() != phi.size() || x.size() != set.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "gradient_update dimensions disagree");
  }
  if (gamma.is_negative() || gamma.is_zero()) {
    throw Error(ErrorCode::invalid_argument, "step size must be positive");
  }
  std::vector<ScaledDecimal> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - gamma * phi[i];
  return set.project(z);
}

std::size_t Problem::total_dim() const {
  std::size_t n = 0;
  for (const auto& a : agents) n += a.dim;
  return n;
}

std::pair<std::size_t, std::size_t> Problem::locate(std::size_t flat) const {
  std::size_t base = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (flat < base + agents[i].dim) return {i, flat - base};
    base += agents[i].dim;
  }
  throw Error(ErrorCode::dimension_mismatch, "flat coordinate out of range");
}

std::size_t Problem::flat_base(std::size_t agent_index) const {
  std::size_t base = 0;
  for (std::size_t i = 0; i < agent_index; ++i) base += agents[i].dim;
  return base;
}

std::vector<ScaledDecimal> Problem::initial_state() const {
  std::vector<ScaledDecimal> x;
  x.reserve(total_dim());
  for (const auto& a : agents) x.insert(x.end(), a.x0.begin(), a.x0.end());
  return x;
}

std::vector<ScaledDecimal> Problem::eval_gradients(
    const std::vector<ScaledDecimal>& x) const {
  std::vector<ScaledDecimal> phi;
  phi.reserve(gradients.size());
  for (const auto& g : gradients) phi.push_back(g.evaluate(x, coefficients));
  return phi;
}

bool Problem::all_affine() const {
  return std::all_of(gradients.begin(), gradients.end(),
                     [](const Polynomial& g) { return g.to_affine().has_value(); });
}

namespace {

struct Interval {
  ScaledDecimal lo, hi;

  static Interval point(const ScaledDecimal& v) { return {v, v}; }

  Interval operator*(const Interval& o) const {
    ScaledDecimal a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Interval r{a, a};
    for (const auto& v : {b, c, d}) {
      if (v < r.lo) r.lo = v;
      if (v > r.hi) r.hi = v;
    }
    return r;
  }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }

  ScaledDecimal magnitude() const {
    ScaledDecimal a = lo.abs(), b = hi.abs();
    return a > b ? a : b;
  }
};

Interval pow_interval(Interval base, unsigned e) {
  Interval acc = base;
  for (unsigned i = 1; i < e; ++i) acc = acc * base;
  return acc;
}

}  // namespace

std::optional<std::vector<ScaledDecimal>> Problem::worst_case_gradient_bounds() const {
  std::vector<Interval> state_range;
  for (const auto& a : agents) {
    if (!a.feasible.is_bounded()) return std::nullopt;
    for (std::size_t i = 0; i < a.dim; ++i)
      state_range.push_back({*a.feasible.bounds()[i].lo, *a.feasible.bounds()[i].hi});
  }
  std::vector<ScaledDecimal> bounds;
  bounds.reserve(gradients.size());
  for (const auto& g : gradients) {
    Interval total{ScaledDecimal(), ScaledDecimal()};
    for (const auto& m : g.monomials()) {
      Interval term = Interval::point(m.literal);
      for (const auto& [var, e] : m.x_exponents)
        term = term * pow_interval(state_range.at(var - 1), e);
      for (const auto& [var, e] : m.y_exponents)
        term = term * pow_interval(Interval::point(coefficients.at(var - 1)), e);
      total = total + term;
    }
    bounds.push_back(total.magnitude());
  }
  return bounds;
}

void Problem::validate() const {
  if (agents.empty()) throw Error(ErrorCode::invalid_argument, "problem has no agents");
  std::size_t n = total_dim();
  if (gradients.size() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "expected one gradient per state coordinate (" + std::to_string(n) +
                    "), got " + std::to_string(gradients.size()));
  }
  for (const auto& a : agents) {
    if (a.dim == 0) throw Error(ErrorCode::invalid_argument, "agent with zero dimension");
    if (a.feasible.dim() != a.dim || a.x0.size() != a.dim) {
      throw Error(ErrorCode::dimension_mismatch, "agent block dimensions disagree");
    }
    if (a.feasible.max_bound_digits() > sigma) {
      throw Error(ErrorCode::precision_exceeded,
                  "feasible-set bound needs more fraction digits than sigma");
    }
    for (const auto& v : a.x0) {
      if (v.fraction_digits() > sigma) {
        throw Error(ErrorCode::precision_exceeded,
                    "initial state " + v.str() + " needs more fraction digits than sigma");
      }
    }
    if (!a.feasible.contains(a.x0)) {
      throw Error(ErrorCode::invalid_argument, "initial state outside feasible set");
    }
  }
  if (holders.size() != coefficients.size()) {
    throw Error(ErrorCode::dimension_mismatch, "holder list and coefficient list differ");
  }
  for (const auto& c : coefficients) {
    if (c.fraction_digits() > sigma) {
      throw Error(ErrorCode::precision_exceeded,
                  "coefficient " + c.str() + " needs more fraction digits than sigma");
    }
  }
  for (const auto& hs : holders) {
    for (ParticipantId p : hs) {
      if (p > agents.size()) {
        throw Error(ErrorCode::invalid_argument, "holder id out of range");
      }
    }
  }
  // partition consistency: operator keeps its set, agents own subsets of
  // what they hold, and everything is covered (disjointness is structural).
  if (partition.owner.size() != coefficients.size()) {
    throw Error(ErrorCode::dimension_mismatch, "partition does not cover coefficients");
  }
  for (std::size_t i = 0; i < partition.owner.size(); ++i) {
    if (!holders[i].count(partition.owner[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "partition assigns coefficient " + std::to_string(i + 1) +
                      " to a non-holder");
    }
    if (holders[i].count(kSystemOperator) && partition.owner[i] != kSystemOperator) {
      throw Error(ErrorCode::invalid_argument,
                  "operator-held coefficient assigned away from the operator");
    }
  }
  for (const auto& g : gradients) {
    if (g.max_x_var() > n) {
      throw Error(ErrorCode::dimension_mismatch, "gradient references unknown state var");
    }
    if (g.max_y_var() > coefficients.size()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "gradient references unknown coefficient var");
    }
  }
  for (const auto& gval : gamma.values()) {
    if (gval.is_zero() || gval.is_negative()) {
      throw Error(ErrorCode::invalid_argument, "step sizes must be positive");
    }
    if (gval.fraction_digits() > sigma) {
      throw Error(ErrorCode::precision_exceeded, "step size finer than sigma");
    }
  }
}

namespace {

json feasible_to_json(const FeasibleSet& set) {
  json j;
  switch (set.kind()) {
    case FeasibleSet::Kind::all_reals:
      j["kind"] = "all";
      break;
    case FeasibleSet::Kind::non_negative:
      j["kind"] = "orthant";
      break;
    case FeasibleSet::Kind::box: {
      j["kind"] = "box";
      json lo = json::array(), hi = json::array();
      for (const auto& b : set.bounds()) {
        lo.push_back(b.lo->str());
        hi.push_back(b.hi->str());
      }
      j["lo"] = lo;
      j["hi"] = hi;
      break;
    }
    case FeasibleSet::Kind::product: {
      j["kind"] = "product";
      json coords = json::array();
      for (const auto& b : set.bounds()) {
        json c = json::object();
        if (b.lo) c["lo"] = b.lo->str();
        if (b.hi) c["hi"] = b.hi->str();
        coords.push_back(c);
      }
      j["coords"] = coords;
      break;
    }
  }
  return j;
}

FeasibleSet feasible_from_json(const json& j, std::size_t dim) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "all") return FeasibleSet::all_reals(dim);
  if (kind == "orthant") return FeasibleSet::non_negative(dim);
  if (kind == "box") {
    std::vector<ScaledDecimal> lo, hi;
    for (const auto& v : j.at("lo")) lo.push_back(ScaledDecimal::parse(v.get<std::string>()));
    for (const auto& v : j.at("hi")) hi.push_back(ScaledDecimal::parse(v.get<std::string>()));
    if (lo.size() != dim || hi.size() != dim) {
      throw Error(ErrorCode::dimension_mismatch, "box bounds do not match agent dim");
    }
    return FeasibleSet::box(std::move(lo), std::move(hi));
  }
  if (kind == "product") {
    std::vector<CoordinateBound> bounds;
    for (const auto& c : j.at("coords")) {
      CoordinateBound b;
      if (c.contains("lo")) b.lo = ScaledDecimal::parse(c.at("lo").get<std::string>());
      if (c.contains("hi")) b.hi = ScaledDecimal::parse(c.at("hi").get<std::string>());
      bounds.push_back(std::move(b));
    }
    if (bounds.size() != dim) {
      throw Error(ErrorCode::dimension_mismatch, "product bounds do not match agent dim");
    }
    return FeasibleSet::product(std::move(bounds));
  }
  throw Error(ErrorCode::parse_error, "unknown feasible-set kind: " + kind);
}

json monomial_to_json(const Monomial& m) {
  json j;
  json x = json::object(), y = json::object();
  for (const auto& [var, e] : m.x_exponents) x[std::to_string(var)] = e;
  for (const auto& [var, e] : m.y_exponents) y[std::to_string(var)] = e;
  if (!x.empty()) j["x"] = x;
  if (!y.empty()) j["y"] = y;
  j["lit"] = m.literal.str();
  return j;
}

Monomial monomial_from_json(const json& j) {
  Monomial m;
  if (j.contains("x")) {
    for (const auto& [key, val] : j.at("x").items())
      m.x_exponents[static_cast<VarId>(std::stoul(key))] = val.get<unsigned>();
  }
  if (j.contains("y")) {
    for (const auto& [key, val] : j.at("y").items())
      m.y_exponents[static_cast<VarId>(std::stoul(key))] = val.get<unsigned>();
  }
  if (j.contains("lit")) m.literal = ScaledDecimal::parse(j.at("lit").get<std::string>());
  return m;
}

}  // namespace

std::string Problem::to_json() const {
  json j;
  j["schema"] = "hegrad-problem/1";
  j["sigma"] = sigma;
  if (gamma.is_constant()) {
    j["gamma"] = {{"constant", gamma.at(0).str()}};
  } else {
    json t = json::array();
    for (const auto& v : gamma.values()) t.push_back(v.str());
    j["gamma"] = {{"table", t}};
  }
  json ja = json::array();
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& a = agents[i];
    json x0 = json::array();
    for (const auto& v : a.x0) x0.push_back(v.str());
    ja.push_back({{"id", i + 1},
                  {"dim", a.dim},
                  {"feasible", feasible_to_json(a.feasible)},
                  {"x0", x0}});
  }
  j["agents"] = ja;
  json jc = json::array();
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    json owners = json::array();
    for (ParticipantId p : holders[i]) owners.push_back(p);
    jc.push_back({{"id", i + 1}, {"value", coefficients[i].str()}, {"holders", owners}});
  }
  j["coefficients"] = jc;
  json jg = json::array();
  for (std::size_t flat = 0; flat < gradients.size(); ++flat) {
    auto [agent, coord] = locate(flat);
    json ms = json::array();
    for (const auto& m : gradients[flat].monomials()) ms.push_back(monomial_to_json(m));
    jg.push_back({{"agent", agent + 1}, {"coord", coord + 1}, {"monomials", ms}});
  }
  j["gradients"] = jg;
  if (!annotations.empty()) {
    json notes = json::object();
    for (const auto& [k, v] : annotations) notes[k] = v;
    j["notes"] = notes;
  }
  return j.dump(2);
}

Problem Problem::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  try {
    Problem p;
    p.sigma = j.at("sigma").get<unsigned>();
    const json& jg = j.at("gamma");
    if (jg.contains("constant")) {
      p.gamma = StepSchedule::constant(ScaledDecimal::parse(jg.at("constant").get<std::string>()));
    } else {
      std::vector<ScaledDecimal> t;
      for (const auto& v : jg.at("table")) t.push_back(ScaledDecimal::parse(v.get<std::string>()));
      p.gamma = StepSchedule::table(std::move(t));
    }
    for (const auto& a : j.at("agents")) {
      AgentSpec spec;
      spec.dim = a.at("dim").get<std::size_t>();
      spec.feasible = feasible_from_json(a.at("feasible"), spec.dim);
      for (const auto& v : a.at("x0")) spec.x0.push_back(ScaledDecimal::parse(v.get<std::string>()));
      p.agents.push_back(std::move(spec));
    }
    if (j.contains("coefficients")) {
      for (const auto& c : j.at("coefficients")) {
        p.coefficients.push_back(ScaledDecimal::parse(c.at("value").get<std::string>()));
        std::set<ParticipantId> hs;
        for (const auto& o : c.at("holders")) hs.insert(o.get<ParticipantId>());
        p.holders.push_back(std::move(hs));
      }
    }
    p.partition = build_partition(p.holders);
    p.gradients.assign(p.total_dim(), Polynomial());
    for (const auto& g : j.at("gradients")) {
      std::size_t agent = g.at("agent").get<std::size_t>();
      std::size_t coord = g.at("coord").get<std::size_t>();
      if (agent == 0 || agent > p.agents.size() || coord == 0 ||
          coord > p.agents[agent - 1].dim) {
        throw Error(ErrorCode::dimension_mismatch, "gradient block out of range");
      }
      std::vector<Monomial> ms;
      for (const auto& m : g.at("monomials")) ms.push_back(monomial_from_json(m));
      p.gradients[p.flat_base(agent - 1) + coord - 1] = Polynomial(std::move(ms));
    }
    if (j.contains("notes")) {
      for (const auto& [k, v] : j.at("notes").items())
        p.annotations.emplace_back(k, v.get<std::string>());
    }
    p.validate();
    return p;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

}  // namespace hegrad
