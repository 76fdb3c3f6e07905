#include "core/casestudies.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "core/errors.hpp"

namespace hegrad {
namespace casestudies {

using nlohmann::json;

Topology Topology::make(Kind kind, std::size_t size) {
  if (size < 2) throw Error(ErrorCode::size_too_small, "topology needs at least 2 nodes");
  Topology t;
  t.size = size;
  switch (kind) {
    case Kind::path:
      for (unsigned i = 1; i < size; ++i) t.lines.emplace_back(i, i + 1);
      break;
    case Kind::ring:
      for (unsigned i = 1; i < size; ++i) t.lines.emplace_back(i, i + 1);
      t.lines.emplace_back(static_cast<unsigned>(size), 1u);
      break;
    case Kind::star:
      for (unsigned i = 2; i <= size; ++i) t.lines.emplace_back(1u, i);
      break;
  }
  return t;
}

Topology Topology::make(const std::string& kind, std::size_t size) {
  if (kind == "path") return make(Kind::path, size);
  if (kind == "ring") return make(Kind::ring, size);
  if (kind == "star") return make(Kind::star, size);
  throw Error(ErrorCode::config_invalid, "unknown topology kind: " + kind);
}

std::vector<std::vector<unsigned>> Topology::neighbor_lists() const {
  std::vector<std::set<unsigned>> sets(size + 1);
  for (const auto& [a, b] : lines) {
    if (a == 0 || b == 0 || a > size || b > size || a == b) {
      throw Error(ErrorCode::config_invalid, "line endpoints out of range");
    }
    sets[a].insert(b);
    sets[b].insert(a);
  }
  std::vector<std::vector<unsigned>> out(size);
  for (std::size_t i = 1; i <= size; ++i) out[i - 1].assign(sets[i].begin(), sets[i].end());
  return out;
}

namespace {

// Deterministic shift factors in [-0.9, 0.9] with one fraction digit.
ScaledDecimal shift_factor(unsigned line, unsigned bus, unsigned salt) {
  long v = static_cast<long>((line * 7 + bus * 3 + salt * 5) % 19) - 9;
  return ScaledDecimal(mpz_class(v), 1);
}

ScaledDecimal decimal_from_json(const json& j) {
  return ScaledDecimal::parse(j.get<std::string>());
}

void read_decimal_list(const json& j, const char* key, std::vector<ScaledDecimal>* out) {
  if (!j.contains(key)) return;
  out->clear();
  for (const auto& v : j.at(key)) out->push_back(decimal_from_json(v));
}

Topology topology_from_json(const json& j) {
  if (!j.contains("topology")) {
    throw Error(ErrorCode::config_invalid, "config needs a topology");
  }
  const json& t = j.at("topology");
  return Topology::make(t.at("kind").get<std::string>(), t.at("size").get<std::size_t>());
}

}  // namespace

std::size_t DemandResponseConfig::customer_count() const {
  std::set<unsigned> supply(supply_buses.begin(), supply_buses.end());
  return topology.size - supply.size();
}

DemandResponseConfig DemandResponseConfig::standard(Topology topology,
                                                    std::vector<unsigned> supply_buses) {
  DemandResponseConfig cfg;
  cfg.topology = std::move(topology);
  cfg.supply_buses = std::move(supply_buses);
  std::size_t customers = cfg.customer_count();
  std::size_t lines = cfg.topology.lines.size();
  if (customers == 0) throw Error(ErrorCode::config_invalid, "no load buses");
  for (std::size_t i = 1; i <= customers; ++i) {
    cfg.disutility.push_back(ScaledDecimal::parse("0.5") +
                             ScaledDecimal::parse("0.1") * ScaledDecimal(long(i)));
    cfg.benefit_quad.push_back(ScaledDecimal::parse("0.1"));
    cfg.benefit_lin.push_back(ScaledDecimal::parse("1.2"));
    cfg.load.push_back(ScaledDecimal(long(8 + i)));
    cfg.initial_curtailment.push_back(ScaledDecimal(0));
  }
  for (std::size_t s = 0; s < cfg.supply_buses.size(); ++s) {
    cfg.supply.push_back(ScaledDecimal(long(6 * customers)));
  }
  for (std::size_t e = 0; e < lines; ++e) cfg.line_capacity.push_back(ScaledDecimal(5));
  return cfg;
}

DemandResponseConfig DemandResponseConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  try {
    Topology topo = topology_from_json(j);
    std::vector<unsigned> supply = {1};
    if (j.contains("supply_buses")) {
      supply.clear();
      for (const auto& b : j.at("supply_buses")) supply.push_back(b.get<unsigned>());
    }
    DemandResponseConfig cfg = DemandResponseConfig::standard(topo, supply);
    if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<unsigned>();
    if (j.contains("gamma")) cfg.gamma = decimal_from_json(j.at("gamma"));
    if (j.contains("lambda")) cfg.price_coefficient = decimal_from_json(j.at("lambda"));
    read_decimal_list(j, "c", &cfg.disutility);
    read_decimal_list(j, "a", &cfg.benefit_quad);
    read_decimal_list(j, "b", &cfg.benefit_lin);
    read_decimal_list(j, "L", &cfg.load);
    read_decimal_list(j, "R0", &cfg.initial_curtailment);
    read_decimal_list(j, "S", &cfg.supply);
    read_decimal_list(j, "fmax", &cfg.line_capacity);
    return cfg;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::config_invalid, e.what());
  }
}

Problem build_demand_response(const DemandResponseConfig& cfg) {
  std::set<unsigned> supply_set(cfg.supply_buses.begin(), cfg.supply_buses.end());
  for (unsigned s : supply_set) {
    if (s == 0 || s > cfg.topology.size) {
      throw Error(ErrorCode::config_invalid, "supply bus out of range");
    }
  }
  std::vector<unsigned> load_buses;
  for (unsigned b = 1; b <= cfg.topology.size; ++b) {
    if (!supply_set.count(b)) load_buses.push_back(b);
  }
  std::size_t customers = load_buses.size();
  std::size_t lines = cfg.topology.lines.size();
  std::size_t supplies = supply_set.size();
  if (customers == 0) throw Error(ErrorCode::config_invalid, "no load buses");
  if (cfg.disutility.size() != customers || cfg.benefit_quad.size() != customers ||
      cfg.benefit_lin.size() != customers || cfg.load.size() != customers ||
      cfg.initial_curtailment.size() != customers || cfg.supply.size() != supplies ||
      cfg.line_capacity.size() != lines) {
    throw Error(ErrorCode::config_invalid, "parameter vectors do not match the network");
  }
  for (const auto& a : cfg.benefit_quad) {
    if (a.is_zero() || a.is_negative()) {
      throw Error(ErrorCode::config_invalid, "benefit curvature must be positive");
    }
  }
  if (cfg.price_coefficient.is_zero() || cfg.price_coefficient.is_negative()) {
    throw Error(ErrorCode::config_invalid, "price coefficient must be positive");
  }
  for (std::size_t i = 0; i < customers; ++i) {
    if (cfg.initial_curtailment[i].is_negative() ||
        cfg.initial_curtailment[i] > cfg.load[i]) {
      throw Error(ErrorCode::config_invalid, "initial curtailment outside [0, L]");
    }
  }

  // Coefficient ids: lambda, H_s (line x supply), H_l (line x customer),
  // S, f_max (operator-held); then a_i, b_i, c_i, L_i per customer.
  Problem p;
  p.sigma = cfg.sigma;
  p.gamma = StepSchedule::constant(cfg.gamma);

  auto add_coeff = [&](const ScaledDecimal& value, ParticipantId holder) -> VarId {
    p.coefficients.push_back(value);
    p.holders.push_back({holder});
    return static_cast<VarId>(p.coefficients.size());
  };

  VarId lambda = add_coeff(cfg.price_coefficient, kSystemOperator);
  std::vector<std::vector<VarId>> hs(lines, std::vector<VarId>(supplies));
  std::vector<std::vector<VarId>> hl(lines, std::vector<VarId>(customers));
  for (std::size_t e = 0; e < lines; ++e) {
    for (std::size_t s = 0; s < supplies; ++s) {
      hs[e][s] = add_coeff(shift_factor(e + 1, s + 1, 1), kSystemOperator);
    }
    for (std::size_t i = 0; i < customers; ++i) {
      hl[e][i] = add_coeff(shift_factor(e + 1, i + 1, 2), kSystemOperator);
    }
  }
  std::vector<VarId> s_ids(supplies), f_ids(lines);
  for (std::size_t s = 0; s < supplies; ++s) s_ids[s] = add_coeff(cfg.supply[s], kSystemOperator);
  for (std::size_t e = 0; e < lines; ++e) f_ids[e] = add_coeff(cfg.line_capacity[e], kSystemOperator);
  std::vector<VarId> a_ids(customers), b_ids(customers), c_ids(customers), l_ids(customers);
  for (std::size_t i = 0; i < customers; ++i) {
    ParticipantId who = static_cast<ParticipantId>(i + 1);
    a_ids[i] = add_coeff(cfg.benefit_quad[i], who);
    b_ids[i] = add_coeff(cfg.benefit_lin[i], who);
    c_ids[i] = add_coeff(cfg.disutility[i], who);
    l_ids[i] = add_coeff(cfg.load[i], who);
  }
  p.partition = build_partition(p.holders);

  // State layout per customer: reduced load first, then the round-robin
  // share of the stacked duals (mu_0, mu_+ per line, mu_- per line).
  std::size_t dual_total = 1 + 2 * lines;
  std::vector<std::vector<std::size_t>> dual_share(customers);
  for (std::size_t d = 0; d < dual_total; ++d) dual_share[d % customers].push_back(d);

  std::vector<std::size_t> r_flat(customers);
  std::vector<std::size_t> dual_flat(dual_total);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < customers; ++i) {
    AgentSpec agent;
    agent.dim = 1 + dual_share[i].size();
    std::vector<CoordinateBound> bounds;
    bounds.push_back({ScaledDecimal(0), cfg.load[i]});
    agent.x0.push_back(cfg.initial_curtailment[i]);
    r_flat[i] = flat++;
    for (std::size_t d : dual_share[i]) {
      bounds.push_back({ScaledDecimal(0), std::nullopt});
      agent.x0.push_back(ScaledDecimal(0));
      dual_flat[d] = flat++;
    }
    agent.feasible = FeasibleSet::product(std::move(bounds));
    p.agents.push_back(std::move(agent));
  }

  auto xvar = [](std::size_t flat_id) { return static_cast<VarId>(flat_id + 1); };
  const ScaledDecimal one(1), minus_one(-1), two(2), minus_two(-2);

  p.gradients.assign(flat, Polynomial());
  for (std::size_t i = 0; i < customers; ++i) {
    std::vector<Monomial> ms;
    // c_i + b_i - a_i (L_i - R_i)
    ms.push_back({{}, {{c_ids[i], 1}}, one});
    ms.push_back({{}, {{b_ids[i], 1}}, one});
    ms.push_back({{}, {{a_ids[i], 1}, {l_ids[i], 1}}, minus_one});
    ms.push_back({{{xvar(r_flat[i]), 1}}, {{a_ids[i], 1}}, one});
    // -2 lambda (1^T (L-R)) (L_i - R_i) - lambda (1^T (L-R))^2, expanded over
    // customer pairs; coalescing merges the symmetric duplicates.
    for (std::size_t jdx = 0; jdx < customers; ++jdx) {
      Monomial m1;  // -2 lambda L_j L_i
      m1.literal = minus_two;
      m1.y_exponents[lambda] += 1;
      m1.y_exponents[l_ids[jdx]] += 1;
      m1.y_exponents[l_ids[i]] += 1;
      ms.push_back(m1);
      Monomial m2;  // +2 lambda L_j R_i
      m2.literal = two;
      m2.y_exponents[lambda] += 1;
      m2.y_exponents[l_ids[jdx]] += 1;
      m2.x_exponents[xvar(r_flat[i])] += 1;
      ms.push_back(m2);
      Monomial m3;  // +2 lambda R_j L_i
      m3.literal = two;
      m3.y_exponents[lambda] += 1;
      m3.y_exponents[l_ids[i]] += 1;
      m3.x_exponents[xvar(r_flat[jdx])] += 1;
      ms.push_back(m3);
      Monomial m4;  // -2 lambda R_j R_i
      m4.literal = minus_two;
      m4.y_exponents[lambda] += 1;
      m4.x_exponents[xvar(r_flat[jdx])] += 1;
      m4.x_exponents[xvar(r_flat[i])] += 1;
      ms.push_back(m4);
      for (std::size_t mdx = 0; mdx < customers; ++mdx) {
        Monomial q1;  // -lambda L_j L_m
        q1.literal = minus_one;
        q1.y_exponents[lambda] += 1;
        q1.y_exponents[l_ids[jdx]] += 1;
        q1.y_exponents[l_ids[mdx]] += 1;
        ms.push_back(q1);
        Monomial q2;  // +lambda L_j R_m
        q2.literal = one;
        q2.y_exponents[lambda] += 1;
        q2.y_exponents[l_ids[jdx]] += 1;
        q2.x_exponents[xvar(r_flat[mdx])] += 1;
        ms.push_back(q2);
        Monomial q3;  // +lambda R_j L_m
        q3.literal = one;
        q3.y_exponents[lambda] += 1;
        q3.y_exponents[l_ids[mdx]] += 1;
        q3.x_exponents[xvar(r_flat[jdx])] += 1;
        ms.push_back(q3);
        Monomial q4;  // -lambda R_j R_m
        q4.literal = minus_one;
        q4.y_exponents[lambda] += 1;
        q4.x_exponents[xvar(r_flat[jdx])] += 1;
        q4.x_exponents[xvar(r_flat[mdx])] += 1;
        ms.push_back(q4);
      }
    }
    // -mu_0 + (mu_+ - mu_-)^T H_l(i)
    ms.push_back({{{xvar(dual_flat[0]), 1}}, {}, minus_one});
    for (std::size_t e = 0; e < lines; ++e) {
      ms.push_back({{{xvar(dual_flat[1 + e]), 1}}, {{hl[e][i], 1}}, one});
      ms.push_back({{{xvar(dual_flat[1 + lines + e]), 1}}, {{hl[e][i], 1}}, minus_one});
    }
    p.gradients[r_flat[i]] = Polynomial(std::move(ms));
  }

  {  // supply balance dual: ascent on 1^T(L-R) - 1^T S
    std::vector<Monomial> ms;
    for (std::size_t i = 0; i < customers; ++i) {
      ms.push_back({{}, {{l_ids[i], 1}}, minus_one});
      ms.push_back({{{xvar(r_flat[i]), 1}}, {}, one});
    }
    for (std::size_t s = 0; s < supplies; ++s) ms.push_back({{}, {{s_ids[s], 1}}, one});
    p.gradients[dual_flat[0]] = Polynomial(std::move(ms));
  }
  for (std::size_t e = 0; e < lines; ++e) {
    std::vector<Monomial> plus, minus;
    for (std::size_t s = 0; s < supplies; ++s) {
      plus.push_back({{}, {{hs[e][s], 1}, {s_ids[s], 1}}, minus_one});
      minus.push_back({{}, {{hs[e][s], 1}, {s_ids[s], 1}}, one});
    }
    for (std::size_t i = 0; i < customers; ++i) {
      plus.push_back({{}, {{hl[e][i], 1}, {l_ids[i], 1}}, one});
      plus.push_back({{{xvar(r_flat[i]), 1}}, {{hl[e][i], 1}}, minus_one});
      minus.push_back({{}, {{hl[e][i], 1}, {l_ids[i], 1}}, minus_one});
      minus.push_back({{{xvar(r_flat[i]), 1}}, {{hl[e][i], 1}}, one});
    }
    plus.push_back({{}, {{f_ids[e], 1}}, one});
    minus.push_back({{}, {{f_ids[e], 1}}, one});
    p.gradients[dual_flat[1 + e]] = Polynomial(std::move(plus));
    p.gradients[dual_flat[1 + lines + e]] = Polynomial(std::move(minus));
  }

  p.annotations.emplace_back("operator_parameters", "lambda, H_s, H_l, S, f_max");
  p.annotations.emplace_back("customer_parameters", "a_i, b_i, c_i, L_i");
  p.validate();
  return p;
}

OpfConfig OpfConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  try {
    OpfConfig cfg;
    cfg.topology = topology_from_json(j);
    if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<unsigned>();
    if (j.contains("gamma")) cfg.gamma = decimal_from_json(j.at("gamma"));
    if (j.contains("a")) cfg.cost_quad = decimal_from_json(j.at("a"));
    if (j.contains("b")) cfg.cost_lin = decimal_from_json(j.at("b"));
    if (j.contains("Pmax")) cfg.power_max = decimal_from_json(j.at("Pmax"));
    if (j.contains("Pmin")) cfg.power_min = decimal_from_json(j.at("Pmin"));
    if (j.contains("L")) cfg.load = decimal_from_json(j.at("L"));
    if (j.contains("Pline")) cfg.line_capacity = decimal_from_json(j.at("Pline"));
    if (j.contains("D")) cfg.damping = decimal_from_json(j.at("D"));
    if (j.contains("t")) cfg.stiffness = decimal_from_json(j.at("t"));
    if (j.contains("omega")) cfg.frequency = decimal_from_json(j.at("omega"));
    if (j.contains("P0")) cfg.initial_power = decimal_from_json(j.at("P0"));
    return cfg;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::config_invalid, e.what());
  }
}

Problem build_opf(const OpfConfig& cfg) {
  if (cfg.cost_quad.is_zero() || cfg.cost_quad.is_negative()) {
    throw Error(ErrorCode::config_invalid, "cost curvature must be positive");
  }
  if (cfg.power_min > cfg.power_max) {
    throw Error(ErrorCode::config_invalid, "power limits inverted");
  }
  if (cfg.initial_power < cfg.power_min || cfg.initial_power > cfg.power_max) {
    throw Error(ErrorCode::config_invalid, "initial power outside its limits");
  }
  auto neighbors = cfg.topology.neighbor_lists();
  std::size_t generators = cfg.topology.size;
  for (const auto& ns : neighbors) {
    if (ns.empty()) throw Error(ErrorCode::config_invalid, "isolated generator");
  }

  Problem p;
  p.sigma = cfg.sigma;
  p.gamma = StepSchedule::constant(cfg.gamma);

  // State layout per generator: P, theta, lambda, then mu_{ij} ascending in j.
  std::vector<std::size_t> p_flat(generators), theta_flat(generators), lambda_flat(generators);
  std::vector<std::map<unsigned, std::size_t>> mu_flat(generators);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < generators; ++i) {
    AgentSpec agent;
    agent.dim = 3 + neighbors[i].size();
    std::vector<CoordinateBound> bounds;
    bounds.push_back({cfg.power_min, cfg.power_max});
    agent.x0.push_back(cfg.initial_power);
    p_flat[i] = flat++;
    bounds.push_back({std::nullopt, std::nullopt});
    agent.x0.push_back(ScaledDecimal(0));
    theta_flat[i] = flat++;
    bounds.push_back({std::nullopt, std::nullopt});
    agent.x0.push_back(ScaledDecimal(0));
    lambda_flat[i] = flat++;
    for (unsigned j : neighbors[i]) {
      bounds.push_back({ScaledDecimal(0), std::nullopt});
      agent.x0.push_back(ScaledDecimal(0));
      mu_flat[i][j] = flat++;
    }
    agent.feasible = FeasibleSet::product(std::move(bounds));
    p.agents.push_back(std::move(agent));
  }

  auto xvar = [](std::size_t flat_id) { return static_cast<VarId>(flat_id + 1); };
  const ScaledDecimal one(1), minus_one(-1);
  const ScaledDecimal neg_stiffness = -cfg.stiffness;

  p.gradients.assign(flat, Polynomial());
  for (std::size_t i = 0; i < generators; ++i) {
    {  // power: 2 a P_i + b - lambda_i
      std::vector<Monomial> ms;
      ms.push_back({{{xvar(p_flat[i]), 1}}, {}, ScaledDecimal(2) * cfg.cost_quad});
      ms.push_back({{}, {}, cfg.cost_lin});
      ms.push_back({{{xvar(lambda_flat[i]), 1}}, {}, minus_one});
      p.gradients[p_flat[i]] = Polynomial(std::move(ms));
    }
    {  // angle: sum_j t (lambda_i + mu_ij) - t (lambda_j + mu_ji)
      std::vector<Monomial> ms;
      for (unsigned j : neighbors[i]) {
        ms.push_back({{{xvar(lambda_flat[i]), 1}}, {}, cfg.stiffness});
        ms.push_back({{{xvar(mu_flat[i].at(j)), 1}}, {}, cfg.stiffness});
        ms.push_back({{{xvar(lambda_flat[j - 1]), 1}}, {}, neg_stiffness});
        ms.push_back({{{xvar(mu_flat[j - 1].at(static_cast<unsigned>(i + 1))), 1}}, {}, neg_stiffness});
      }
      p.gradients[theta_flat[i]] = Polynomial(std::move(ms));
    }
    {  // balance dual: ascent on L - P_i + D*omega + sum_j t (theta_i - theta_j)
      std::vector<Monomial> ms;
      ms.push_back({{}, {}, -(cfg.load + cfg.damping * cfg.frequency)});
      ms.push_back({{{xvar(p_flat[i]), 1}}, {}, one});
      for (unsigned j : neighbors[i]) {
        ms.push_back({{{xvar(theta_flat[i]), 1}}, {}, neg_stiffness});
        ms.push_back({{{xvar(theta_flat[j - 1]), 1}}, {}, cfg.stiffness});
      }
      p.gradients[lambda_flat[i]] = Polynomial(std::move(ms));
    }
    for (unsigned j : neighbors[i]) {  // line dual: ascent on t(theta_i - theta_j) - cap
      std::vector<Monomial> ms;
      ms.push_back({{}, {}, cfg.line_capacity});
      ms.push_back({{{xvar(theta_flat[i]), 1}}, {}, neg_stiffness});
      ms.push_back({{{xvar(theta_flat[j - 1]), 1}}, {}, cfg.stiffness});
      p.gradients[mu_flat[i].at(j)] = Polynomial(std::move(ms));
    }
  }

  p.annotations.emplace_back("generator_parameters", "a_i, b_i, L_i, P_max_i, P_min_i");
  p.annotations.emplace_back("operator_parameters", "P_line_ij, D_i, t_ij");
  p.validate();
  return p;
}

}  // namespace casestudies
}  // namespace hegrad
