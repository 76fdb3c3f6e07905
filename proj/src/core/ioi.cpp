#include "core/ioi.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace hegrad {
namespace ioi {

using nlohmann::json;

Rat ScalarSet::project(const Rat& value) const {
  switch (kind) {
    case Kind::all_reals: return value;
    case Kind::non_negative: return value < 0 ? Rat(0) : value;
    case Kind::box:
      if (value < lo) return lo;
      if (value > hi) return hi;
      return value;
  }
  throw Error(ErrorCode::internal, "bad scalar set kind");
}

std::size_t QuadraticFamily::total_dim() const {
  std::size_t n = 0;
  for (unsigned d : dims) n += d;
  return n;
}

std::size_t QuadraticFamily::agent_base(unsigned agent) const {
  std::size_t base = 0;
  for (unsigned a = 1; a < agent; ++a) base += dims[a - 1];
  return base;
}

bool QuadraticFamily::knows_b(unsigned agent, std::size_t component) const {
  return components[component].b_known_to.count(agent) > 0;
}

bool QuadraticFamily::is_affine() const {
  for (const auto& c : components) {
    for (std::size_t r = 0; r < c.H.rows(); ++r)
      for (std::size_t s = 0; s < c.H.cols(); ++s)
        if (c.H.at(r, s) != 0) return false;
  }
  return true;
}

void QuadraticFamily::validate() const {
  std::size_t n = total_dim();
  if (dims.empty()) throw Error(ErrorCode::invalid_argument, "family has no agents");
  if (components.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "need one component per coordinate");
  }
  std::size_t expected = 0;
  for (unsigned agent = 1; agent <= dims.size(); ++agent) {
    for (unsigned coord = 1; coord <= dims[agent - 1]; ++coord, ++expected) {
      const auto& c = components[expected];
      if (c.agent != agent || c.coord != coord) {
        throw Error(ErrorCode::invalid_argument,
                    "components must be ordered agent-major and cover every coordinate");
      }
      if (c.H.rows() != n || c.H.cols() != n || c.A.size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "component weight shapes disagree");
      }
      for (unsigned who : c.b_known_to) {
        if (who == 0 || who > dims.size()) {
          throw Error(ErrorCode::invalid_argument, "B knowledge set names unknown agent");
        }
      }
    }
  }
  if (feasible.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "need one scalar set per coordinate");
  }
  if (!x0.empty() && x0.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "initial state has wrong length");
  }
  if (gamma <= 0) throw Error(ErrorCode::invalid_argument, "step size must be positive");
}

namespace {

Rat eval_component(const Component& c, const RatVector& x) {
  Rat value = c.B;
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (c.A[r] != 0) value += c.A[r] * x[r];
    for (std::size_t s = 0; s < x.size(); ++s) {
      if (c.H.at(r, s) != 0) value += x[r] * c.H.at(r, s) * x[s];
    }
  }
  return value;
}

}  // namespace

std::vector<RatVector> simulate(const QuadraticFamily& family, std::size_t steps) {
  family.validate();
  if (family.x0.empty()) {
    throw Error(ErrorCode::invalid_argument, "family has no initial state to simulate");
  }
  std::vector<RatVector> traj{family.x0};
  for (std::size_t k = 0; k < steps; ++k) {
    const RatVector& x = traj.back();
    RatVector next(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
      Rat phi = eval_component(family.components[c], x);
      next[c] = family.feasible[c].project(x[c] - family.gamma * phi);
    }
    traj.push_back(std::move(next));
  }
  return traj;
}

StackedMatrix stack_for_adversary(const QuadraticFamily& family, unsigned adversary) {
  family.validate();
  if (adversary == 0 || adversary > family.agent_count()) {
    throw Error(ErrorCode::invalid_argument, "no such adversary");
  }
  std::size_t n = family.total_dim();
  StackedMatrix out;
  out.adversary = adversary;

  std::vector<unsigned> benign;
  for (unsigned v = 1; v <= family.agent_count(); ++v) {
    if (v != adversary) benign.push_back(v);
  }
  std::map<unsigned, std::size_t> col_base;
  std::size_t cols = 0;
  for (unsigned v : benign) {
    col_base[v] = cols;
    for (unsigned c = 0; c < family.dims[v - 1]; ++c) {
      out.col_to_global.push_back(family.agent_base(v) + c);
    }
    cols += family.dims[v - 1];
  }

  std::size_t h_rows = family.components.size() * benign.size() * n;
  std::size_t a_rows = 0;
  for (std::size_t c = 0; c < family.components.size(); ++c) {
    if (family.knows_b(adversary, c)) ++a_rows;
  }
  out.matrix = RatMatrix(h_rows + a_rows, cols);

  // Quadratic part: for every component and every benign column agent v, the
  // column-stack over all row agents u of H^{uv} + (H^{vu})^T, placed
  // block-diagonally in v.
  std::size_t row = 0;
  for (std::size_t comp = 0; comp < family.components.size(); ++comp) {
    const auto& H = family.components[comp].H;
    for (unsigned v : benign) {
      std::size_t vbase = family.agent_base(v);
      unsigned vdim = family.dims[v - 1];
      StackedMatrix::Block block{comp, v, row, col_base[v], n, vdim, false};
      for (std::size_t u_flat = 0; u_flat < n; ++u_flat) {
        for (unsigned vc = 0; vc < vdim; ++vc) {
          out.matrix.at(row + u_flat, col_base[v] + vc) =
              H.at(u_flat, vbase + vc) + H.at(vbase + vc, u_flat);
        }
      }
      out.blocks.push_back(block);
      row += n;
    }
  }

  // Affine part: only the components whose constant the adversary knows.
  for (std::size_t comp = 0; comp < family.components.size(); ++comp) {
    if (!family.knows_b(adversary, comp)) continue;
    const auto& A = family.components[comp].A;
    for (unsigned v : benign) {
      std::size_t vbase = family.agent_base(v);
      unsigned vdim = family.dims[v - 1];
      out.blocks.push_back({comp, v, row, col_base[v], 1, vdim, true});
      for (unsigned vc = 0; vc < vdim; ++vc) {
        out.matrix.at(row, col_base[v] + vc) = A[vbase + vc];
      }
    }
    ++row;
  }
  return out;
}

RatMatrix StackedMatrix::block_matrix(const Block& b) const {
  RatMatrix m(b.rows, b.cols);
  for (std::size_t r = 0; r < b.rows; ++r)
    for (std::size_t c = 0; c < b.cols; ++c) m.at(r, c) = matrix.at(b.row0 + r, b.col0 + c);
  return m;
}

std::optional<RatVector> find_all_nonzero_null_vector(const StackedMatrix& stacked) {
  RatMatrix basis = null_space_basis(stacked.matrix);
  std::size_t dim = basis.cols();
  std::size_t n = basis.rows();
  if (dim == 0) return std::nullopt;
  // A coordinate is forced to zero exactly when the whole basis vanishes
  // there; in that case no null vector can be entry-wise nonzero.
  for (std::size_t c = 0; c < n; ++c) {
    bool all_zero = true;
    for (std::size_t b = 0; b < dim && all_zero; ++b) {
      if (basis.at(c, b) != 0) all_zero = false;
    }
    if (all_zero) return std::nullopt;
  }
  // Each coordinate of sum_b t^b * basis_b is a nonzero polynomial in t of
  // degree < dim, so at most n*(dim-1) integer choices of t can fail.
  for (long t = 1;; ++t) {
    RatVector v(n, Rat(0));
    Rat power = 1;
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t c = 0; c < n; ++c) v[c] += power * basis.at(c, b);
      power *= t;
    }
    if (std::all_of(v.begin(), v.end(), [](const Rat& e) { return e != 0; })) return v;
  }
}

ShadowInstance build_shadow(const QuadraticFamily& family, unsigned adversary,
                            const RatVector& delta) {
  family.validate();
  std::size_t n = family.total_dim();
  if (delta.size() != n) {
    throw Error(ErrorCode::invalid_delta, "perturbation has wrong length");
  }
  std::size_t abase = family.agent_base(adversary);
  bool all_zero = std::all_of(delta.begin(), delta.end(),
                              [](const Rat& e) { return e == 0; });
  for (unsigned c = 0; c < family.dims[adversary - 1]; ++c) {
    if (delta[abase + c] != 0) {
      throw Error(ErrorCode::invalid_delta, "adversary block must stay zero");
    }
  }
  if (!all_zero) {
    for (std::size_t c = 0; c < n; ++c) {
      bool adversary_coord = c >= abase && c < abase + family.dims[adversary - 1];
      if (!adversary_coord && delta[c] == 0) {
        throw Error(ErrorCode::invalid_delta, "benign entries must all be nonzero");
      }
    }
    StackedMatrix stacked = stack_for_adversary(family, adversary);
    RatVector reduced;
    reduced.reserve(stacked.col_to_global.size());
    for (std::size_t g : stacked.col_to_global) reduced.push_back(delta[g]);
    for (const Rat& r : stacked.matrix.multiply(reduced)) {
      if (r != 0) {
        throw Error(ErrorCode::invalid_delta, "perturbation is not in the null space");
      }
    }
  }
  ShadowInstance shadow;
  shadow.adversary = adversary;
  shadow.delta = delta;
  for (std::size_t comp = 0; comp < family.components.size(); ++comp) {
    if (family.knows_b(adversary, comp)) continue;
    Rat shift = 0;
    for (std::size_t c = 0; c < n; ++c) shift += family.components[comp].A[c] * delta[c];
    shadow.b_hat[comp] = family.components[comp].B - shift;
  }
  return shadow;
}

ShadowCheck verify_shadow(const QuadraticFamily& family, const ShadowInstance& shadow,
                          const std::vector<RatVector>& true_trajectory) {
  family.validate();
  if (true_trajectory.empty()) {
    throw Error(ErrorCode::invalid_argument, "empty trajectory");
  }
  std::size_t n = family.total_dim();
  unsigned i = shadow.adversary;
  auto shifted = [&](const RatVector& x) {
    RatVector out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = x[c] + shadow.delta[c];
    return out;
  };
  auto component_value = [&](std::size_t comp, const RatVector& xhat) {
    Rat b = family.knows_b(i, comp) ? family.components[comp].B : shadow.b_hat.at(comp);
    Component c = family.components[comp];
    c.B = b;
    return eval_component(c, xhat);
  };
  ShadowCheck check;
  for (std::size_t k = 0; k + 1 < true_trajectory.size(); ++k) {
    RatVector xhat = shifted(true_trajectory[k]);
    RatVector xhat_next = shifted(true_trajectory[k + 1]);
    for (std::size_t comp = 0; comp < family.components.size(); ++comp) {
      if (family.components[comp].agent == i) continue;
      Rat g = component_value(comp, xhat);
      // The shifted set projects as P_shifted(z) = P(z - delta) + delta.
      Rat z = xhat[comp] - family.gamma * g;
      Rat projected = family.feasible[comp].project(z - shadow.delta[comp]) +
                      shadow.delta[comp];
      if (projected != xhat_next[comp]) {
        check.first_violation = "benign update mismatch at step " + std::to_string(k) +
                                ", coordinate " + std::to_string(comp + 1);
        return check;
      }
    }
  }
  for (std::size_t k = 0; k < true_trajectory.size(); ++k) {
    RatVector xhat = shifted(true_trajectory[k]);
    for (std::size_t comp = 0; comp < family.components.size(); ++comp) {
      if (family.components[comp].agent != i) continue;
      Rat observed = eval_component(family.components[comp], true_trajectory[k]);
      if (component_value(comp, xhat) != observed) {
        check.first_violation = "adversary observation mismatch at step " +
                                std::to_string(k) + ", coordinate " +
                                std::to_string(comp + 1);
        return check;
      }
    }
  }
  check.ok = true;
  return check;
}

UncertaintyReport uncertainty_report(const QuadraticFamily& family, unsigned adversary,
                                     const RatVector& base_delta, std::size_t steps,
                                     const std::vector<Rat>& ladder) {
  UncertaintyReport report;
  auto traj = simulate(family, steps);
  // Validates base_delta as a side effect.
  build_shadow(family, adversary, base_delta);
  report.witness_available = true;
  report.witness = base_delta;

  bool all_ok = true;
  for (const Rat& r : ladder) {
    RatVector scaled(base_delta.size());
    for (std::size_t c = 0; c < base_delta.size(); ++c) scaled[c] = r * base_delta[c];
    ShadowInstance shadow = build_shadow(family, adversary, scaled);
    ShadowCheck check = verify_shadow(family, shadow, traj);
    UncertaintyRung rung;
    rung.r = r;
    rung.verified = check.ok;
    all_ok = all_ok && check.ok;
    Rat worst = 0;
    for (unsigned j = 1; j <= family.agent_count(); ++j) {
      if (j == adversary) continue;
      Rat dist_sq = 0;
      std::size_t base = family.agent_base(j);
      for (unsigned c = 0; c < family.dims[j - 1]; ++c) {
        Rat d = (r - 1) * base_delta[base + c];
        dist_sq += d * d;
      }
      worst = std::max(worst, dist_sq);
    }
    rung.max_dist_sq = worst;
    report.rungs.push_back(std::move(rung));
  }
  report.unbounded = all_ok;

  std::ostringstream text;
  text << "shadow-instance scaling ladder for adversary " << adversary << "\n";
  for (const auto& rung : report.rungs) {
    text << "  r = " << rational_str(rung.r) << ": "
         << (rung.verified ? "verified" : "FAILED")
         << ", max ||r*delta - delta||^2 = " << rational_str(rung.max_dist_sq) << "\n";
  }
  text << (report.unbounded
               ? "every rung satisfies the observation constraints; the feasible "
                 "perturbation set is unbounded along this ray\n"
               : "ladder verification failed\n");
  report.text = text.str();
  return report;
}

AttackResult linear_attack(const QuadraticFamily& family, unsigned adversary,
                           const std::vector<RatVector>& own_observations) {
  family.validate();
  if (adversary == 0 || adversary > family.agent_count()) {
    throw Error(ErrorCode::malformed_observations, "no such adversary");
  }
  if (!family.is_affine()) {
    throw Error(ErrorCode::malformed_observations,
                "reconstruction model requires an affine system");
  }
  for (const auto& s : family.feasible) {
    if (s.kind != ScalarSet::Kind::all_reals) {
      throw Error(ErrorCode::malformed_observations,
                  "reconstruction model requires unconstrained states");
    }
  }
  std::size_t n = family.total_dim();
  std::size_t abase = family.agent_base(adversary);
  unsigned adim = family.dims[adversary - 1];
  if (own_observations.empty()) {
    throw Error(ErrorCode::malformed_observations, "no observations supplied");
  }
  for (const auto& obs : own_observations) {
    if (obs.size() != adim) {
      throw Error(ErrorCode::malformed_observations, "observation has wrong width");
    }
  }

  AttackResult result;
  for (std::size_t c = 0; c < n; ++c) {
    if (c < abase || c >= abase + adim) result.unknown_coords.push_back(c);
  }
  std::size_t unknowns = result.unknown_coords.size();

  // Affine representation of each coordinate in the unknowns: coeffs + const.
  struct Expr {
    RatVector coeffs;
    Rat constant;
  };
  std::vector<Expr> x(n, Expr{RatVector(unknowns, Rat(0)), Rat(0)});
  for (std::size_t u = 0; u < unknowns; ++u) x[result.unknown_coords[u]].coeffs[u] = 1;
  for (unsigned c = 0; c < adim; ++c) x[abase + c].constant = own_observations[0][c];

  RatMatrix equations(0, unknowns);
  RatVector rhs;
  for (std::size_t k = 0; k + 1 < own_observations.size(); ++k) {
    // x(k+1) = x(k) - gamma (A_full x(k) + B), propagated symbolically.
    std::vector<Expr> next(n, Expr{RatVector(unknowns, Rat(0)), Rat(0)});
    for (std::size_t c = 0; c < n; ++c) {
      Expr phi{RatVector(unknowns, Rat(0)), family.components[c].B};
      for (std::size_t s = 0; s < n; ++s) {
        const Rat& w = family.components[c].A[s];
        if (w == 0) continue;
        for (std::size_t u = 0; u < unknowns; ++u) phi.coeffs[u] += w * x[s].coeffs[u];
        phi.constant += w * x[s].constant;
      }
      for (std::size_t u = 0; u < unknowns; ++u) {
        next[c].coeffs[u] = x[c].coeffs[u] - family.gamma * phi.coeffs[u];
      }
      next[c].constant = x[c].constant - family.gamma * phi.constant;
    }
    // Own coordinates are observed: emit the consistency equations and pin
    // them to the observed numbers before the next propagation.
    for (unsigned c = 0; c < adim; ++c) {
      Expr& e = next[abase + c];
      equations.append_row(e.coeffs);
      rhs.push_back(own_observations[k + 1][c] - e.constant);
      e.coeffs.assign(unknowns, Rat(0));
      e.constant = own_observations[k + 1][c];
    }
    x = std::move(next);
  }

  if (equations.rows() == 0) {
    result.kind = SolveKind::underdetermined;
    result.detail = "no equations could be formed from the observations";
    return result;
  }
  LinearSolveResult solved = solve_linear_system(equations, rhs);
  result.kind = solved.kind;
  switch (solved.kind) {
    case SolveKind::unique:
      result.recovered = solved.solution;
      result.detail = "benign states uniquely determined";
      break;
    case SolveKind::underdetermined:
      result.degenerate_basis = solved.null_basis;
      result.detail = "observation equations degenerate; benign states not identifiable";
      break;
    case SolveKind::inconsistent:
      result.detail = "observations inconsistent with the declared dynamics";
      break;
  }
  return result;
}

std::string analyze_to_json(const QuadraticFamily& family, unsigned adversary,
                            std::size_t steps) {
  family.validate();
  if (adversary == 0 || adversary > family.agent_count()) {
    throw Error(ErrorCode::invalid_argument, "no such adversary");
  }
  if (steps == 0) steps = family.total_dim() + 2;
  json report;
  report["adversary"] = adversary;

  auto stacked = stack_for_adversary(family, adversary);
  report["stacked_rows"] = stacked.matrix.rows();
  report["stacked_cols"] = stacked.matrix.cols();
  auto witness_reduced = find_all_nonzero_null_vector(stacked);
  if (witness_reduced) {
    RatVector full(family.total_dim(), Rat(0));
    for (std::size_t c = 0; c < stacked.col_to_global.size(); ++c) {
      full[stacked.col_to_global[c]] = (*witness_reduced)[c];
    }
    json w = json::array();
    for (const auto& v : full) w.push_back(rational_str(v));
    report["assumption_status"] = "witness_found";
    report["witness"] = w;
    report["verdict"] = "guaranteed resistant: unbounded uncertainty witnessed";
    if (!family.x0.empty()) {
      std::vector<Rat> ladder = {Rat(1), Rat(10), Rat(1000), Rat(1000000)};
      auto unc = uncertainty_report(family, adversary, full, steps, ladder);
      json rungs = json::array();
      for (const auto& rung : unc.rungs) {
        rungs.push_back({{"r", rational_str(rung.r)},
                         {"verified", rung.verified},
                         {"max_dist_sq", rational_str(rung.max_dist_sq)}});
      }
      report["ladder"] = rungs;
      report["unbounded"] = unc.unbounded;
    }
  } else {
    report["assumption_status"] = "no_witness";
    report["verdict"] = "no guarantee from this test";
  }

  bool attackable = family.is_affine() && !family.x0.empty();
  if (attackable) {
    for (const auto& s : family.feasible) {
      if (s.kind != ScalarSet::Kind::all_reals) attackable = false;
    }
  }
  if (attackable) {
    auto traj = simulate(family, steps);
    std::vector<RatVector> own;
    std::size_t base = family.agent_base(adversary);
    unsigned dim = family.dims[adversary - 1];
    for (const auto& x : traj) {
      own.push_back(RatVector(x.begin() + base, x.begin() + base + dim));
    }
    auto attack = linear_attack(family, adversary, own);
    json a;
    switch (attack.kind) {
      case SolveKind::unique: {
        a["kind"] = "unique";
        json rec = json::object();
        for (std::size_t u = 0; u < attack.unknown_coords.size(); ++u) {
          rec[std::to_string(attack.unknown_coords[u] + 1)] =
              rational_str(attack.recovered[u]);
        }
        a["recovered"] = rec;
        break;
      }
      case SolveKind::underdetermined:
        a["kind"] = "underdetermined";
        a["degenerate_dimensions"] = attack.degenerate_basis.cols();
        break;
      case SolveKind::inconsistent:
        a["kind"] = "inconsistent";
        break;
    }
    a["detail"] = attack.detail;
    a["observations_used"] = steps + 1;
    report["reconstruction_attack"] = a;
  }
  return report.dump(2);
}

std::string QuadraticFamily::to_json() const {
  json j;
  j["schema"] = "hegrad-family/1";
  j["dims"] = dims;
  j["gamma"] = rational_str(gamma);
  json sets = json::array();
  for (const auto& s : feasible) {
    json e;
    switch (s.kind) {
      case ScalarSet::Kind::all_reals: e["kind"] = "all"; break;
      case ScalarSet::Kind::non_negative: e["kind"] = "orthant"; break;
      case ScalarSet::Kind::box:
        e["kind"] = "box";
        e["lo"] = rational_str(s.lo);
        e["hi"] = rational_str(s.hi);
        break;
    }
    sets.push_back(e);
  }
  j["feasible"] = sets;
  if (!x0.empty()) {
    json x = json::array();
    for (const auto& v : x0) x.push_back(rational_str(v));
    j["x0"] = x;
  }
  json comps = json::array();
  for (const auto& c : components) {
    json e;
    e["agent"] = c.agent;
    e["coord"] = c.coord;
    json H = json::array();
    for (std::size_t r = 0; r < c.H.rows(); ++r) {
      json row = json::array();
      for (std::size_t s = 0; s < c.H.cols(); ++s) row.push_back(rational_str(c.H.at(r, s)));
      H.push_back(row);
    }
    e["H"] = H;
    json A = json::array();
    for (const auto& v : c.A) A.push_back(rational_str(v));
    e["A"] = A;
    e["B"] = rational_str(c.B);
    e["B_known_to"] = c.b_known_to;
    comps.push_back(e);
  }
  j["components"] = comps;
  return j.dump(2);
}

QuadraticFamily QuadraticFamily::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  try {
    QuadraticFamily f;
    for (const auto& d : j.at("dims")) f.dims.push_back(d.get<unsigned>());
    std::size_t n = f.total_dim();
    if (j.contains("gamma")) f.gamma = parse_rational(j.at("gamma").get<std::string>());
    if (j.contains("feasible")) {
      for (const auto& e : j.at("feasible")) {
        ScalarSet s;
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "all") s.kind = ScalarSet::Kind::all_reals;
        else if (kind == "orthant") s.kind = ScalarSet::Kind::non_negative;
        else if (kind == "box") {
          s.kind = ScalarSet::Kind::box;
          s.lo = parse_rational(e.at("lo").get<std::string>());
          s.hi = parse_rational(e.at("hi").get<std::string>());
        } else {
          throw Error(ErrorCode::parse_error, "unknown scalar set kind: " + kind);
        }
        f.feasible.push_back(s);
      }
    } else {
      f.feasible.assign(n, ScalarSet{});
    }
    if (j.contains("x0")) {
      for (const auto& v : j.at("x0")) f.x0.push_back(parse_rational(v.get<std::string>()));
    }
    for (const auto& e : j.at("components")) {
      Component c;
      c.agent = e.at("agent").get<unsigned>();
      c.coord = e.at("coord").get<unsigned>();
      c.H = RatMatrix(n, n);
      if (e.contains("H")) {
        const auto& H = e.at("H");
        for (std::size_t r = 0; r < H.size(); ++r) {
          for (std::size_t s = 0; s < H[r].size(); ++s) {
            c.H.at(r, s) = parse_rational(H[r][s].get<std::string>());
          }
        }
      }
      for (const auto& v : e.at("A")) c.A.push_back(parse_rational(v.get<std::string>()));
      if (e.contains("B")) c.B = parse_rational(e.at("B").get<std::string>());
      if (e.contains("B_known_to")) {
        for (const auto& who : e.at("B_known_to")) c.b_known_to.insert(who.get<unsigned>());
      }
      f.components.push_back(std::move(c));
    }
    f.validate();
    return f;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

}  // namespace ioi
}  // namespace hegrad
