#include "irmetro/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "irmetro/error.hpp"
#include "json.hpp"

namespace irmetro {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Distribution helpers are written out by hand: the std:: distributions are
// implementation-defined and the corpus must be byte-identical per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  std::uint32_t between(std::uint32_t lo, std::uint32_t hi) {
    return lo + static_cast<std::uint32_t>(below(std::uint64_t{hi} - lo + 1));
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t kBaseStream = 0x5EED'BA5E'0000'0001ull;

const std::vector<std::string>& builder_opcodes() {
  static const std::vector<std::string> ops = {
      "Start",         "Parameter",    "HeapConstant", "NumberConstant", "Int32Constant",
      "JSCall",        "JSAdd",        "JSSubtract",   "JSLoadProperty", "JSStoreProperty",
      "Checkpoint",    "FrameState",   "StateValues",  "Phi",            "Branch",
      "Merge",         "Return"};
  return ops;
}

const std::vector<std::string>& lowered_opcodes() {
  static const std::vector<std::string> ops = {
      "SpeculativeNumberAdd", "SpeculativeNumberSubtract", "NumberAdd",      "NumberSubtract",
      "Int32Add",             "Int32Sub",                  "Float64Add",     "Float64Sub",
      "LoadField",            "StoreField",                "LoadElement",    "StoreElement",
      "CheckMaps",            "CheckSmi",                  "CheckBounds",    "TypeGuard",
      "ChangeInt32ToTagged",  "ChangeTaggedToFloat64",     "Word32And",      "Word32Shl",
      "LoadImmutable",        "Allocate",                  "BeginRegion",    "FinishRegion",
      "EffectPhi",            "Call",                      "Projection",     "Unreachable"};
  return ops;
}

Opcode opcode_at(std::uint32_t index) {
  const auto& b = builder_opcodes();
  if (index < b.size()) return {b[index], index};
  return {lowered_opcodes()[index - b.size()], index};
}

std::uint32_t lowered_index(std::size_t i) {
  return static_cast<std::uint32_t>(builder_opcodes().size() + i);
}

struct PlanNode {
  std::uint32_t opcode = 0;
  std::uint32_t exec = 0;
  std::set<std::uint32_t> neighbors;
  std::set<std::uint32_t> opt_execs;
  StatusFlags status;
  bool dead = false;
};

// One program's IR before ids and addresses are assigned. Node indices are
// stable across the original and variants; perturbations only append.
struct Plan {
  std::vector<std::string> schedule;
  std::vector<std::vector<std::uint32_t>> palettes;
  std::vector<PlanNode> nodes;
  std::vector<std::vector<std::uint32_t>> generated;

  std::uint32_t add_node(PlanNode n) {
    const auto idx = static_cast<std::uint32_t>(nodes.size());
    generated[n.exec].push_back(idx);
    nodes.push_back(std::move(n));
    return idx;
  }

  void connect(std::uint32_t a, std::uint32_t b) {
    nodes[a].neighbors.insert(b);
    nodes[b].neighbors.insert(a);
  }

  // (exec, opcode) -> live nodes, the unit phases optimize together.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> cohorts() const {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> out;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].dead) out[{nodes[i].exec, nodes[i].opcode}].push_back(i);
    }
    return out;
  }
};

void set_flag(StatusFlags& s, std::uint64_t which) {
  switch (which % 4) {
    case 0: s.replaced = true; break;
    case 1: s.killed = true; break;
    case 2: s.removed = true; break;
    default: s.appended = true; break;
  }
}

std::vector<std::string> choose_schedule(const GenConfig& cfg, Rng& rng) {
  const auto& names = cfg.phase_names;
  const std::uint32_t execs = rng.between(cfg.phase_executions.lo, cfg.phase_executions.hi);
  std::uint32_t active = rng.between(cfg.active_phases.lo, cfg.active_phases.hi);
  active = std::clamp<std::uint32_t>(active, 1, std::min<std::uint32_t>(
                                                    execs, static_cast<std::uint32_t>(names.size())));

  // names[0] is the graph builder; it runs once, first.
  std::vector<std::string> chosen;
  auto take = [&](const std::string& n) {
    if (n != names[0] && chosen.size() + 1 < active &&
        std::find(chosen.begin(), chosen.end(), n) == chosen.end()) {
      chosen.push_back(n);
    }
  };
  if (cfg.bug) take(cfg.bug->phase);
  for (std::size_t i = 1; i < std::min<std::size_t>(5, names.size()); ++i) take(names[i]);
  std::vector<std::string> rest(names.begin() + 1, names.end());
  rng.shuffle(rest);
  for (const auto& n : rest) take(n);

  std::vector<std::string> slots = chosen;
  while (slots.size() < execs - 1) {
    slots.push_back(chosen.empty() ? names[0] : chosen[rng.below(chosen.size())]);
  }
  rng.shuffle(slots);
  slots.insert(slots.begin(), names[0]);
  return slots;
}

Plan build_base(const GenConfig& cfg) {
  Rng rng(cfg.seed ^ kBaseStream);
  Plan plan;
  plan.schedule = choose_schedule(cfg, rng);
  const auto execs = static_cast<std::uint32_t>(plan.schedule.size());
  plan.generated.resize(execs);

  std::map<std::string, std::vector<std::uint32_t>> palette_by_name;
  for (std::uint32_t k = 0; k < execs; ++k) {
    const std::string& name = plan.schedule[k];
    auto [it, fresh] = palette_by_name.try_emplace(name);
    if (fresh) {
      if (name == cfg.phase_names[0]) {
        for (std::uint32_t i = 0; i < builder_opcodes().size(); ++i) it->second.push_back(i);
      } else {
        std::vector<std::uint32_t> pool;
        for (std::size_t i = 0; i < lowered_opcodes().size(); ++i) pool.push_back(lowered_index(i));
        rng.shuffle(pool);
        it->second.assign(pool.begin(), pool.begin() + 3);
      }
    }
    plan.palettes.push_back(it->second);
  }

  const std::uint32_t total = rng.between(cfg.nodes_per_graph.lo, cfg.nodes_per_graph.hi);
  const auto dead = static_cast<std::uint32_t>(std::lround(total * cfg.dead_fraction));
  const auto twins = static_cast<std::uint32_t>(std::lround(total * cfg.twin_fraction));
  const std::uint32_t regular = std::max<std::uint32_t>(1, total - std::min(total, dead + twins));

  std::vector<std::uint32_t> per_exec(execs, 0);
  const std::uint32_t builder_share =
      execs == 1 ? regular : std::max<std::uint32_t>(1, regular * 2 / 5);
  per_exec[0] = builder_share;
  std::uint32_t left = regular - builder_share;
  for (std::uint32_t k = 1; k < execs && left > 0; ++k, --left) per_exec[k] = 1;
  while (left > 0) {
    ++per_exec[1 + rng.below(execs - 1)];
    --left;
  }

  std::vector<std::uint32_t> live;
  for (std::uint32_t k = 0; k < execs; ++k) {
    for (std::uint32_t i = 0; i < per_exec[k]; ++i) {
      PlanNode n;
      n.exec = k;
      const auto& pal = plan.palettes[k];
      // Builder output starts with the Start node; Start never repeats.
      n.opcode = (k == 0 && i == 0) ? 0 : pal[k == 0 ? 1 + rng.below(pal.size() - 1)
                                                     : rng.below(pal.size())];
      const std::uint32_t idx = plan.add_node(std::move(n));
      if (!live.empty()) {
        plan.connect(idx, live[rng.below(live.size())]);
        if (rng.chance(0.5)) plan.connect(idx, live[rng.below(live.size())]);
      }
      live.push_back(idx);
    }
  }

  const auto cohorts = plan.cohorts();
  for (std::uint32_t k = 1; k < execs; ++k) {
    for (const auto& [key, members] : cohorts) {
      if (key.first >= k || !rng.chance(cfg.opt_probability)) continue;
      const bool flag = rng.chance(0.25);
      const auto which = rng.next();
      for (std::uint32_t m : members) {
        plan.nodes[m].opt_execs.insert(k);
        if (flag) set_flag(plan.nodes[m].status, which);
      }
    }
  }

  // The injected phase must have optimization work for the original to skip.
  if (cfg.bug && cfg.bug->mode == BugMode::missing_optimization) {
    std::vector<std::uint32_t> bug_execs;
    for (std::uint32_t k = 1; k < execs; ++k) {
      if (plan.schedule[k] == cfg.bug->phase) bug_execs.push_back(k);
    }
    auto touched = [&] {
      std::set<std::pair<std::uint32_t, std::uint32_t>> t;
      for (const auto& [key, members] : cohorts) {
        for (std::uint32_t k : bug_execs) {
          if (plan.nodes[members.front()].opt_execs.contains(k)) t.insert(key);
        }
      }
      return t.size();
    };
    if (!bug_execs.empty()) {
      const std::uint32_t k = bug_execs.front();
      std::vector<std::pair<std::uint32_t, std::uint32_t>> eligible;
      for (const auto& [key, members] : cohorts) {
        if (key.first < k && !plan.nodes[members.front()].opt_execs.contains(k)) {
          eligible.push_back(key);
        }
      }
      rng.shuffle(eligible);
      for (const auto& key : eligible) {
        if (touched() >= 2) break;
        for (std::uint32_t m : cohorts.at(key)) plan.nodes[m].opt_execs.insert(k);
      }
    }
  }

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 1; i < plan.nodes.size(); ++i) candidates.push_back(i);
  rng.shuffle(candidates);
  for (std::uint32_t t = 0; t < twins && t < candidates.size(); ++t) {
    PlanNode twin = plan.nodes[candidates[t]];
    const auto neighbors = twin.neighbors;
    twin.neighbors.clear();
    const std::uint32_t idx = plan.add_node(std::move(twin));
    for (std::uint32_t nb : neighbors) plan.connect(idx, nb);
  }

  for (std::uint32_t d = 0; d < dead; ++d) {
    PlanNode n;
    n.exec = static_cast<std::uint32_t>(rng.below(execs));
    const auto& pal = plan.palettes[n.exec];
    n.opcode = n.exec == 0 ? pal[1 + rng.below(pal.size() - 1)] : pal[rng.below(pal.size())];
    n.dead = true;
    plan.add_node(std::move(n));
  }
  return plan;
}

std::vector<std::uint32_t> live_generated_up_to(const Plan& plan, std::uint32_t exec) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k <= exec; ++k) {
    for (std::uint32_t i : plan.generated[k]) {
      if (!plan.nodes[i].dead) out.push_back(i);
    }
  }
  return out;
}

void add_extra_nodes(Plan& plan, std::uint32_t exec, std::uint32_t count, Rng& rng) {
  for (std::uint32_t c = 0; c < count; ++c) {
    const auto anchors = live_generated_up_to(plan, exec);
    PlanNode n;
    n.exec = exec;
    const auto& pal = plan.palettes[exec];
    n.opcode = exec == 0 ? pal[1 + rng.below(pal.size() - 1)] : pal[rng.below(pal.size())];
    const std::uint32_t idx = plan.add_node(std::move(n));
    if (!anchors.empty()) plan.connect(idx, anchors[rng.below(anchors.size())]);
  }
}

void mutate_variant(Plan& plan, double rate, Rng& rng) {
  const auto execs = static_cast<std::uint32_t>(plan.schedule.size());
  for (std::uint32_t k = 1; k < execs; ++k) {
    if (!rng.chance(rate)) continue;
    switch (rng.below(3)) {
      case 0:
        add_extra_nodes(plan, k, 1 + static_cast<std::uint32_t>(rng.below(2)), rng);
        break;
      case 1: {
        std::vector<std::uint32_t> pool;
        for (std::uint32_t i = 0; i < plan.nodes.size(); ++i) {
          const auto& n = plan.nodes[i];
          if (!n.dead && n.exec < k && !n.opt_execs.contains(k)) pool.push_back(i);
        }
        if (pool.empty()) break;
        const auto& seed_node = plan.nodes[pool[rng.below(pool.size())]];
        std::vector<std::uint32_t> cohort;
        for (std::uint32_t i : pool) {
          if (plan.nodes[i].exec == seed_node.exec && plan.nodes[i].opcode == seed_node.opcode) {
            cohort.push_back(i);
          }
        }
        rng.shuffle(cohort);
        const std::size_t take = std::min<std::size_t>(cohort.size(), 1 + rng.below(3));
        for (std::size_t i = 0; i < take; ++i) plan.nodes[cohort[i]].opt_execs.insert(k);
        break;
      }
      default: {
        std::vector<std::uint32_t> pool;
        for (std::uint32_t i = 0; i < plan.nodes.size(); ++i) {
          if (plan.nodes[i].opt_execs.contains(k)) pool.push_back(i);
        }
        rng.shuffle(pool);
        const std::size_t take = std::min<std::size_t>(pool.size(), 1 + rng.below(3));
        for (std::size_t i = 0; i < take; ++i) plan.nodes[pool[i]].opt_execs.erase(k);
        break;
      }
    }
  }
}

IRGraph materialize(const Plan& plan, IrId ir_id, GraphLabel label, std::optional<bool> buggy,
                    Rng& rng) {
  IRGraph g;
  g.ir_id = ir_id;
  g.label = label;
  g.buggy = buggy;

  std::vector<NodeId> id_of(plan.nodes.size());
  NodeId next = 0;
  for (const auto& list : plan.generated) {
    for (std::uint32_t idx : list) id_of[idx] = next++;
  }
  for (std::uint32_t idx = 0; idx < plan.nodes.size(); ++idx) {
    const PlanNode& p = plan.nodes[idx];
    IRNode n;
    n.id = id_of[idx];
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%012llx",
                  static_cast<unsigned long long>(rng.next() & 0xFFFFFFFFFFFFull));
    n.address = buf;
    n.opcode = opcode_at(p.opcode);
    n.ir_id = ir_id;
    n.status = p.status;
    for (std::uint32_t nb : p.neighbors) n.neighbors.insert(id_of[nb]);
    g.nodes.emplace(n.id, std::move(n));
  }
  for (std::uint32_t k = 0; k < plan.schedule.size(); ++k) {
    PhaseExecution pe;
    pe.phase = {plan.schedule[k], k};
    pe.hyperedge_id = std::to_string(k);
    for (std::uint32_t idx : plan.generated[k]) pe.generated.push_back(id_of[idx]);
    std::vector<NodeId> opt;
    for (std::uint32_t idx = 0; idx < plan.nodes.size(); ++idx) {
      if (plan.nodes[idx].opt_execs.contains(k)) opt.push_back(id_of[idx]);
    }
    std::sort(opt.begin(), opt.end());
    pe.optimized = std::move(opt);
    g.phases.push_back(std::move(pe));
  }
  derive_node_phases(g);
  assign_gen_ordinals(g);
  return g;
}

CountRange range_from_json(const json& v, const char* field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_unsigned() || !v[1].is_number_unsigned()) {
    throw Error(ErrorKind::config, std::string(field) + ": expected [lo, hi] of non-negative integers");
  }
  return {v[0].get<std::uint32_t>(), v[1].get<std::uint32_t>()};
}

double prob_from_json(const json& v, const char* field) {
  if (!v.is_number()) throw Error(ErrorKind::config, std::string(field) + ": expected number");
  return v.get<double>();
}

}  // namespace

std::string_view to_string(BugMode mode) {
  return mode == BugMode::missing_optimization ? "missing-optimization" : "extra-node";
}

BugMode parse_bug_mode(std::string_view text) {
  if (text == "missing-optimization") return BugMode::missing_optimization;
  if (text == "extra-node") return BugMode::extra_node;
  throw Error(ErrorKind::config, "unknown bug mode '" + std::string(text) +
                                     "' (expected missing-optimization or extra-node)");
}

BugSpec parse_bug_spec(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorKind::config, "bug must look like PHASE:MODE, got '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, colon)), parse_bug_mode(text.substr(colon + 1))};
}

std::vector<std::string> default_phase_names() {
  std::vector<std::string> names = {"GraphBuilder", "Typer", "TypedLowering", "SimplifiedLowering",
                                    "EarlyOptimization"};
  static const char* generic[] = {
      "Inlining",           "LoopPeeling",         "LoadElimination",   "Escape",
      "GenericLowering",    "EffectLinearization", "StoreStoreElim",    "ControlFlowOpt",
      "MemoryOptimization", "LateOptimization",    "MachineOperatorOpt", "DeadCodeElim",
      "BranchElimination",  "ValueNumbering",      "CommonOperatorRed", "TypeNarrowing",
      "ConstantFolding",    "CheckpointElim",      "CsaOptimization",   "LoopExitElim",
      "JSContextSpecial",   "JSCallReducer",       "JSCreateLowering",  "JSIntrinsicLowering",
      "NativeContextSpec",  "RedundancyElim",      "TypeHintLowering",  "WasmInlining",
      "SelectLowering",     "Int64Lowering"};
  names.insert(names.end(), std::begin(generic), std::end(generic));
  return names;
}

void validate_config(const GenConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::config, what); };
  auto check_prob = [&](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " must be in [0, 1]");
  };
  auto check_range = [&](const CountRange& r, std::uint32_t min_lo, const char* name) {
    if (r.lo < min_lo || r.lo > r.hi) {
      fail(std::string(name) + " must satisfy " + std::to_string(min_lo) + " <= lo <= hi");
    }
  };
  if (cfg.phase_names.empty()) fail("phase_names must not be empty");
  if (std::set<std::string>(cfg.phase_names.begin(), cfg.phase_names.end()).size() !=
      cfg.phase_names.size()) {
    fail("phase_names must be distinct");
  }
  check_range(cfg.phase_executions, 1, "phase_executions");
  check_range(cfg.active_phases, 1, "active_phases");
  check_range(cfg.nodes_per_graph, 2, "nodes_per_graph");
  check_prob(cfg.opt_probability, "opt_probability");
  check_prob(cfg.variant_mutation_rate, "variant_mutation_rate");
  check_prob(cfg.dead_fraction, "dead_fraction");
  check_prob(cfg.twin_fraction, "twin_fraction");
  if (cfg.dead_fraction + cfg.twin_fraction > 0.5) fail("dead_fraction + twin_fraction must be <= 0.5");
  if (cfg.bug) {
    if (std::find(cfg.phase_names.begin(), cfg.phase_names.end(), cfg.bug->phase) ==
        cfg.phase_names.end()) {
      fail("bug phase '" + cfg.bug->phase + "' is not in phase_names");
    }
    if (cfg.bug->phase == cfg.phase_names.front()) fail("bug phase cannot be the graph builder");
  }
}

GenConfig gen_config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::config, "config must be a JSON object");
  GenConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned()) throw Error(ErrorKind::config, "seed: expected non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "n_variants") {
      if (!v.is_number_unsigned()) throw Error(ErrorKind::config, "n_variants: expected non-negative integer");
      cfg.n_variants = v.get<std::uint32_t>();
    } else if (key == "phase_names") {
      if (!v.is_array()) throw Error(ErrorKind::config, "phase_names: expected array");
      cfg.phase_names.clear();
      for (const auto& n : v) {
        if (!n.is_string()) throw Error(ErrorKind::config, "phase_names: expected strings");
        cfg.phase_names.push_back(n.get<std::string>());
      }
    } else if (key == "phase_executions") {
      cfg.phase_executions = range_from_json(v, "phase_executions");
    } else if (key == "active_phases") {
      cfg.active_phases = range_from_json(v, "active_phases");
    } else if (key == "nodes_per_graph") {
      cfg.nodes_per_graph = range_from_json(v, "nodes_per_graph");
    } else if (key == "opt_probability") {
      cfg.opt_probability = prob_from_json(v, "opt_probability");
    } else if (key == "variant_mutation_rate") {
      cfg.variant_mutation_rate = prob_from_json(v, "variant_mutation_rate");
    } else if (key == "dead_fraction") {
      cfg.dead_fraction = prob_from_json(v, "dead_fraction");
    } else if (key == "twin_fraction") {
      cfg.twin_fraction = prob_from_json(v, "twin_fraction");
    } else if (key == "bug") {
      if (v.is_null()) {
        cfg.bug.reset();
      } else if (v.is_string()) {
        cfg.bug = parse_bug_spec(v.get<std::string>());
      } else if (v.is_object() && v.contains("phase") && v.contains("mode") &&
                 v["phase"].is_string() && v["mode"].is_string()) {
        cfg.bug = BugSpec{v["phase"].get<std::string>(), parse_bug_mode(v["mode"].get<std::string>())};
      } else {
        throw Error(ErrorKind::config, "bug: expected null, \"PHASE:MODE\" or {phase, mode}");
      }
    } else {
      throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    }
  }
  return cfg;
}

std::string gen_config_to_json(const GenConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["seed"] = cfg.seed;
  doc["n_variants"] = cfg.n_variants;
  doc["phase_names"] = cfg.phase_names;
  doc["phase_executions"] = {cfg.phase_executions.lo, cfg.phase_executions.hi};
  doc["active_phases"] = {cfg.active_phases.lo, cfg.active_phases.hi};
  doc["nodes_per_graph"] = {cfg.nodes_per_graph.lo, cfg.nodes_per_graph.hi};
  doc["opt_probability"] = cfg.opt_probability;
  doc["variant_mutation_rate"] = cfg.variant_mutation_rate;
  doc["dead_fraction"] = cfg.dead_fraction;
  doc["twin_fraction"] = cfg.twin_fraction;
  if (cfg.bug) {
    doc["bug"] = {{"phase", cfg.bug->phase}, {"mode", std::string(to_string(cfg.bug->mode))}};
  } else {
    doc["bug"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string ground_truth_to_json(const GroundTruth& truth) {
  nlohmann::ordered_json doc;
  doc["bug_phase"] = truth.bug_phase ? json(*truth.bug_phase) : json(nullptr);
  doc["mode"] = truth.mode ? json(std::string(to_string(*truth.mode))) : json(nullptr);
  return doc.dump(2) + "\n";
}

GroundTruth ground_truth_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("truth file: ") + e.what());
  }
  GroundTruth t;
  if (doc.contains("bug_phase") && doc["bug_phase"].is_string()) {
    t.bug_phase = doc["bug_phase"].get<std::string>();
  }
  if (doc.contains("mode") && doc["mode"].is_string()) {
    t.mode = parse_bug_mode(doc["mode"].get<std::string>());
  }
  return t;
}

GeneratedCorpus generate_corpus(const GenConfig& cfg) {
  validate_config(cfg);
  const Plan base = build_base(cfg);

  GeneratedCorpus out;
  if (cfg.bug) {
    out.truth.bug_phase = cfg.bug->phase;
    out.truth.mode = cfg.bug->mode;
  }

  {
    Rng rng(cfg.seed ^ kOriginalIrId);
    Plan plan = base;
    if (cfg.bug) {
      for (std::uint32_t k = 1; k < plan.schedule.size(); ++k) {
        if (plan.schedule[k] != cfg.bug->phase) continue;
        if (cfg.bug->mode == BugMode::missing_optimization) {
          for (auto& n : plan.nodes) n.opt_execs.erase(k);
        } else {
          add_extra_nodes(plan, k, 2 + static_cast<std::uint32_t>(rng.below(3)), rng);
        }
      }
    }
    out.original = materialize(plan, kOriginalIrId, GraphLabel::original, cfg.bug.has_value(), rng);
  }

  out.variants.reserve(cfg.n_variants);
  for (std::uint32_t v = 1; v <= cfg.n_variants; ++v) {
    Rng rng(cfg.seed ^ v);
    Plan plan = base;
    mutate_variant(plan, cfg.variant_mutation_rate, rng);
    out.variants.push_back(materialize(plan, v, GraphLabel::variant, false, rng));
  }
  return out;
}

fs::path write_corpus(const GeneratedCorpus& corpus, const fs::path& dir) {
  fs::create_directories(dir);
  auto name_for = [](IrId id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "ir_%03u.json", static_cast<unsigned>(id));
    return std::string(buf);
  };
  CorpusManifest manifest;
  manifest.original = name_for(corpus.original.ir_id);
  write_dump(dir / manifest.original, corpus.original);
  for (const auto& v : corpus.variants) {
    manifest.variants.push_back(name_for(v.ir_id));
    write_dump(dir / manifest.variants.back(), v);
  }
  const fs::path manifest_path = dir / "manifest.json";
  write_manifest(manifest_path, manifest);
  write_text_file(dir / "truth.json", ground_truth_to_json(corpus.truth));
  return manifest_path;
}

}  // namespace irmetro
