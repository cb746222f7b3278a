#pragma once

// Random small IR graphs with planted twins, dead nodes and repeated phase
// names, for oracle comparisons.

#include <random>
#include <vector>

#include "builder.hpp"

namespace irmetro::testing {

struct RandomGraphParams {
  std::size_t max_nodes = 50;
  std::size_t max_execs = 6;
  double edge_probability = 0.08;
  double opt_probability = 0.3;
  double twin_probability = 0.25;
  double dead_probability = 0.05;
  bool mixed_ir_ids = true;
};

inline IRGraph random_ir_graph(std::mt19937_64& rng, const RandomGraphParams& params = {}) {
  static const char* kNames[] = {"GraphBuilder", "Typer", "TypedLowering", "EarlyOptimization"};
  static const char* kOps[] = {"Parameter", "NumberAdd", "LoadField"};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };

  GraphBuilder b;
  const std::size_t n_execs = 1 + pick(params.max_execs);
  b.phase(kNames[0], 0);
  for (std::uint32_t e = 1; e < n_execs; ++e) b.phase(kNames[1 + pick(3)], e);

  const std::size_t target = 1 + pick(params.max_nodes);
  std::vector<NodeId> ids;
  std::vector<std::vector<std::uint32_t>> opts;
  std::vector<std::uint32_t> gen_exec;

  while (ids.size() < target) {
    const bool twin = !ids.empty() && chance(params.twin_probability);
    if (twin) {
      const std::size_t src = pick(ids.size());
      const IRNode copy = b.node(ids[src]);
      const NodeId id = b.gen(gen_exec[src], copy.opcode.name, copy.opcode.code);
      b.node(id).ir_id = copy.ir_id;
      b.node(id).status = copy.status;
      for (std::uint32_t e : opts[src]) b.opt(e, id);
      for (NodeId nb : copy.neighbors) {
        if (nb != ids[src]) b.edge(id, nb);
      }
      if (chance(0.5)) b.edge(id, ids[src]);
      ids.push_back(id);
      opts.push_back(opts[src]);
      gen_exec.push_back(gen_exec[src]);
      continue;
    }
    const auto exec = static_cast<std::uint32_t>(pick(n_execs));
    const std::size_t op = pick(3);
    const NodeId id = b.gen(exec, kOps[op], static_cast<std::uint32_t>(op));
    if (params.mixed_ir_ids) b.node(id).ir_id = static_cast<IrId>(pick(2));
    if (chance(0.15)) b.node(id).status.replaced = true;
    std::vector<std::uint32_t> mine;
    for (std::uint32_t e = exec + 1; e < n_execs; ++e) {
      if (chance(params.opt_probability)) {
        b.opt(e, id);
        mine.push_back(e);
      }
    }
    if (!chance(params.dead_probability)) {
      for (NodeId other : ids) {
        if (chance(params.edge_probability)) b.edge(id, other);
      }
      if (chance(0.05)) b.edge(id, id);
    }
    ids.push_back(id);
    opts.push_back(std::move(mine));
    gen_exec.push_back(exec);
  }
  return b.build();
}

}  // namespace irmetro::testing
