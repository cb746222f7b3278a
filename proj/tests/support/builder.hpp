#pragma once

// Small helper for assembling IR graphs by hand in tests.

#include <cstdio>
#include <stdexcept>
#include <string>

#include "irmetro/ir.hpp"

namespace irmetro::testing {

class GraphBuilder {
 public:
  explicit GraphBuilder(IrId ir_id = kOriginalIrId) {
    g_.ir_id = ir_id;
    g_.label = ir_id == kOriginalIrId ? GraphLabel::original : GraphLabel::variant;
  }

  GraphBuilder& phase(const std::string& name, std::uint32_t exec_order) {
    g_.phases.push_back({{name, exec_order}, {}, {}, {}});
    return *this;
  }

  NodeId gen(std::uint32_t exec_order, const std::string& opcode, std::uint32_t code = 0) {
    const NodeId id = g_.next_node_id();
    return gen_with_id(id, exec_order, opcode, code);
  }

  NodeId gen_with_id(NodeId id, std::uint32_t exec_order, const std::string& opcode,
                     std::uint32_t code = 0) {
    IRNode n;
    n.id = id;
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%012llx", 0x100000ULL + static_cast<unsigned long long>(id) * 0x40);
    n.address = buf;
    n.opcode = {opcode, code};
    n.ir_id = g_.ir_id;
    g_.nodes.emplace(id, std::move(n));
    exec(exec_order).generated.push_back(id);
    return id;
  }

  GraphBuilder& opt(std::uint32_t exec_order, NodeId id) {
    exec(exec_order).optimized.push_back(id);
    return *this;
  }

  GraphBuilder& edge(NodeId a, NodeId b) {
    g_.add_edge(a, b);
    return *this;
  }

  IRNode& node(NodeId id) { return g_.nodes.at(id); }

  IRGraph build() const {
    IRGraph out = g_;
    derive_node_phases(out);
    assign_gen_ordinals(out);
    return out;
  }

 private:
  PhaseExecution& exec(std::uint32_t exec_order) {
    for (auto& p : g_.phases) {
      if (p.phase.exec_order == exec_order) return p;
    }
    throw std::out_of_range("no phase execution " + std::to_string(exec_order));
  }

  IRGraph g_;
};

}  // namespace irmetro::testing
