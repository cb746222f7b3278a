#include <random>

#include "doctest.h"
#include "irmetro/error.hpp"
#include "irmetro/hypergraph.hpp"
#include "irmetro/localize.hpp"
#include "irmetro/simplify.hpp"
#include "random_graph.hpp"

using namespace irmetro;

namespace {

struct HB {
  Hypergraph h;

  NodeId node(IrId ir, const std::string& gen, std::uint32_t count = 1) {
    const NodeId id = h.nodes.size();
    IRNode n;
    n.id = id;
    n.ir_id = ir;
    n.opcode = {"Op" + std::to_string(id), 0};
    n.gen_phase = {gen, 0};
    n.merged_count = count;
    h.nodes.emplace(id, n);
    return id;
  }

  void line(const std::string& name, std::set<NodeId> members) {
    Hyperedge e;
    e.id = std::to_string(h.hyperedges.size());
    e.name = name;
    e.exec_orders = {static_cast<std::uint32_t>(h.hyperedges.size())};
    e.members = std::move(members);
    h.hyperedges.push_back(std::move(e));
  }
};

const std::vector<std::string> kDefault = default_excluded_phases();

}  // namespace

TEST_SUITE("localize") {
  TEST_CASE("score is foreign density with merged_count weights") {
    HB b;
    std::set<NodeId> early;
    early.insert(b.node(0, "GraphBuilder"));
    early.insert(b.node(0, "GraphBuilder"));
    for (IrId i = 1; i <= 9; ++i) early.insert(b.node(i, "GraphBuilder"));
    b.line("GraphBuilder", early);
    b.line("EarlyOptimization", early);
    const auto r = score_hyperedges(b.h, kDefault);
    const SuspicionRow* row = r.find("EarlyOptimization");
    REQUIRE(row != nullptr);
    CHECK(row->total_members == 11);
    CHECK(row->foreign_members == 9);
    CHECK(row->score == doctest::Approx(9.0 / 11.0));
    CHECK(row->rank == std::optional<std::size_t>(1));
    CHECK(r.find("GraphBuilder")->excluded);
    CHECK(!r.find("GraphBuilder")->rank);
    CHECK(r.excluded == std::vector<std::string>{"GraphBuilder"});
    CHECK(r.ranking == std::vector<std::string>{"EarlyOptimization"});
  }

  TEST_CASE("thirteen of sixteen") {
    HB b;
    const NodeId native = b.node(0, "GraphBuilder", 3);
    const NodeId foreign = b.node(2, "GraphBuilder", 13);
    b.line("SimplifiedLowering", {native, foreign});
    const auto r = score_hyperedges(b.h, kDefault);
    CHECK(r.rows[0].score == 0.8125);
  }

  TEST_CASE("generation anomaly needs a foreign node generated on the line and no native one") {
    HB b;
    const NodeId n1 = b.node(0, "GraphBuilder");
    const NodeId n2 = b.node(0, "GraphBuilder");
    const NodeId n3 = b.node(0, "GraphBuilder");
    const NodeId z = b.node(1, "Typer");
    b.line("Typer", {n1, n2, n3, z});
    auto r = score_hyperedges(b.h, kDefault);
    CHECK(r.rows[0].generation_anomaly);
    CHECK(r.rows[0].score == 0.25);

    const NodeId native_gen = b.node(0, "Typer");
    b.h.hyperedges[0].members.insert(native_gen);
    r = score_hyperedges(b.h, kDefault);
    CHECK(!r.rows[0].generation_anomaly);
  }

  TEST_CASE("ties break on foreign count then name") {
    HB b;
    const NodeId f1 = b.node(1, "X");
    const NodeId o1 = b.node(0, "X");
    const NodeId f2 = b.node(1, "X", 2);
    const NodeId o2 = b.node(0, "X", 2);
    b.line("Zeta", {f1, o1});
    b.line("Beta", {f2, o2});
    b.line("Alpha", {f1, o1});
    const auto r = score_hyperedges(b.h, {});
    CHECK(r.ranking == std::vector<std::string>{"Beta", "Alpha", "Zeta"});
  }

  TEST_CASE("scores are scale-consistent") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
      const IRGraph g = merge_equivalent_nodes(remove_dead_nodes(testing::random_ir_graph(rng)));
      if (g.nodes.empty()) continue;
      Hypergraph h = simplify_hyperedges(reduce_hyperedges(construct_hypergraph(g)));
      const auto before = score_hyperedges(h, kDefault);
      for (auto& [id, n] : h.nodes) n.merged_count *= 3;
      const auto after = score_hyperedges(h, kDefault);
      REQUIRE(before.rows.size() == after.rows.size());
      for (std::size_t k = 0; k < before.rows.size(); ++k) {
        CHECK(before.rows[k].score == after.rows[k].score);
      }
      CHECK(before.ranking == after.ranking);
    }
  }

  TEST_CASE("original-only hypergraph scores zero everywhere") {
    std::mt19937_64 rng(2);
    testing::RandomGraphParams p;
    p.mixed_ir_ids = false;
    const IRGraph g = remove_dead_nodes(testing::random_ir_graph(rng, p));
    REQUIRE(!g.nodes.empty());
    const auto r = score_hyperedges(construct_hypergraph(g), kDefault);
    for (const auto& row : r.rows) CHECK(row.score == 0.0);
  }

  TEST_CASE("empty hypergraph is an error") {
    HB b;
    try {
      score_hyperedges(b.h, kDefault);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::empty_hypergraph);
      CHECK(std::string(e.code()) == "empty-hypergraph");
    }
  }

  TEST_CASE("singletons get a dummy and disjoint lines are isolated") {
    HB b;
    const NodeId a = b.node(0, "A");
    const NodeId c = b.node(0, "A");
    const NodeId d = b.node(0, "A");
    const NodeId lone = b.node(0, "A");
    b.line("A", {a, c});
    b.line("B", {c, d});
    b.line("C", {d});
    b.line("D", {lone});
    const MetroPrep m = prepare_for_metromap(b.h);
    REQUIRE(m.main.hyperedges.size() == 3);
    REQUIRE(m.isolated.size() == 1);
    CHECK(m.isolated[0].name == "D");
    CHECK(m.isolated[0].members.size() == 2);
    CHECK(m.isolated_nodes.size() == 2);
    const Hyperedge& c_line = m.main.hyperedges[2];
    CHECK(c_line.members.size() == 2);
    for (NodeId id : c_line.members) {
      if (id != d) CHECK(m.main.nodes.at(id).is_dummy);
    }
    CHECK(m.warnings.empty());
  }

  TEST_CASE("dummy count equals singleton count and real membership is unchanged") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
      const IRGraph g = merge_equivalent_nodes(remove_dead_nodes(testing::random_ir_graph(rng)));
      const Hypergraph h = simplify_hyperedges(reduce_hyperedges(construct_hypergraph(g)));
      std::size_t singletons = 0;
      for (const auto& e : h.hyperedges) singletons += e.members.size() == 1;
      const MetroPrep m = prepare_for_metromap(h);
      std::size_t dummies = 0;
      std::map<std::string, std::set<NodeId>> real;
      auto collect = [&](const Hyperedge& e, const std::map<NodeId, IRNode>& nodes) {
        for (NodeId id : e.members) {
          if (nodes.at(id).is_dummy) {
            ++dummies;
          } else {
            real[e.id].insert(id);
          }
        }
      };
      for (const auto& e : m.main.hyperedges) collect(e, m.main.nodes);
      for (const auto& e : m.isolated) collect(e, m.isolated_nodes);
      CHECK(dummies == singletons);
      std::map<std::string, std::set<NodeId>> before;
      for (const auto& e : h.hyperedges) before[e.id] = e.members;
      CHECK(real == before);
    }
  }

  TEST_CASE("budget warnings fire strictly above the limits") {
    auto build = [](std::size_t nodes, std::size_t lines) {
      HB b;
      std::vector<NodeId> ids;
      for (std::size_t i = 0; i < nodes; ++i) ids.push_back(b.node(0, "GraphBuilder"));
      // Line k holds a slice plus node 0 so every line intersects another.
      for (std::size_t k = 0; k < lines; ++k) {
        std::set<NodeId> m{ids[0]};
        for (std::size_t i = 1 + k; i < nodes; i += lines) m.insert(ids[i]);
        b.line("L" + std::to_string(k), m);
      }
      return prepare_for_metromap(b.h).warnings;
    };
    CHECK(build(500, 30).empty());
    CHECK(build(501, 30) == std::vector<std::string>{"node-budget-exceeded: 501 nodes > 500"});
    CHECK(build(500, 31) == std::vector<std::string>{"line-budget-exceeded: 31 hyperedges > 30"});
    CHECK(build(501, 31).size() == 2);
  }
}
