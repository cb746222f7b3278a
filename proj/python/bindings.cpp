#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "irmetro/diffmerge.hpp"
#include "irmetro/error.hpp"
#include "irmetro/hypergraph.hpp"
#include "irmetro/ingest.hpp"
#include "irmetro/localize.hpp"
#include "irmetro/pipeline.hpp"
#include "irmetro/simplify.hpp"
#include "irmetro/synthgen.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace irmetro;

namespace {

py::dict row_to_dict(const SuspicionRow& r) {
  py::dict d;
  d["name"] = r.name;
  d["hyperedge_id"] = r.hyperedge_id;
  d["total_members"] = r.total_members;
  d["foreign_members"] = r.foreign_members;
  d["score"] = r.score;
  d["generation_anomaly"] = r.generation_anomaly;
  d["excluded"] = r.excluded;
  d["rank"] = r.rank ? py::cast(*r.rank) : py::none();
  return d;
}

AnalyzeOptions make_options(std::optional<std::vector<std::string>> exclude, bool single_pass,
                            std::size_t top_k) {
  AnalyzeOptions opts;
  if (exclude) opts.exclude = *exclude;
  opts.single_pass = single_pass;
  opts.top_k = top_k;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "IR merging, simplification and metro-map export";

  static py::exception<Error> py_error(m, "IrMetroError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(e.code()));
      PyErr_SetObject(py_error.ptr(), py::make_tuple(py::str(e.what()), code).ptr());
    }
  });

  py::class_<IRGraph>(m, "IRGraph")
      .def_readonly("ir_id", &IRGraph::ir_id)
      .def_property_readonly("label",
                             [](const IRGraph& g) {
                               return g.label == GraphLabel::original ? "original" : "variant";
                             })
      .def_readonly("buggy", &IRGraph::buggy)
      .def_property_readonly("node_count", [](const IRGraph& g) { return g.nodes.size(); })
      .def_property_readonly("phase_count", [](const IRGraph& g) { return g.phases.size(); })
      .def_property_readonly("phases",
                             [](const IRGraph& g) {
                               std::vector<std::pair<std::string, std::uint32_t>> out;
                               for (const auto& p : g.phases) out.emplace_back(p.phase.name, p.phase.exec_order);
                               return out;
                             })
      .def("node_ids",
           [](const IRGraph& g) {
             std::vector<NodeId> ids;
             for (const auto& [id, n] : g.nodes) ids.push_back(id);
             return ids;
           })
      .def("node_keys",
           [](const IRGraph& g) {
             std::vector<std::tuple<std::string, std::uint32_t, std::string>> keys;
             for (const auto& [id, n] : g.nodes) {
               if (n.is_dummy) continue;
               const auto k = node_key(n);
               keys.emplace_back(k.phase, k.ordinal, k.opcode);
             }
             return keys;
           })
      .def("validate",
           [](const IRGraph& g) {
             std::vector<std::string> out;
             for (const auto& v : validate_graph(g)) out.push_back(to_string(v));
             return out;
           })
      .def("to_dump", &serialize_dump)
      .def("__eq__", [](const IRGraph& a, const IRGraph& b) { return a == b; })
      .def("__repr__", [](const IRGraph& g) {
        return "<IRGraph ir_id=" + std::to_string(g.ir_id) + " nodes=" + std::to_string(g.nodes.size()) +
               " phases=" + std::to_string(g.phases.size()) + ">";
      });

  py::class_<SubIR>(m, "SubIR")
      .def_readonly("source_ir_id", &SubIR::source_ir_id)
      .def_property_readonly("phases", [](const SubIR& s) {
        std::vector<std::pair<std::string, std::uint32_t>> out;
        for (const auto& c : s.candidate_phases) out.emplace_back(c.phase.name, c.phase.exec_order);
        return out;
      });

  py::class_<Hypergraph>(m, "Hypergraph")
      .def_property_readonly("node_count", [](const Hypergraph& h) { return h.nodes.size(); })
      .def_property_readonly("hyperedges", [](const Hypergraph& h) {
        py::list out;
        for (const auto& e : h.hyperedges) {
          py::dict d;
          d["id"] = e.id;
          d["name"] = e.name;
          d["members"] = std::vector<NodeId>(e.members.begin(), e.members.end());
          out.append(d);
        }
        return out;
      });

  m.def("parse_dump", [](const std::string& text) { return parse_dump(text); }, py::arg("text"));
  m.def("read_dump", &read_dump, py::arg("path"));
  m.def(
      "load_corpus",
      [](const std::filesystem::path& manifest) {
        Corpus c = load_corpus(manifest);
        return py::make_tuple(std::move(c.original), std::move(c.variants));
      },
      py::arg("manifest"));

  m.def("select_candidates", &select_candidates, py::arg("original"), py::arg("variant"));
  m.def(
      "merge_into_original",
      [](const IRGraph& original, const std::vector<SubIR>& subirs) {
        return merge_into_original(original, subirs);
      },
      py::arg("original"), py::arg("subirs"));
  m.def("remove_dead_nodes", &remove_dead_nodes, py::arg("graph"));
  m.def(
      "merge_equivalent_nodes",
      [](const IRGraph& g, bool single_pass) { return merge_equivalent_nodes(g, {single_pass}); },
      py::arg("graph"), py::arg("single_pass") = false);
  m.def("construct_hypergraph", &construct_hypergraph, py::arg("graph"));
  m.def("reduce_hyperedges", &reduce_hyperedges, py::arg("hypergraph"));
  m.def("simplify_hyperedges", &simplify_hyperedges, py::arg("hypergraph"));
  m.def(
      "score_hyperedges",
      [](const Hypergraph& h, std::optional<std::vector<std::string>> exclude) {
        const auto ex = exclude ? *exclude : default_excluded_phases();
        const auto report = score_hyperedges(h, ex);
        py::list rows;
        for (const auto& r : report.rows) rows.append(row_to_dict(r));
        py::dict d;
        d["rows"] = rows;
        d["ranking"] = report.ranking;
        d["excluded"] = report.excluded;
        return d;
      },
      py::arg("hypergraph"), py::arg("exclude") = py::none());

  m.def(
      "generate_corpus",
      [](std::uint64_t seed, std::uint32_t n_variants, std::optional<std::string> bug,
         std::optional<std::string> config_json, std::optional<std::filesystem::path> out_dir) {
        GenConfig cfg = config_json ? gen_config_from_json(*config_json) : GenConfig{};
        cfg.seed = seed;
        cfg.n_variants = n_variants;
        if (bug) cfg.bug = parse_bug_spec(*bug);
        GeneratedCorpus c = generate_corpus(cfg);
        py::object manifest = py::none();
        if (out_dir) manifest = py::cast(write_corpus(c, *out_dir));
        py::dict truth;
        truth["bug_phase"] = c.truth.bug_phase ? py::cast(*c.truth.bug_phase) : py::none();
        truth["mode"] = c.truth.mode ? py::cast(std::string(to_string(*c.truth.mode))) : py::none();
        return py::make_tuple(std::move(c.original), std::move(c.variants), truth, manifest);
      },
      py::arg("seed") = 0, py::arg("n_variants") = 20, py::arg("bug") = py::none(),
      py::arg("config_json") = py::none(), py::arg("out_dir") = py::none());

  m.def(
      "analyze_json",
      [](const std::filesystem::path& manifest, std::optional<std::vector<std::string>> exclude,
         bool single_pass, std::size_t top_k) {
        const auto opts = make_options(std::move(exclude), single_pass, top_k);
        const Corpus c = load_corpus(manifest);
        return export_json(run_pipeline(c, opts), opts);
      },
      py::arg("manifest"), py::arg("exclude") = py::none(), py::arg("single_pass") = false,
      py::arg("top_k") = 3);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
