#pragma once

#include <iosfwd>
#include <string>

#include "lobound/appendix.hpp"
#include "lobound/box.hpp"
#include "lobound/graph.hpp"
#include "lobound/lo.hpp"
#include "lobound/ml.hpp"
#include "lobound/optimizer.hpp"
#include "lobound/quantum.hpp"

namespace lobound {

// JSON renderings: two-space indent, insertion-ordered keys, LF endings —
// rerunning with the same config yields byte-identical artifacts. Volatile
// wall-clock timing is therefore omitted unless include_timing is set.

std::string json_box(const NSBox& box);
NSBox box_from_json_text(const std::string& text);

std::string json_table(const ProbabilityTable& table);
std::string json_ml_report(const MLReport& report);
std::string json_opt_result(const OptResult& result, bool include_timing = false);
std::string json_quantum_result(const QuantumOptResult& result,
                                bool include_timing = false);
std::string json_appendix_report(const AppendixReport& report);
std::string json_graph(const OrthoGraph& g);
std::string json_inequality(const LOInequality& ineq);
std::string json_constraints(const ConstraintMatrix& m);

// Clique lists can run to millions of entries; stream instead of building
// one document in memory. `cliques` must already be in canonical order.
void write_cliques_json(std::ostream& os, const OrthoGraph& g,
                        const CliqueList& cliques);

}  // namespace lobound
