#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "tropharm/collar.hpp"
#include "tropharm/convergence.hpp"
#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/morphism.hpp"
#include "tropharm/phase.hpp"
#include "tropharm/scene.hpp"

namespace tropharm::io {

using Json = nlohmann::json;

/// Throws ParseError (unreadable file or malformed JSON).
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

/// {"vertices", "edges": [{id, ends, length}], "leaves": [{id, vertex}], "ribbon"?}.
/// Structural problems throw ParseError; graph invariants throw as in validate.
MetricGraph graph_from_json(const Json& doc);
Json to_json(const MetricGraph& graph);

/// {"rows": m, "leaf_order": [...], "entries": [[...]]}; columns are permuted
/// into the graph's leaf order. leaf_order may be omitted (graph order).
ResidueMatrix residues_from_json(const Json& doc, const MetricGraph& graph);
Json to_json(const ResidueMatrix& residues, const MetricGraph& graph);

/// {"graph": <path or inline>, "values": {edge id: value, leaf id: residue}}.
/// Missing ids get 0. A relative graph path resolves against `base_dir`.
OneForm one_form_from_json(const Json& doc, const std::filesystem::path& base_dir = {});
/// Values only; the graph is inlined.
Json to_json(const OneForm& form);

/// {edge id: angle}.
TwistAssignment twists_from_json(const Json& doc, const MetricGraph& graph);
Json to_json(const TwistAssignment& twists);

Json to_json(const Scene& scene);
/// Dimensions 1 to 3 (3D via a cabinet projection); throws
/// UnsupportedDimensionForSvg otherwise.
std::string to_svg(const Scene& scene);

Json to_json(const RegularityReport& report);
Json to_json(const TwistSolution& solution);
Json to_json(const IntegralityCheck& check);
Json to_json(const LimitPeriodMatrix& matrix, double integer_tol = 1e-9);
Json to_json(const CollarRow& row);
Json to_json(const CollarLimitReport& report);
Json to_json(const AnnulusPeriodReport& report);
Json to_json(const ConvergenceReport& report);

Json matrix_to_json(const Eigen::MatrixXd& m);
Json vector_to_json(const Eigen::VectorXd& v);

/// Key-sorted, two-space indented, one trailing newline.
std::string dump(const Json& doc);

}  // namespace tropharm::io
